#include "spets/reflgroup.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <queue>
#include <sstream>

#include "json.hpp"
#include "spets/errors.hpp"
#include "spets/molien.hpp"

namespace spets {

namespace {

using ojson = nlohmann::ordered_json;

ojson entry_to_json(const CatalogEntry& e) {
  ojson j;
  j["name"] = e.name;
  j["rank"] = e.rank;
  j["cyclo_order"] = e.cyclo_order;
  ojson gens = ojson::array();
  for (const CMat& m : e.generators) {
    ojson rows = ojson::array();
    for (long i = 0; i < m.rows; ++i) {
      ojson row = ojson::array();
      for (long jj = 0; jj < m.cols; ++jj) {
        ojson coeffs = ojson::array();
        CycloNum c = m.at(i, jj).promoted(e.cyclo_order);
        for (const auto& q : c.coeffs()) coeffs.push_back(q.get_str());
        row.push_back(coeffs);
      }
      rows.push_back(row);
    }
    gens.push_back(rows);
  }
  j["generators"] = gens;
  j["flags"] = e.flags;
  return j;
}

CatalogEntry entry_from_json(const ojson& j) {
  CatalogEntry e;
  e.name = j.at("name").get<std::string>();
  e.rank = j.at("rank").get<long>();
  e.cyclo_order = j.at("cyclo_order").get<long>();
  long d = phi(e.cyclo_order);
  for (const auto& mj : j.at("generators")) {
    if (static_cast<long>(mj.size()) != e.rank)
      throw DataValidation("catalog " + e.name + ": generator row count");
    CMat m(e.rank, e.rank);
    for (long i = 0; i < e.rank; ++i) {
      const auto& row = mj.at(static_cast<size_t>(i));
      if (static_cast<long>(row.size()) != e.rank)
        throw DataValidation("catalog " + e.name + ": generator column count");
      for (long jj = 0; jj < e.rank; ++jj) {
        const auto& cj = row.at(static_cast<size_t>(jj));
        if (static_cast<long>(cj.size()) != d)
          throw DataValidation("catalog " + e.name + ": coefficient length");
        std::vector<mpq_class> qs;
        for (const auto& s : cj) {
          mpq_class q(s.get<std::string>());
          q.canonicalize();
          qs.push_back(q);
        }
        m.at(i, jj) = CycloNum::from_coeffs(e.cyclo_order, std::move(qs));
      }
    }
    e.generators.push_back(std::move(m));
  }
  if (j.contains("flags"))
    for (const auto& f : j.at("flags")) e.flags.push_back(f.get<std::string>());
  return e;
}

// projective = points are lines, images renormalized before lookup
struct PointFamily {
  bool projective = false;
  std::vector<std::vector<CycloNum>> pts;
  std::map<std::string, long> idx;

  std::vector<CycloNum> canon(std::vector<CycloNum> v) const {
    if (!projective) return v;
    for (const auto& c : v)
      if (!c.is_zero()) {
        CycloNum inv = c.inverse();
        for (auto& d : v) d = d * inv;
        break;
      }
    return v;
  }
  void add(std::vector<CycloNum> v) {
    v = canon(std::move(v));
    std::string k = vec_key(v);
    if (idx.count(k)) return;
    idx[k] = static_cast<long>(pts.size());
    pts.push_back(std::move(v));
  }
  int image(const CMat& m, long j) const {
    std::vector<CycloNum> v = canon(cmat_vec(m, pts[static_cast<size_t>(j)]));
    return static_cast<int>(idx.at(vec_key(v)));
  }
};

std::vector<std::vector<int>> action_perms(const std::vector<CMat>& mats,
                                           const std::vector<PointFamily>& fams) {
  std::vector<std::vector<int>> perms;
  perms.reserve(mats.size());
  for (const CMat& m : mats) {
    std::vector<int> p;
    int base = 0;
    for (const PointFamily& f : fams) {
      for (long j = 0; j < static_cast<long>(f.pts.size()); ++j)
        p.push_back(base + f.image(m, j));
      base += static_cast<int>(f.pts.size());
    }
    perms.push_back(std::move(p));
  }
  return perms;
}

bool perms_faithful(const std::vector<std::vector<int>>& perms,
                    std::map<std::vector<int>, long>& by_perm) {
  by_perm.clear();
  for (long i = 0; i < static_cast<long>(perms.size()); ++i)
    if (!by_perm.emplace(perms[static_cast<size_t>(i)], i).second) return false;
  return true;
}

}  // namespace

std::string default_data_dir() {
  if (const char* e = std::getenv("SPETS_DATA_DIR"); e && *e) return e;
#ifdef SPETS_DATA_ROOT
  return SPETS_DATA_ROOT;
#else
  return "data";
#endif
}

std::vector<CatalogEntry> load_catalog(const std::string& dir) {
  std::string d = dir.empty() ? default_data_dir() : dir;
  std::string path = d + "/catalog.json";
  std::ifstream in(path);
  if (!in) throw DataValidation("cannot open " + path);
  ojson root = ojson::parse(in, nullptr, true);
  std::vector<CatalogEntry> out;
  for (const auto& j : root.at("groups")) out.push_back(entry_from_json(j));
  return out;
}

CatalogEntry load_group_entry(const std::string& name, const std::string& dir) {
  for (auto& e : load_catalog(dir))
    if (e.name == name) return e;
  throw DataValidation("no catalog entry named " + name);
}

std::string catalog_to_json(const std::vector<CatalogEntry>& entries) {
  ojson root;
  root["groups"] = ojson::array();
  for (const auto& e : entries) root["groups"].push_back(entry_to_json(e));
  return root.dump(2) + "\n";
}

ReflectionGroup ReflectionGroup::build(const CatalogEntry& entry) {
  if (entry.rank < 1 || entry.generators.empty())
    throw DataValidation("catalog entry " + entry.name + " is empty");
  ReflectionGroup W;
  W.name_ = entry.name;
  W.rank_ = entry.rank;
  W.order_m_ = entry.cyclo_order;
  const long n = entry.rank;
  const CMat id = cmat_identity(n);
  const bool want_refl =
      std::find(entry.flags.begin(), entry.flags.end(),
                "reflection_generators") != entry.flags.end();

  for (const CMat& g : entry.generators) {
    if (g.rows != n || g.cols != n)
      throw DataValidation("generator shape in " + entry.name);
    CMat p = g;
    long ord = 1;
    while (p != id) {
      p = cmat_mul(p, g);
      if (++ord > 1000) throw NotFinite("generator of infinite order in " + entry.name);
    }
    if (want_refl && cmat_rank(cmat_sub(g, id)) != 1)
      throw NotReflectionGroup("generator of " + entry.name + " is not a reflection");
  }

  W.mats_.push_back(id);
  W.index_[cmat_key(id)] = 0;
  std::queue<long> todo;
  todo.push(0);
  while (!todo.empty()) {
    long cur = todo.front();
    todo.pop();
    for (const CMat& g : entry.generators) {
      CMat m = cmat_mul(W.mats_[static_cast<size_t>(cur)], g);
      std::string k = cmat_key(m);
      if (W.index_.count(k)) continue;
      long at = static_cast<long>(W.mats_.size());
      if (at >= kGroupOrderCap)
        throw OrderCapExceeded("closure of " + entry.name + " exceeds cap");
      W.index_[k] = at;
      W.mats_.push_back(std::move(m));
      todo.push(at);
    }
  }
  const long size = static_cast<long>(W.mats_.size());

  for (const CMat& g : entry.generators)
    W.gen_idx_.push_back(W.index_.at(cmat_key(g)));

  for (long i = 0; i < size; ++i)
    if (cmat_rank(cmat_sub(W.mats_[static_cast<size_t>(i)], id)) == 1)
      W.reflections_.push_back(i);

  // permutation action on reflection root lines; the line set is closed
  // under the group since reflections are closed under conjugation
  std::vector<PointFamily> fams(1);
  fams[0].projective = true;
  for (long r : W.reflections_) {
    CMat d = cmat_sub(W.mats_[static_cast<size_t>(r)], id);
    for (long j = 0; j < n; ++j) {
      std::vector<CycloNum> col;
      bool nz = false;
      for (long i = 0; i < n; ++i) {
        col.push_back(d.at(i, j));
        if (!d.at(i, j).is_zero()) nz = true;
      }
      if (nz) {
        fams[0].add(std::move(col));
        break;
      }
    }
  }

  std::vector<std::vector<int>> perms = action_perms(W.mats_, fams);
  std::map<std::vector<int>, long> by_perm;
  if (!perms_faithful(perms, by_perm)) {
    // small groups can act trivially on their lines; separate elements by
    // the orbit of a generic integer vector instead
    for (long seed : {17L, 31L, 101L}) {
      PointFamily orbit;
      std::vector<CycloNum> v;
      mpq_class t = 1;
      for (long i = 0; i < n; ++i, t *= seed) v.push_back(CycloNum(t));
      for (long i = 0; i < size; ++i)
        orbit.add(cmat_vec(W.mats_[static_cast<size_t>(i)], v));
      std::vector<PointFamily> ext = fams;
      ext.push_back(std::move(orbit));
      perms = action_perms(W.mats_, ext);
      if (perms_faithful(perms, by_perm)) break;
    }
    if (by_perm.size() != static_cast<size_t>(size))
      throw SplitFailure("no faithful point action for " + entry.name);
  }

  std::vector<uint16_t> table(static_cast<size_t>(size) * static_cast<size_t>(size));
  const long npts = static_cast<long>(perms[0].size());
  std::vector<int> comp(static_cast<size_t>(npts));
  for (long a = 0; a < size; ++a)
    for (long b = 0; b < size; ++b) {
      const auto& pa = perms[static_cast<size_t>(a)];
      const auto& pb = perms[static_cast<size_t>(b)];
      for (long j = 0; j < npts; ++j)
        comp[static_cast<size_t>(j)] = pa[static_cast<size_t>(pb[static_cast<size_t>(j)])];
      table[static_cast<size_t>(a * size + b)] = static_cast<uint16_t>(by_perm.at(comp));
    }
  W.grp_ = std::make_shared<FiniteGroup>(FiniteGroup::from_table(size, std::move(table)));

  // invariant degrees from the Molien series, smallest factors first
  std::vector<LaurentX> cdets;
  std::vector<CycloNum> csizes;
  for (long c = 0; c < W.grp_->class_count(); ++c) {
    cdets.push_back(char_det(W.mats_[static_cast<size_t>(W.grp_->class_rep(c))]));
    csizes.push_back(CycloNum(W.grp_->class_size(c)));
  }
  for (long K = 16;; K *= 2) {
    if (K > 1024) throw SplitFailure("invariant degrees of " + entry.name);
    auto S = molien_series(cdets, csizes, size, K);
    auto deg = peel_degrees(S, n);
    if (deg.empty()) continue;
    long prod = 1, sum = 0;
    for (long dd : deg) {
      prod *= dd;
      sum += dd - 1;
    }
    if (prod != size || sum != W.reflection_count())
      throw SplitFailure("Molien factorization of " + entry.name + " inconsistent");
    W.degrees_ = deg;
    break;
  }

  W.chars_ = std::make_shared<CharTable>(CharTable::build(*W.grp_));

  // graded multiplicities in the coinvariant algebra
  const long N = W.reflection_count();
  const long K = N + 2;
  for (long r = 0; r < W.chars_->rows(); ++r) {
    std::vector<CycloNum> weights;
    for (long c = 0; c < W.grp_->class_count(); ++c)
      weights.push_back(csizes[static_cast<size_t>(c)] * W.chars_->row(r)[static_cast<size_t>(c)]);
    auto S = molien_series(cdets, weights, size, K);
    for (long dd : W.degrees_) series_clear_factor(S, dd);
    W.fake_.push_back(series_to_poly(S));
  }

  std::vector<CycloNum> dets = W.det_values_init();
  for (long r = 0; r < W.chars_->rows(); ++r)
    if (W.chars_->row(r) == dets) {
      W.det_row_ = r;
      break;
    }
  if (W.det_row_ < 0)
    throw SplitFailure("determinant character missing in " + entry.name);

  return W;
}

long ReflectionGroup::element_of(const CMat& m) const {
  auto it = index_.find(cmat_key(m));
  return it == index_.end() ? -1 : it->second;
}

LaurentX ReflectionGroup::poincare() const {
  LaurentX p = LaurentX::monomial(CycloNum(1), 0);
  for (long d : degrees_) {
    LaurentX f;
    for (long k = 0; k < d; ++k) f = f + LaurentX::monomial(CycloNum(1), k);
    p = p * f;
  }
  return p;
}

std::vector<CycloNum> ReflectionGroup::det_values() const {
  return det_values_init();
}

std::vector<CycloNum> ReflectionGroup::det_values_init() const {
  std::vector<CycloNum> out;
  for (long c = 0; c < grp_->class_count(); ++c)
    out.push_back(cmat_det(mats_[static_cast<size_t>(grp_->class_rep(c))]));
  return out;
}

std::vector<std::vector<CycloNum>> ReflectionGroup::fixed_space(
    const std::vector<long>& elems) const {
  if (elems.empty()) {
    std::vector<std::vector<CycloNum>> basis;
    for (long i = 0; i < rank_; ++i) {
      std::vector<CycloNum> e(static_cast<size_t>(rank_));
      e[static_cast<size_t>(i)] = CycloNum(1);
      basis.push_back(std::move(e));
    }
    return basis;
  }
  CMat stacked(static_cast<long>(elems.size()) * rank_, rank_);
  long r = 0;
  const CMat id = cmat_identity(rank_);
  for (long e : elems) {
    CMat d = cmat_sub(mats_[static_cast<size_t>(e)], id);
    for (long i = 0; i < rank_; ++i, ++r)
      for (long j = 0; j < rank_; ++j) stacked.at(r, j) = d.at(i, j);
  }
  return cmat_kernel(stacked);
}

std::vector<long> ReflectionGroup::pointwise_stabilizer(
    const std::vector<std::vector<CycloNum>>& basis) const {
  std::vector<long> out;
  for (long i = 0; i < size(); ++i) {
    bool fixes = true;
    for (const auto& v : basis) {
      if (cmat_vec(mats_[static_cast<size_t>(i)], v) != v) {
        fixes = false;
        break;
      }
    }
    if (fixes) out.push_back(i);
  }
  return out;
}

bool ReflectionGroup::is_parabolic(const std::vector<long>& subgroup) const {
  std::vector<long> sorted = subgroup;
  std::sort(sorted.begin(), sorted.end());
  return pointwise_stabilizer(fixed_space(sorted)) == sorted;
}

bool full_rank_mod_ell(const ReflectionGroup& w, ResidueEmbedding& emb) {
  const long ell = emb.ell();
  const long n = w.rank();
  std::vector<std::vector<long>> rows;
  const CMat id = cmat_identity(n);
  for (long e = 1; e < w.size(); ++e) {
    CMat d = cmat_sub(w.matrix(e), id);
    for (long i = 0; i < n; ++i) {
      std::vector<long> row(static_cast<size_t>(n));
      for (long j = 0; j < n; ++j)
        row[static_cast<size_t>(j)] =
            mpz_class(emb.reduce(d.at(i, j)) % ell).get_si();
      rows.push_back(std::move(row));
    }
  }
  // Gaussian elimination over F_ell
  long rank = 0;
  for (long col = 0; col < n && rank < static_cast<long>(rows.size()); ++col) {
    long piv = -1;
    for (long r = rank; r < static_cast<long>(rows.size()); ++r)
      if (rows[static_cast<size_t>(r)][static_cast<size_t>(col)] % ell != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[static_cast<size_t>(rank)], rows[static_cast<size_t>(piv)]);
    const auto& prow = rows[static_cast<size_t>(rank)];
    long pinv = 1;
    {
      long pv = ((prow[static_cast<size_t>(col)] % ell) + ell) % ell;
      for (long t = 1; t < ell; ++t)
        if (pv * t % ell == 1) {
          pinv = t;
          break;
        }
    }
    for (long r = rank + 1; r < static_cast<long>(rows.size()); ++r) {
      long f = ((rows[static_cast<size_t>(r)][static_cast<size_t>(col)] % ell) + ell) % ell;
      if (f == 0) continue;
      long scale = f * pinv % ell;
      for (long j = col; j < n; ++j)
        rows[static_cast<size_t>(r)][static_cast<size_t>(j)] =
            ((rows[static_cast<size_t>(r)][static_cast<size_t>(j)] -
              scale * prow[static_cast<size_t>(j)]) % ell + ell) % ell;
    }
    ++rank;
  }
  return rank == n;
}

}  // namespace spets
