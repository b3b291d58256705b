#include "spets/blocktable.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <memory>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "spets/errors.hpp"
#include "spets/parse.hpp"

namespace spets {

namespace {

std::string elems_key(const std::vector<long>& v) {
  std::string k;
  for (long e : v) {
    k += std::to_string(e);
    k.push_back(',');
  }
  return k;
}

// cached data for one parabolic subgroup: its character table, Schur
// degrees on the ambient space, prod (x^d - 1) over ambient degrees, and
// the parent-element lookup.  The full group reuses the group's own table
// so that rows stay aligned with the block labels.
struct Parabolic {
  Subgroup sub;
  std::unique_ptr<CharTable> owned;
  const CharTable* ct = nullptr;
  SchurSet ss;
  LaurentX prodfac;
  std::map<long, long> local;
};

struct Cache {
  const ReflectionGroup& w;
  std::string dir;
  std::map<std::string, std::unique_ptr<Parabolic>> data;

  const Parabolic& get(const std::vector<long>& elems) {
    std::string key = elems_key(elems);
    auto it = data.find(key);
    if (it != data.end()) return *it->second;
    auto p = std::make_unique<Parabolic>();
    if (static_cast<long>(elems.size()) == w.size()) {
      p->ct = &w.chars();
      p->ss = schur_elements(w, dir);
      p->prodfac = LaurentX(1);
      for (long d : w.degrees()) p->prodfac *= LaurentX::x(d) - LaurentX(1);
      for (long e = 0; e < w.size(); ++e) p->local[e] = e;
    } else {
      p->sub = make_subgroup(w.group(), elems);
      p->owned = std::make_unique<CharTable>(CharTable::build(p->sub.grp));
      p->ct = p->owned.get();
      p->ss = subgroup_schur(w, p->sub, *p->ct);
      p->prodfac = LaurentX(1);
      for (long d : subgroup_degrees(w, p->sub))
        p->prodfac *= LaurentX::x(d) - LaurentX(1);
      for (size_t i = 0; i < p->sub.to_parent.size(); ++i)
        p->local[p->sub.to_parent[i]] = static_cast<long>(i);
    }
    const Parabolic& ref = *p;
    data.emplace(std::move(key), std::move(p));
    return ref;
  }

  std::vector<long> all_elements() const {
    std::vector<long> v(static_cast<size_t>(w.size()));
    for (long e = 0; e < w.size(); ++e) v[static_cast<size_t>(e)] = e;
    return v;
  }
};

// <phi restricted to the subgroup, lambda>, through parent element ids
long mult_of(const Parabolic& pth, long phi, const Parabolic& p0t, long lam,
             const std::vector<long>& elems) {
  CycloNum s;
  for (long e : elems)
    s += pth.ct->value(phi, pth.local.at(e)) *
         p0t.ct->value(lam, p0t.local.at(e)).conj();
  CycloNum m = s / CycloNum(static_cast<long>(elems.size()));
  if (!m.is_rational())
    throw NotIntegral("restriction multiplicity is not rational");
  mpq_class q = m.rational_value();
  if (q.get_den() != 1 || q < 0)
    throw NotIntegral("restriction multiplicity is not a nonnegative integer");
  return static_cast<long>(q.get_num().get_si());
}

// gamma_{theta,phi}(t) by the double coset sum: for each W_t \ W / W(theta)
// representative w, theta(t^w) times the block character degrees of the
// sub-spets on the stabiliser of t^w, paired through restriction of phi
LaurentX value_core(const Torus& t, Cache& cache,
                    const std::vector<long>& theta,
                    const std::vector<long>& tstab, long phi,
                    const std::vector<long>& at) {
  const ReflectionGroup& w = t.group();
  const FiniteGroup& g = w.group();
  const Parabolic& pth = cache.get(tstab);
  std::vector<long> wt = t.stabilizer(at);
  if (static_cast<long>(wt.size()) == w.size()) {
    const Parabolic& pfull = cache.get(cache.all_elements());
    RatFun degree = RatFun(pfull.prodfac, pth.prodfac) *
                    pth.ss.degree[static_cast<size_t>(phi)];
    return degree.as_polynomial() * LaurentX(t.char_value(theta, at));
  }
  std::vector<char> seen(static_cast<size_t>(w.size()), 0);
  RatFun acc;
  for (long e = 0; e < w.size(); ++e) {
    if (seen[static_cast<size_t>(e)]) continue;
    for (long a : wt) {
      long ae = g.mult(a, e);
      for (long b : tstab) seen[static_cast<size_t>(g.mult(ae, b))] = 1;
    }
    std::vector<long> tw = t.act_point(e, at);
    CycloNum th = t.char_value(theta, tw);
    std::vector<long> w0 = t.stabilizer(tw);
    std::vector<long> w0t;
    std::set_intersection(w0.begin(), w0.end(), tstab.begin(), tstab.end(),
                          std::back_inserter(w0t));
    const Parabolic& p0 = cache.get(w0);
    const Parabolic& p0t = cache.get(w0t);
    RatFun inner;
    for (long lam = 0; lam < p0t.ct->rows(); ++lam) {
      long m = mult_of(pth, phi, p0t, lam, w0t);
      if (m)
        inner += RatFun(LaurentX(m)) * p0t.ss.degree[static_cast<size_t>(lam)];
    }
    acc += RatFun(LaurentX(th)) * RatFun(p0.prodfac, p0t.prodfac) * inner;
  }
  return acc.as_polynomial();
}

void check_config(const Torus& t) {
  if (t.ell() == 2) throw DataValidation("partial table needs an odd ell");
  if (t.level() < 1) throw DataValidation("partial table needs level >= 1");
  if (!t.coprime())
    throw DataValidation("partial table needs the coprime identification");
}

mpz_class integer_q(const Torus& t, const mpq_class& q) {
  if (q.get_den() != 1)
    throw DataValidation("evaluation point q must be an integer");
  mpz_class z = q.get_num();
  mpz_class m(t.modulus());
  if ((z - 1) % m != 0)
    throw DataValidation("q must be congruent to 1 modulo ell^a");
  return z;
}

}  // namespace

CycloNum bar_ell(const CycloNum& c, long ell) {
  long m = c.order();
  long p = 1, mm = m;
  while (mm % ell == 0) {
    p *= ell;
    mm /= ell;
  }
  if (p == 1) return c;
  long k = p - 1;
  while (k % mm != 1 % mm) k += p;
  return c.galois(k);
}

LaurentX bar_ell(const LaurentX& f, long ell) {
  LaurentX out;
  for (const auto& [e, c] : f.terms())
    out += LaurentX::monomial(bar_ell(c, ell), e, f.z());
  return out;
}

LaurentX block_value(const Torus& t, long theta_point, long phi_row,
                     const std::vector<long>& at,
                     const std::string& data_dir) {
  check_config(t);
  Cache cache{t.group(), data_dir, {}};
  long o = t.dual_orbit_of(theta_point);
  std::vector<long> theta = t.point(t.dual_orbit(o).points[0]);
  return value_core(t, cache, theta, t.dual_orbit(o).stab, phi_row, at);
}

RatFun dim_block_at(const Torus& t, const std::vector<long>& at,
                    const std::string& data_dir) {
  check_config(t);
  const ReflectionGroup& w = t.group();
  std::vector<long> w0 = t.stabilizer(at);
  if (static_cast<long>(w0.size()) == w.size()) return dim_block(t, data_dir);
  Cache cache{w, data_dir, {}};
  const Parabolic& p0 = cache.get(w0);
  long npts = t.point_count();
  std::vector<char> seen(static_cast<size_t>(npts), 0);
  RatFun acc;
  for (long d = 0; d < npts; ++d) {
    if (seen[static_cast<size_t>(d)]) continue;
    std::vector<long> frontier{d};
    seen[static_cast<size_t>(d)] = 1;
    while (!frontier.empty()) {
      long cur = frontier.back();
      frontier.pop_back();
      for (long e : w0) {
        long img = t.index_of(t.act_dual(e, t.point(cur)));
        if (!seen[static_cast<size_t>(img)]) {
          seen[static_cast<size_t>(img)] = 1;
          frontier.push_back(img);
        }
      }
    }
    std::vector<long> theta = t.point(d);
    std::vector<long> full = t.dual_stabilizer(theta);
    std::vector<long> w0t;
    std::set_intersection(w0.begin(), w0.end(), full.begin(), full.end(),
                          std::back_inserter(w0t));
    const Parabolic& p0t = cache.get(w0t);
    RatFun idx(p0.prodfac, p0t.prodfac);
    for (long lam = 0; lam < p0t.ct->rows(); ++lam) {
      RatFun dgr = idx * p0t.ss.degree[static_cast<size_t>(lam)];
      acc += dgr * dgr;
    }
  }
  return acc;
}

PartialTable PartialTable::build(const Torus& t, const std::string& data_dir) {
  check_config(t);
  PartialTable out(t, data_dir);
  BlockLabels bl = block_degrees(t, data_dir);
  out.labels_ = std::move(bl.labels);
  out.degrees_ = std::move(bl.degree);
  Cache cache{out.t_.group(), data_dir, {}};
  out.entries_.resize(out.labels_.size());
  for (size_t r = 0; r < out.labels_.size(); ++r) {
    auto [o, phi] = out.labels_[r];
    std::vector<long> theta = out.t_.point(out.t_.dual_orbit(o).points[0]);
    const std::vector<long>& tstab = out.t_.dual_orbit(o).stab;
    out.entries_[r].reserve(static_cast<size_t>(out.t_.orbit_count()));
    for (long c = 0; c < out.t_.orbit_count(); ++c) {
      std::vector<long> at = out.t_.point(out.t_.orbit(c).points[0]);
      out.entries_[r].push_back(
          value_core(out.t_, cache, theta, tstab, phi, at));
    }
  }
  return out;
}

long PartialTable::row_of(long dual_orbit, long phi_row) const {
  for (size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i].first == dual_orbit && labels_[i].second == phi_row)
      return static_cast<long>(i);
  return -1;
}

long PartialTable::steinberg_row() const {
  return row_of(t_.dual_orbit_of(0), t_.group().det_row());
}

long PartialTable::trivial_char_row() const {
  return row_of(t_.dual_orbit_of(0), t_.group().chars().trivial_row());
}

X1Report specialise_x1_check(const PartialTable& table) {
  const Torus& t = table.torus();
  const ReflectionGroup& w = t.group();
  Cache cache{w, table.data_dir(), {}};
  X1Report rep;
  for (long r = 0; r < table.rows(); ++r) {
    auto [o, phi] = table.labels()[static_cast<size_t>(r)];
    std::vector<long> theta = t.point(t.dual_orbit(o).points[0]);
    const std::vector<long>& tstab = t.dual_orbit(o).stab;
    const Parabolic& pth = cache.get(tstab);
    CycloNum phi1(pth.ct->degree(phi));
    CycloNum stabsize(static_cast<long>(tstab.size()));
    for (long c = 0; c < table.cols(); ++c) {
      std::vector<long> at = t.point(table.col_rep(c));
      CycloNum s;
      for (long e = 0; e < w.size(); ++e)
        s += t.char_value(theta, t.act_point(e, at));
      CycloNum oracle = phi1 * s / stabsize;
      ++rep.checked;
      if (table.entry(r, c).eval_one() != oracle)
        rep.mismatches.emplace_back(r, c);
    }
  }
  return rep;
}

OrthogonalityResult orthogonality_check(const PartialTable& table,
                                        const std::vector<long>& t,
                                        const std::vector<long>& tp) {
  const Torus& tor = table.torus();
  OrthogonalityResult res;
  long it = tor.index_of(t);
  long itp = tor.index_of(tp);
  std::vector<long> inv(tp.size());
  for (size_t i = 0; i < tp.size(); ++i)
    inv[i] = (tor.modulus() - tp[i]) % tor.modulus();
  long iinv = tor.index_of(inv);
  RatFun sum, alt;
  for (long r = 0; r < table.rows(); ++r) {
    const LaurentX& a = table.value(r, it);
    sum += RatFun(a * bar_ell(table.value(r, itp), tor.ell()));
    alt += RatFun(a * table.value(r, iinv));
  }
  res.sum = sum;
  res.conjugate = tor.orbit_of(it) == tor.orbit_of(itp);
  if (res.conjugate) res.expected = dim_block_at(tor, t, table.data_dir());
  res.conventions_agree = sum == alt;
  res.pass = res.conventions_agree && sum == res.expected;
  return res;
}

FrobeniusReport frobenius_check(const PartialTable& table,
                                const mpq_class& q) {
  const Torus& t = table.torus();
  const ReflectionGroup& w = t.group();
  integer_q(t, q);
  FrobeniusReport rep;
  rep.q = q;
  rep.needed = t.level() * t.rank();
  Cache cache{w, table.data_dir(), {}};
  LaurentX fullprod(1);
  for (long d : w.degrees()) fullprod *= LaurentX::x(d) - LaurentX(1);
  std::vector<char> is_refl(static_cast<size_t>(w.size()), 0);
  for (long e : w.reflections()) is_refl[static_cast<size_t>(e)] = 1;
  // |G : C(t)| at x = q per column, as the full order polynomial quotient
  std::vector<CycloNum> weight(static_cast<size_t>(table.cols()));
  std::vector<long> osize(static_cast<size_t>(table.cols()));
  for (long c = 0; c < table.cols(); ++c) {
    const TorusOrbit& orb = t.orbit(c);
    long nref = 0;
    for (long e : orb.stab) nref += is_refl[static_cast<size_t>(e)];
    const Parabolic& p = cache.get(orb.stab);
    RatFun quot(LaurentX::x(w.reflection_count() - nref) * fullprod,
                p.prodfac);
    weight[static_cast<size_t>(c)] = quot.evaluate(q);
    osize[static_cast<size_t>(c)] = static_cast<long>(orb.points.size());
  }
  for (long r = 0; r < table.rows(); ++r) {
    FrobeniusRow row;
    row.row = r;
    for (long c = 0; c < table.cols(); ++c) {
      CycloNum term =
          weight[static_cast<size_t>(c)] * table.entry(r, c).eval_rational(q);
      row.sum += term;
      row.weighted_sum += CycloNum(osize[static_cast<size_t>(c)]) * term;
    }
    row.val = row.sum.ell_val(t.ell());
    row.pass = row.val >= rep.needed;
    rep.pass = rep.pass && row.pass;
    rep.rows.push_back(row);
  }
  return rep;
}

RestrictionReport restriction_check(const PartialTable& table,
                                    const mpq_class& q) {
  const Torus& t = table.torus();
  integer_q(t, q);
  RestrictionReport rep;
  rep.q = q;
  long npts = t.point_count();
  // psi(t^{-1}) for each dual orbit representative, over all points
  std::vector<std::vector<CycloNum>> psi_inv(
      static_cast<size_t>(t.dual_orbit_count()));
  for (long d = 0; d < t.dual_orbit_count(); ++d) {
    std::vector<long> dc = t.point(t.dual_orbit(d).points[0]);
    psi_inv[static_cast<size_t>(d)].resize(static_cast<size_t>(npts));
    for (long i = 0; i < npts; ++i) {
      std::vector<long> pc = t.point(i);
      for (long& x : pc) x = (t.modulus() - x) % t.modulus();
      psi_inv[static_cast<size_t>(d)][static_cast<size_t>(i)] =
          t.char_value(dc, pc);
    }
  }
  CycloNum tsize(npts);
  for (long r = 0; r < table.rows(); ++r) {
    RestrictionRow row;
    row.row = r;
    std::vector<CycloNum> chi(static_cast<size_t>(npts));
    for (long c = 0; c < table.cols(); ++c) {
      CycloNum v = table.entry(r, c).eval_rational(q);
      for (long p : t.orbit(c).points) chi[static_cast<size_t>(p)] = v;
    }
    for (long d = 0; d < t.dual_orbit_count(); ++d) {
      CycloNum s;
      for (long i = 0; i < npts; ++i)
        s += chi[static_cast<size_t>(i)] *
             psi_inv[static_cast<size_t>(d)][static_cast<size_t>(i)];
      CycloNum coeff = s / tsize;
      row.coeff.push_back(coeff);
      if (coeff.ell_val(t.ell()) < 0)
        row.bad += static_cast<long>(t.dual_orbit(d).points.size());
    }
    rep.bad += row.bad;
    rep.rows.push_back(row);
  }
  rep.pass = rep.bad == 0;
  return rep;
}

std::string table_to_json(const PartialTable& table) {
  nlohmann::ordered_json j;
  j["group"] = table.torus().group().name();
  j["ell"] = table.torus().ell();
  j["a"] = table.torus().level();
  j["cols"] = nlohmann::ordered_json::array();
  for (long c = 0; c < table.cols(); ++c) j["cols"].push_back(table.col_rep(c));
  j["labels"] = nlohmann::ordered_json::array();
  j["degrees"] = nlohmann::ordered_json::array();
  for (long r = 0; r < table.rows(); ++r) {
    const auto& [o, phi] = table.labels()[static_cast<size_t>(r)];
    j["labels"].push_back({o, phi});
    j["degrees"].push_back(table.degrees()[static_cast<size_t>(r)].str());
  }
  j["entries"] = nlohmann::ordered_json::array();
  for (long r = 0; r < table.rows(); ++r) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (long c = 0; c < table.cols(); ++c)
      row.push_back(table.entry(r, c).str());
    j["entries"].push_back(row);
  }
  return j.dump(2) + "\n";
}

PartialTable table_from_json(const std::string& text, const Torus& t,
                             const std::string& data_dir) {
  check_config(t);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad table json: ") + e.what());
  }
  try {
    if (j.at("group").get<std::string>() != t.group().name() ||
        j.at("ell").get<long>() != t.ell() || j.at("a").get<long>() != t.level())
      throw ParseError("table json does not match the torus");
    PartialTable out(t, data_dir);
    for (const auto& c : j.at("cols")) {
      long idx = c.get<long>();
      if (idx < 0 || idx >= t.point_count())
        throw ParseError("table json column out of range");
    }
    if (static_cast<long>(j.at("cols").size()) != t.orbit_count())
      throw ParseError("table json column count mismatch");
    for (const auto& l : j.at("labels"))
      out.labels_.emplace_back(l.at(0).get<long>(), l.at(1).get<long>());
    for (const auto& d : j.at("degrees"))
      out.degrees_.push_back(parse_ratfun(d.get<std::string>()));
    for (const auto& row : j.at("entries")) {
      out.entries_.emplace_back();
      for (const auto& e : row)
        out.entries_.back().push_back(parse_laurent(e.get<std::string>()));
      if (static_cast<long>(out.entries_.back().size()) != t.orbit_count())
        throw ParseError("table json entry row length mismatch");
    }
    if (out.entries_.size() != out.labels_.size() ||
        out.degrees_.size() != out.labels_.size())
      throw ParseError("table json row count mismatch");
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad table json: ") + e.what());
  }
}

std::string table_to_csv(const PartialTable& table) {
  std::ostringstream out;
  out << "theta_orbit,phi_row,degree";
  for (long c = 0; c < table.cols(); ++c) out << ",t=" << table.col_rep(c);
  out << "\n";
  for (long r = 0; r < table.rows(); ++r) {
    const auto& [o, phi] = table.labels()[static_cast<size_t>(r)];
    std::string deg = table.degrees()[static_cast<size_t>(r)].str();
    out << o << "," << phi << "," << deg;
    for (long c = 0; c < table.cols(); ++c) {
      std::string s = table.entry(r, c).str();
      if (s.find(',') != std::string::npos)
        throw ParseError("table entry not csv-safe: " + s);
      out << "," << s;
    }
    out << "\n";
  }
  return out.str();
}

PartialTable table_from_csv(const std::string& text, const Torus& t,
                            const std::string& data_dir) {
  check_config(t);
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty table csv");
  std::vector<std::string> head;
  {
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) head.push_back(cell);
  }
  if (head.size() != static_cast<size_t>(3 + t.orbit_count()))
    throw ParseError("table csv header does not match the torus");
  for (long c = 0; c < t.orbit_count(); ++c) {
    std::string want = "t=" + std::to_string(t.orbit(c).points[0]);
    if (head[static_cast<size_t>(3 + c)] != want)
      throw ParseError("table csv column mismatch: " +
                       head[static_cast<size_t>(3 + c)]);
  }
  PartialTable out(t, data_dir);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != head.size())
      throw ParseError("table csv row length mismatch");
    out.labels_.emplace_back(std::stol(cells[0]), std::stol(cells[1]));
    out.degrees_.push_back(parse_ratfun(cells[2]));
    out.entries_.emplace_back();
    for (long c = 0; c < t.orbit_count(); ++c)
      out.entries_.back().push_back(parse_laurent(cells[static_cast<size_t>(3 + c)]));
  }
  return out;
}

}  // namespace spets
