#include "spets/torus.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "spets/errors.hpp"
#include "spets/linalg.hpp"

namespace spets {

namespace {

constexpr long kPointCap = 10000000;

long pow_long(long b, long e) {
  long r = 1;
  for (long i = 0; i < e; ++i) r *= b;
  return r;
}

CMat rows_to_cmat(const std::vector<std::vector<CycloNum>>& rows, long n) {
  CMat m(static_cast<long>(rows.size()), n);
  for (long i = 0; i < m.rows; ++i)
    for (long j = 0; j < n; ++j) m.at(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
  return m;
}

std::vector<std::vector<CycloNum>> cmat_to_rows(const CMat& m) {
  std::vector<std::vector<CycloNum>> rows;
  for (long i = 0; i < m.rows; ++i) {
    std::vector<CycloNum> r;
    for (long j = 0; j < m.cols; ++j) r.push_back(m.at(i, j));
    rows.push_back(std::move(r));
  }
  return rows;
}

// is v inside the row span of basis
bool in_span(const std::vector<std::vector<CycloNum>>& basis, const std::vector<CycloNum>& v, long n) {
  if (basis.empty()) {
    for (const auto& c : v)
      if (!c.is_zero()) return false;
    return true;
  }
  CMat cols(n, static_cast<long>(basis.size()));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < cols.cols; ++j) cols.at(i, j) = basis[static_cast<size_t>(j)][static_cast<size_t>(i)];
  return cmat_solve(cols, v).has_value();
}

}  // namespace

std::vector<Flat> arrangement_flats(const ReflectionGroup& w) {
  const long n = w.rank();
  std::vector<Flat> flats;
  std::map<std::string, long> index;

  auto add = [&](std::vector<std::vector<CycloNum>> rows) -> long {
    CMat canon = cmat_rref(rows_to_cmat(rows, n));
    std::string key = cmat_key(canon);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    Flat f;
    f.basis = cmat_to_rows(canon);
    f.dim = canon.rows;
    f.stab = w.pointwise_stabilizer(f.basis);
    long at = static_cast<long>(flats.size());
    index[key] = at;
    flats.push_back(std::move(f));
    return at;
  };

  std::vector<std::vector<CycloNum>> full;
  for (long i = 0; i < n; ++i) {
    std::vector<CycloNum> e(static_cast<size_t>(n));
    e[static_cast<size_t>(i)] = CycloNum(1);
    full.push_back(std::move(e));
  }
  add(full);

  const CMat id = cmat_identity(n);
  for (size_t head = 0; head < flats.size(); ++head) {
    // copy out: the vector may reallocate as new flats are appended
    const std::vector<std::vector<CycloNum>> basis = flats[head].basis;
    const long k = static_cast<long>(basis.size());
    if (k == 0) continue;
    for (long r : w.reflections()) {
      CMat d = cmat_sub(w.matrix(r), id);
      CMat c(n, k);
      for (long i = 0; i < n; ++i)
        for (long j = 0; j < k; ++j) {
          CycloNum acc;
          for (long t = 0; t < n; ++t)
            acc += d.at(i, t) * basis[static_cast<size_t>(j)][static_cast<size_t>(t)];
          c.at(i, j) = acc;
        }
      auto ker = cmat_kernel(c);
      if (static_cast<long>(ker.size()) == k) continue;  // flat already inside the hyperplane
      std::vector<std::vector<CycloNum>> cut;
      for (const auto& co : ker) {
        std::vector<CycloNum> v(static_cast<size_t>(n));
        for (long j = 0; j < k; ++j)
          for (long t = 0; t < n; ++t)
            v[static_cast<size_t>(t)] += co[static_cast<size_t>(j)] * basis[static_cast<size_t>(j)][static_cast<size_t>(t)];
        cut.push_back(std::move(v));
      }
      add(std::move(cut));
    }
  }

  // inclusion order
  for (size_t i = 0; i < flats.size(); ++i)
    for (size_t j = 0; j < flats.size(); ++j) {
      if (i == j || flats[j].dim >= flats[i].dim) continue;
      bool inside = true;
      for (const auto& v : flats[j].basis)
        if (!in_span(flats[i].basis, v, n)) {
          inside = false;
          break;
        }
      if (inside) flats[i].below.push_back(static_cast<long>(j));
    }

  // ambient space first, then shrinking dimension, key-stable
  std::vector<long> order(flats.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<long>(i);
  std::sort(order.begin(), order.end(), [&](long x, long y) {
    if (flats[static_cast<size_t>(x)].dim != flats[static_cast<size_t>(y)].dim)
      return flats[static_cast<size_t>(x)].dim > flats[static_cast<size_t>(y)].dim;
    return cmat_key(rows_to_cmat(flats[static_cast<size_t>(x)].basis, n)) <
           cmat_key(rows_to_cmat(flats[static_cast<size_t>(y)].basis, n));
  });
  std::vector<long> where(order.size());
  for (size_t i = 0; i < order.size(); ++i) where[static_cast<size_t>(order[i])] = static_cast<long>(i);
  std::vector<Flat> out;
  for (long idx : order) out.push_back(std::move(flats[static_cast<size_t>(idx)]));
  for (auto& f : out)
    for (auto& b : f.below) b = where[static_cast<size_t>(b)];
  return out;
}

std::vector<mpz_class> flat_counts(const std::vector<Flat>& flats, long ell, long alpha) {
  std::vector<long> order(flats.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<long>(i);
  std::sort(order.begin(), order.end(), [&](long x, long y) {
    return flats[static_cast<size_t>(x)].dim < flats[static_cast<size_t>(y)].dim;
  });
  std::vector<mpz_class> m(flats.size());
  mpz_class base = ell;
  for (long i : order) {
    mpz_class total;
    mpz_pow_ui(total.get_mpz_t(), base.get_mpz_t(),
               static_cast<unsigned long>(alpha * flats[static_cast<size_t>(i)].dim));
    for (long j : flats[static_cast<size_t>(i)].below) total -= m[static_cast<size_t>(j)];
    m[static_cast<size_t>(i)] = total;
  }
  return m;
}

OsFit os_fit(const std::vector<Flat>& flats, long flat_index, long ell, long a) {
  OsFit fit;
  const long k = flats[static_cast<size_t>(flat_index)].dim;
  std::vector<mpz_class> m0 = flat_counts(flats, ell, a);
  std::vector<mpz_class> m1 = flat_counts(flats, ell, a + 1);
  std::vector<mpz_class> m2 = flat_counts(flats, ell, a + 2);
  const mpz_class &ca = m0[static_cast<size_t>(flat_index)],
                  &cb = m1[static_cast<size_t>(flat_index)],
                  &cc = m2[static_cast<size_t>(flat_index)];
  if (k == 0) {
    fit.ok = (ca == 1 && cb == 1 && cc == 1);
    if (!fit.ok) fit.note = "point flat count is not 1";
    return fit;
  }
  if (!ca.fits_slong_p()) {
    fit.note = "count too large to factor";
    return fit;
  }
  const long target = ca.get_si();
  const long qa = pow_long(ell, a);
  const long qb = pow_long(ell, a + 1);
  const long qc = pow_long(ell, a + 2);

  std::vector<long> divs;
  for (long d = 1; d <= std::abs(target); ++d)
    if (target % d == 0) {
      divs.push_back(d);
      divs.push_back(-d);
    }

  std::set<std::vector<long>> sols;
  std::vector<long> factors;
  auto rec = [&](auto&& self, long remaining, size_t depth) -> void {
    if (depth + 1 == static_cast<size_t>(k)) {
      if (!factors.empty() && remaining < factors.back()) return;
      factors.push_back(remaining);
      mpz_class pb = 1, pc = 1;
      std::vector<long> b;
      for (long f : factors) {
        long bi = qa - f;
        b.push_back(bi);
        pb *= mpz_class(qb - bi);
        pc *= mpz_class(qc - bi);
      }
      if (pb == cb && pc == cc) {
        std::sort(b.begin(), b.end());
        sols.insert(b);
      }
      factors.pop_back();
      return;
    }
    for (long d : divs) {
      if (remaining % d != 0) continue;
      if (!factors.empty() && d < factors.back()) continue;
      factors.push_back(d);
      self(self, remaining / d, depth + 1);
      factors.pop_back();
    }
  };
  rec(rec, target, 0);

  if (sols.empty()) {
    fit.note = "no integer product form matches levels " + std::to_string(a) +
               ".." + std::to_string(a + 2);
    return fit;
  }
  fit.ok = true;
  fit.b = *sols.begin();
  if (sols.size() > 1) fit.note = "multiple product forms; smallest reported";
  return fit;
}

Torus Torus::build(const ReflectionGroup& w, long ell, long a, ResidueEmbedding& emb) {
  if (ell == 2) throw DataValidation("torus needs an odd ell");
  if (emb.ell() != ell || emb.level() < a)
    throw DataValidation("embedding does not cover the torus modulus");
  Torus t(w);
  t.ell_ = ell;
  t.a_ = a;
  t.q_ = pow_long(ell, a);
  t.n_ = w.rank();
  t.coprime_ = (w.size() % ell) != 0;

  mpz_class np = 1;
  for (long i = 0; i < t.n_; ++i) np *= t.q_;
  if (np > kPointCap) throw OrderCapExceeded("torus too large to enumerate");
  t.npts_ = np.get_si();

  for (long e = 0; e < w.size(); ++e) {
    std::vector<long> m(static_cast<size_t>(t.n_ * t.n_));
    for (long i = 0; i < t.n_; ++i)
      for (long j = 0; j < t.n_; ++j)
        m[static_cast<size_t>(i * t.n_ + j)] =
            mpz_class(emb.reduce(w.matrix(e).at(i, j)) % t.q_).get_si();
    t.red_.push_back(std::move(m));
  }

  // the reduction must be a homomorphism
  std::mt19937 rng(12345);
  std::uniform_int_distribution<long> pick(0, w.size() - 1);
  for (int trial = 0; trial < 100; ++trial) {
    long x = pick(rng), y = pick(rng);
    long xy = w.group().mult(x, y);
    const auto &mx = t.red_[static_cast<size_t>(x)], &my = t.red_[static_cast<size_t>(y)];
    for (long i = 0; i < t.n_; ++i)
      for (long j = 0; j < t.n_; ++j) {
        long acc = 0;
        for (long s = 0; s < t.n_; ++s)
          acc = (acc + mx[static_cast<size_t>(i * t.n_ + s)] * my[static_cast<size_t>(s * t.n_ + j)]) % t.q_;
        if (acc != t.red_[static_cast<size_t>(xy)][static_cast<size_t>(i * t.n_ + j)])
          throw DataValidation("residue action is not a homomorphism");
      }
  }

  t.flats_ = arrangement_flats(w);
  t.enumerate_orbits();
  if (t.coprime_) t.build_hat();
  return t;
}

long Torus::index_of(const std::vector<long>& t) const {
  long idx = 0, base = 1;
  for (long i = 0; i < n_; ++i) {
    idx += ((t[static_cast<size_t>(i)] % q_ + q_) % q_) * base;
    base *= q_;
  }
  return idx;
}

std::vector<long> Torus::point(long idx) const {
  std::vector<long> t(static_cast<size_t>(n_));
  for (long i = 0; i < n_; ++i) {
    t[static_cast<size_t>(i)] = idx % q_;
    idx /= q_;
  }
  return t;
}

std::vector<long> Torus::act_point(long welem, const std::vector<long>& t) const {
  const auto& m = red_[static_cast<size_t>(w_.group().inverse(welem))];
  std::vector<long> out(static_cast<size_t>(n_));
  for (long i = 0; i < n_; ++i) {
    long acc = 0;
    for (long j = 0; j < n_; ++j)
      acc = (acc + m[static_cast<size_t>(i * n_ + j)] * t[static_cast<size_t>(j)]) % q_;
    out[static_cast<size_t>(i)] = acc;
  }
  return out;
}

std::vector<long> Torus::act_dual(long welem, const std::vector<long>& d) const {
  const auto& m = red_[static_cast<size_t>(welem)];
  std::vector<long> out(static_cast<size_t>(n_));
  for (long j = 0; j < n_; ++j) {
    long acc = 0;
    for (long i = 0; i < n_; ++i)
      acc = (acc + m[static_cast<size_t>(i * n_ + j)] * d[static_cast<size_t>(i)]) % q_;
    out[static_cast<size_t>(j)] = acc;
  }
  return out;
}

CycloNum Torus::char_value(const std::vector<long>& dual, const std::vector<long>& t) const {
  long e = 0;
  for (long i = 0; i < n_; ++i)
    e = (e + dual[static_cast<size_t>(i)] * t[static_cast<size_t>(i)]) % q_;
  return CycloNum::root_of_unity(q_, e).shrink();
}

std::vector<long> Torus::stabilizer(const std::vector<long>& t) const {
  std::vector<long> out;
  for (long e = 0; e < w_.size(); ++e)
    if (act_point(e, t) == t) out.push_back(e);
  return out;
}

std::vector<long> Torus::dual_stabilizer(const std::vector<long>& d) const {
  std::vector<long> out;
  for (long e = 0; e < w_.size(); ++e)
    if (act_dual(e, d) == d) out.push_back(e);
  return out;
}

void Torus::enumerate_orbits() {
  auto sweep = [&](bool dual, std::vector<TorusOrbit>& orbits, std::vector<int>& orbit_of) {
    orbit_of.assign(static_cast<size_t>(npts_), -1);
    for (long start = 0; start < npts_; ++start) {
      if (orbit_of[static_cast<size_t>(start)] >= 0) continue;
      long oid = static_cast<long>(orbits.size());
      std::vector<long> stack{start};
      std::vector<long> pts;
      orbit_of[static_cast<size_t>(start)] = static_cast<int>(oid);
      while (!stack.empty()) {
        long cur = stack.back();
        stack.pop_back();
        pts.push_back(cur);
        std::vector<long> coords = point(cur);
        for (long g : w_.generator_elements()) {
          long nxt = index_of(dual ? act_dual(g, coords) : act_point(g, coords));
          if (orbit_of[static_cast<size_t>(nxt)] < 0) {
            orbit_of[static_cast<size_t>(nxt)] = static_cast<int>(oid);
            stack.push_back(nxt);
          }
        }
      }
      std::sort(pts.begin(), pts.end());
      TorusOrbit o;
      o.stab = dual ? dual_stabilizer(point(pts[0])) : stabilizer(point(pts[0]));
      o.points = std::move(pts);
      orbits.push_back(std::move(o));
    }
  };
  sweep(false, orbits_, orbit_of_);
  sweep(true, dual_orbits_, dual_orbit_of_);

  // coprime order: every stabiliser is parabolic
  if (coprime_)
    for (const auto& o : orbits_)
      if (!w_.is_parabolic(o.stab))
        throw NoEquivariantMatching("point stabiliser is not parabolic");
}

void Torus::build_hat() {
  hat_.assign(static_cast<size_t>(npts_), {});
  hat_inv_.assign(static_cast<size_t>(npts_), -1);
  std::vector<bool> used(dual_orbits_.size(), false);

  for (const auto& o : orbits_) {
    long rep = o.points[0];
    // smallest character index with exactly this stabiliser, in an unused
    // dual orbit of the same size
    long best = -1;
    for (size_t j = 0; j < dual_orbits_.size(); ++j) {
      if (used[j] || dual_orbits_[j].points.size() != o.points.size()) continue;
      for (long dIdx : dual_orbits_[j].points) {
        if (best >= 0 && dIdx >= best) break;
        if (dual_stabilizer(point(dIdx)) == o.stab) {
          best = dIdx;
          break;
        }
      }
    }
    if (best < 0)
      throw NoEquivariantMatching("no character orbit matches the stabiliser of point " +
                                  std::to_string(rep));
    used[static_cast<size_t>(dual_orbit_of_[static_cast<size_t>(best)])] = true;

    // extend equivariantly along the orbit
    hat_[static_cast<size_t>(rep)] = point(best);
    hat_inv_[static_cast<size_t>(best)] = rep;
    std::vector<long> stack{rep};
    while (!stack.empty()) {
      long cur = stack.back();
      stack.pop_back();
      std::vector<long> coords = point(cur);
      for (long g : w_.generator_elements()) {
        long nxt = index_of(act_point(g, coords));
        std::vector<long> img = act_dual(g, hat_[static_cast<size_t>(cur)]);
        if (hat_[static_cast<size_t>(nxt)].empty()) {
          hat_[static_cast<size_t>(nxt)] = img;
          hat_inv_[static_cast<size_t>(index_of(img))] = nxt;
          stack.push_back(nxt);
        } else if (hat_[static_cast<size_t>(nxt)] != img) {
          throw NoEquivariantMatching("equivariant extension is inconsistent");
        }
      }
    }
  }

  for (long p = 0; p < npts_; ++p)
    if (hat_[static_cast<size_t>(p)].empty() || hat_inv_[static_cast<size_t>(p)] < 0)
      throw NoEquivariantMatching("character identification is not a bijection");
}

long Torus::point_of_char(const std::vector<long>& d) const {
  long idx = hat_inv_[static_cast<size_t>(index_of(d))];
  if (idx < 0) throw NoEquivariantMatching("character not identified");
  return idx;
}

}  // namespace spets
