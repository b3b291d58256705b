#include "spets/unipotent.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "spets/errors.hpp"
#include "spets/group.hpp"
#include "spets/hecke.hpp"
#include "spets/molien.hpp"
#include "spets/residue.hpp"

namespace spets {

namespace {

bool identity_twist(const SubCoset& c) { return c.twist.rows == 0; }

CMat group_matrix(const SubCoset& c, long v) {
  CMat m = c.amb->matrix(v);
  if (!identity_twist(c)) m = cmat_mul(m, c.twist);
  return m;
}

// dimension of the 1-eigenspace on the ambient space
long fixed_dim(const CMat& m) {
  CMat d = cmat_sub(m, cmat_identity(m.rows));
  return m.rows - cmat_rank(std::move(d));
}

// monic det(x - m), the reversed characteristic determinant
LaurentX torus_order(const CMat& m) {
  return char_det(m).compose_power(-1) * LaurentX::x(m.rows);
}

long count_reflections(const ReflectionGroup& w, const std::vector<long>& elems) {
  long n = 0;
  for (long e : elems)
    if (std::binary_search(w.reflections().begin(), w.reflections().end(), e)) ++n;
  return n;
}

mpq_class ratio(long num, long den) {
  mpq_class r(num);
  r /= den;
  return r;
}

// R_v(1) with the x'-part of the order of L precomputed.  A torus carries
// only its trivial character, of degree 1.  Otherwise the degree is
// (-1)^n |L|_{x'} / det(1 - x v); on real characteristic polynomials this is
// the classical eps_L eps_T |L:T_v|_{x'}, and the same expression keeps the
// almost-character degrees equal to the coinvariant-algebra multiplicities
// when eigenvalues come in Galois rather than conjugate pairs.
LaurentX dl_one(const SubCoset& L, const LaurentX& xp, long v) {
  if (L.elems.size() == 1) return LaurentX(CycloNum(1L));
  CMat m = group_matrix(L, v);
  LaurentX num = (m.rows % 2 == 0) ? xp : -xp;
  RatFun r(num, char_det(m));
  if (!r.is_polynomial())
    throw FactorFailure("torus order does not divide the coset order");
  return r.as_polynomial();
}

LaurentX ambient_fake(const ReflectionGroup& w, const std::vector<long>& elems,
                      const std::vector<CycloNum>& weights,
                      const std::vector<long>& subdeg) {
  long K = w.reflection_count() + 2;
  std::vector<LaurentX> dets;
  dets.reserve(elems.size());
  for (long e : elems) dets.push_back(char_det(w.matrix(e)));
  std::vector<CycloNum> s =
      molien_series(dets, weights, static_cast<long>(elems.size()), K);
  for (long d : subdeg) series_clear_factor(s, d);
  return series_to_poly(s);
}

long exp_as_long(const mpq_class& e) {
  if (e.get_den() != 1) throw FractionalPower("fractional exponent");
  return static_cast<long>(e.get_num().get_si());
}

}  // namespace

SubCoset split_coset(const ReflectionGroup& w, std::vector<long> elems) {
  std::sort(elems.begin(), elems.end());
  SubCoset c;
  c.amb = &w;
  c.elems = std::move(elems);
  return c;
}

SubCoset torus_coset(const ReflectionGroup& w, long elem) {
  SubCoset c;
  c.amb = &w;
  c.elems = {0};
  c.twist = w.matrix(elem);
  return c;
}

SubCoset point_coset(const Torus& t, const std::vector<long>& at) {
  return split_coset(t.group(), t.stabilizer(at));
}

CMat coset_matrix(const SubCoset& c, long v) { return group_matrix(c, v); }

OrderPoly order_polynomial(const SubCoset& c) {
  const ReflectionGroup& w = *c.amb;
  long n = w.rank();
  OrderPoly out;
  long maxfix = -1;
  for (long v : c.elems) {
    long f = fixed_dim(group_matrix(c, v));
    if (f > maxfix) maxfix = f;
  }
  out.epsilon = (maxfix % 2 == 0) ? 1 : -1;
  if (c.elems.size() == 1) {
    out.value = torus_order(group_matrix(c, c.elems.front()));
    return out;
  }
  long degsum = 0;
  for (long d : w.degrees()) degsum += d;
  long K = degsum + 2;
  std::vector<LaurentX> dets;
  std::vector<CycloNum> weights(c.elems.size(), CycloNum(1L));
  dets.reserve(c.elems.size());
  for (long v : c.elems) dets.push_back(char_det(group_matrix(c, v)));
  std::vector<CycloNum> mol =
      molien_series(dets, weights, static_cast<long>(c.elems.size()), K);
  std::vector<CycloNum> p = series_inverse(series_to_poly(mol), K);
  long deg = -1;
  for (long j = 0; j < K; ++j)
    if (!p[static_cast<size_t>(j)].is_zero()) deg = j;
  if (deg < 0 || deg > K - 2)
    throw FactorFailure("coset order denominator exceeds the truncation");
  LaurentX rev;
  for (long j = 0; j <= deg; ++j)
    rev += LaurentX::monomial(p[static_cast<size_t>(j)], deg - j);
  CycloNum unit = p[static_cast<size_t>(deg)];
  if (n % 2 != 0) unit = -unit;
  CycloNum unit2 = unit * unit;
  long nrefl = count_reflections(w, c.elems);
  out.value = unit2.inverse() * (rev * LaurentX::x(nrefl));
  return out;
}

LaurentX xprime_part(const LaurentX& order) {
  mpq_class m = order.min_exp();
  if (m.get_den() != 1) throw FractionalPower("fractional order exponent");
  return order * LaurentX::monomial(CycloNum(1L),
                                    -static_cast<long>(m.get_num().get_si()));
}

LaurentX dl_degree_one(const SubCoset& L, long v) {
  OrderPoly op = order_polynomial(L);
  return dl_one(L, xprime_part(op.value), v);
}

RatFun dl_value(long class_id, const SubCoset& L) {
  const ReflectionGroup& w = *L.amb;
  const FiniteGroup& g = w.group();
  long count = 0;
  long first = -1;
  for (long v : L.elems) {
    long id = v;
    if (!identity_twist(L)) {
      id = w.element_of(group_matrix(L, v));
      if (id < 0) throw DataValidation("coset leaves the ambient group");
    }
    if (g.class_of(id) == class_id) {
      ++count;
      if (first < 0) first = v;
    }
  }
  if (count == 0) return RatFun();
  long cent = g.centralizer_order(g.class_rep(class_id));
  mpq_class scale = ratio(cent * count, static_cast<long>(L.elems.size()));
  return RatFun(LaurentX(scale) * dl_degree_one(L, first));
}

RatFun unipotent_value(const UnipotentChar& chi, const SubCoset& L) {
  const ReflectionGroup& w = *L.amb;
  const FiniteGroup& g = w.group();
  OrderPoly op = order_polynomial(L);
  LaurentX xp = xprime_part(op.value);
  // class id -> intersection count and one member of the coset
  std::map<long, std::pair<long, long>> seen;
  for (long v : L.elems) {
    long id = v;
    if (!identity_twist(L)) {
      id = w.element_of(group_matrix(L, v));
      if (id < 0) throw DataValidation("coset leaves the ambient group");
    }
    long c = g.class_of(id);
    auto it = seen.find(c);
    if (it == seen.end())
      seen.emplace(c, std::make_pair(1L, v));
    else
      ++it->second.first;
  }
  LaurentX acc;
  for (const auto& [c, cv] : seen) {
    auto it = chi.mult.find(c);
    if (it == chi.mult.end())
      throw MissingMultiplicity("no multiplicity for class " + std::to_string(c));
    if (it->second.is_zero()) continue;
    acc += (it->second * CycloNum(cv.first)) * dl_one(L, xp, cv.second);
  }
  return RatFun(acc, LaurentX(static_cast<long>(L.elems.size())));
}

LaurentX almost_value(long phi_row, const SubCoset& L) {
  if (!identity_twist(L)) throw DataValidation("split sub-coset required");
  const ReflectionGroup& w = *L.amb;
  std::vector<CycloNum> weights;
  weights.reserve(L.elems.size());
  for (long v : L.elems) weights.push_back(w.chars().value(phi_row, v));
  Subgroup sub = make_subgroup(w.group(), L.elems);
  return ambient_fake(w, L.elems, weights, subgroup_degrees(w, sub));
}

std::vector<CycloNum> psi_flat_sums(const Torus& tb,
                                    const std::vector<long>& psi, long a) {
  if (!tb.coprime()) throw DataValidation("coprime case required");
  if (a < 0 || a > tb.level()) throw DataValidation("character level out of range");
  if (static_cast<long>(psi.size()) != tb.rank())
    throw DataValidation("character coordinate size mismatch");
  long ma = 1;
  for (long i = 0; i < a; ++i) ma *= tb.ell();
  const std::vector<Flat>& flats = tb.flats();
  std::map<std::vector<long>, long> flat_of;
  for (size_t i = 0; i < flats.size(); ++i)
    flat_of.emplace(flats[i].stab, static_cast<long>(i));
  // exponent histogram per flat; one root-of-unity combination at the end
  std::vector<std::vector<long>> hist(flats.size(),
                                      std::vector<long>(static_cast<size_t>(ma), 0));
  for (long idx = 0; idx < tb.point_count(); ++idx) {
    std::vector<long> pt = tb.point(idx);
    auto it = flat_of.find(tb.stabilizer(pt));
    if (it == flat_of.end())
      throw DataValidation("point stabiliser matches no flat");
    long e = 0;
    for (long i = 0; i < tb.rank(); ++i)
      e = (e + psi[static_cast<size_t>(i)] * pt[static_cast<size_t>(i)]) % ma;
    ++hist[static_cast<size_t>(it->second)][static_cast<size_t>(e)];
  }
  std::vector<CycloNum> out(flats.size());
  for (size_t f = 0; f < flats.size(); ++f) {
    CycloNum s;
    for (long e = 0; e < ma; ++e)
      if (hist[f][static_cast<size_t>(e)] != 0)
        s += CycloNum(hist[f][static_cast<size_t>(e)]) *
             CycloNum::root_of_unity(ma, e);
    out[f] = s.shrink();
  }
  return out;
}

ScalarProduct almost_scalar(const Torus& t, long phi_row,
                            const std::vector<long>& psi, const mpq_class& q) {
  if (q.get_den() != 1) throw DataValidation("integer q required");
  long ma = 1;
  for (long i = 0; i < t.level(); ++i) ma *= t.ell();
  if (mpz_class(q.get_num() - 1) % ma != 0)
    throw DataValidation("q is not 1 modulo the torus modulus");
  std::vector<CycloNum> sums = psi_flat_sums(t, psi, t.level());
  const std::vector<Flat>& flats = t.flats();
  CycloNum acc;
  for (size_t f = 0; f < flats.size(); ++f) {
    if (sums[f].is_zero()) continue;
    LaurentX fake = almost_value(phi_row, split_coset(t.group(), flats[f].stab));
    acc += sums[f] * fake.eval_rational(q);
  }
  ScalarProduct out;
  out.value = (acc * CycloNum(mpq_class(1) / t.point_count())).shrink();
  out.integral = out.value.is_rational() &&
                 out.value.rational_value().get_den() == 1;
  return out;
}

RatFun almost_scalar_symbolic(const Torus& t, long phi_row,
                              const std::vector<LaurentX>& psi_sums) {
  const std::vector<Flat>& flats = t.flats();
  if (psi_sums.size() != flats.size())
    throw DataValidation("one sum per flat required");
  LaurentX num;
  for (size_t f = 0; f < flats.size(); ++f) {
    if (psi_sums[f].is_zero()) continue;
    num += psi_sums[f] *
           almost_value(phi_row, split_coset(t.group(), flats[f].stab));
  }
  LaurentX den = (LaurentX::x() - LaurentX(1)).pow(t.rank());
  return RatFun(num, den);
}

PolyFit polynomiality_check(const ReflectionGroup& w, long ell, long a,
                            long phi_row, const std::vector<long>& psi,
                            const std::vector<long>& b_range) {
  if (b_range.empty()) throw DataValidation("empty level range");
  for (size_t i = 0; i < b_range.size(); ++i) {
    if (b_range[i] < a) throw DataValidation("levels must be at least a");
    if (i > 0 && b_range[i] <= b_range[i - 1])
      throw DataValidation("levels must increase");
  }
  long n = w.rank();
  std::vector<Flat> flats = arrangement_flats(w);
  std::vector<LaurentX> fakes;
  long bound = 0;
  for (const Flat& fl : flats) {
    LaurentX f = almost_value(phi_row, split_coset(w, fl.stab));
    long d = f.is_zero() ? 0 : exp_as_long(f.max_exp());
    bound = std::max(bound, d + fl.dim);
    fakes.push_back(std::move(f));
  }
  bound -= n;
  if (bound < 0) bound = 0;
  long k = static_cast<long>(b_range.size());
  if (k < bound + 1)
    throw InterpolationUnderdetermined(
        "need " + std::to_string(bound + 1) + " levels, have " +
        std::to_string(k));
  PolyFit out;
  out.degree_bound = bound;
  ResidueEmbedding emb(ell, b_range.back());
  std::vector<mpq_class> ys, vs;
  for (long b : b_range) {
    Torus tb = Torus::build(w, ell, b, emb);
    std::vector<CycloNum> sums = psi_flat_sums(tb, psi, a);
    mpz_class yb = 1;
    for (long i = 0; i < b; ++i) yb *= ell;
    mpq_class x(mpz_class(yb + 1));
    CycloNum acc;
    for (size_t f = 0; f < flats.size(); ++f) {
      if (sums[f].is_zero()) continue;
      acc += sums[f] * fakes[f].eval_rational(x);
    }
    mpz_class tsize = 1;
    for (long i = 0; i < n * b; ++i) tsize *= ell;
    CycloNum val = (acc * CycloNum(mpq_class(1) / mpq_class(tsize))).shrink();
    if (!val.is_rational())
      throw FitFailure("scalar product is not rational");
    out.values.push_back(val);
    ys.push_back(mpq_class(yb));
    vs.push_back(val.rational_value());
  }
  // interpolate on the first bound+1 levels, exactly
  long m = bound + 1;
  std::vector<std::vector<mpq_class>> aug(
      static_cast<size_t>(m), std::vector<mpq_class>(static_cast<size_t>(m + 1)));
  for (long i = 0; i < m; ++i) {
    mpq_class p = 1;
    for (long j = 0; j < m; ++j) {
      aug[static_cast<size_t>(i)][static_cast<size_t>(j)] = p;
      p *= ys[static_cast<size_t>(i)];
    }
    aug[static_cast<size_t>(i)][static_cast<size_t>(m)] = vs[static_cast<size_t>(i)];
  }
  for (long col = 0; col < m; ++col) {
    long piv = -1;
    for (long r = col; r < m; ++r)
      if (aug[static_cast<size_t>(r)][static_cast<size_t>(col)] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw FitFailure("degenerate interpolation nodes");
    std::swap(aug[static_cast<size_t>(col)], aug[static_cast<size_t>(piv)]);
    mpq_class d = aug[static_cast<size_t>(col)][static_cast<size_t>(col)];
    for (long j = col; j <= m; ++j) aug[static_cast<size_t>(col)][static_cast<size_t>(j)] /= d;
    for (long r = 0; r < m; ++r) {
      if (r == col) continue;
      mpq_class f = aug[static_cast<size_t>(r)][static_cast<size_t>(col)];
      if (f == 0) continue;
      for (long j = col; j <= m; ++j)
        aug[static_cast<size_t>(r)][static_cast<size_t>(j)] -=
            f * aug[static_cast<size_t>(col)][static_cast<size_t>(j)];
    }
  }
  out.coeffs.resize(static_cast<size_t>(m));
  for (long i = 0; i < m; ++i)
    out.coeffs[static_cast<size_t>(i)] = aug[static_cast<size_t>(i)][static_cast<size_t>(m)];
  while (out.coeffs.size() > 1 && out.coeffs.back() == 0) out.coeffs.pop_back();
  out.integral = true;
  out.nonnegative = true;
  for (const mpq_class& c : out.coeffs) {
    if (c.get_den() != 1) out.integral = false;
    if (c < 0) out.nonnegative = false;
  }
  if (k == m) {
    out.partial = true;
  } else {
    out.cross_validated = true;
    for (long i = m; i < k; ++i) {
      mpq_class v = 0, p = 1;
      for (const mpq_class& c : out.coeffs) {
        v += c * p;
        p *= ys[static_cast<size_t>(i)];
      }
      if (v != vs[static_cast<size_t>(i)]) out.cross_validated = false;
    }
  }
  return out;
}

PrincipalMult principal_series_mult(const Torus& t, long phi_row,
                                    const std::string& data_dir) {
  if (!t.coprime()) throw DataValidation("coprime case required");
  const ReflectionGroup& w = t.group();
  const FiniteGroup& g = w.group();
  const CharTable& ct = w.chars();
  PrincipalMult out;
  // classes meeting a proper point stabiliser carry the character value,
  // provided the stabiliser's block degrees are its fake degrees
  std::map<std::vector<long>, bool> tried;
  for (long i = 0; i < t.orbit_count(); ++i) {
    const std::vector<long>& stab = t.orbit(i).stab;
    if (static_cast<long>(stab.size()) == w.size()) continue;
    auto [it, fresh] = tried.emplace(stab, false);
    if (fresh) {
      Subgroup sub = make_subgroup(g, stab);
      CharTable subct = CharTable::build(sub.grp);
      SchurSet ss = subgroup_schur(w, sub, subct);
      std::vector<long> subdeg = subgroup_degrees(w, sub);
      bool ok = true;
      for (long r = 0; r < subct.rows() && ok; ++r) {
        std::vector<CycloNum> weights;
        weights.reserve(stab.size());
        for (long le = 0; le < sub.grp.size(); ++le)
          weights.push_back(subct.value(r, le));
        std::vector<long> parents;
        parents.reserve(stab.size());
        for (long le = 0; le < sub.grp.size(); ++le)
          parents.push_back(sub.to_parent[static_cast<size_t>(le)]);
        LaurentX fake = ambient_fake(w, parents, weights, subdeg);
        if (RatFun(fake) != ss.degree[static_cast<size_t>(r)]) ok = false;
      }
      it->second = ok;
    }
    if (!it->second) continue;
    for (long v : stab) out.mult[g.class_of(v)] = ct.value(phi_row, v);
  }
  long nclasses = g.class_count();
  if (static_cast<long>(out.mult.size()) == nclasses) {
    out.complete = true;
    return out;
  }
  // family completion: rows sharing the valuation and degree of the
  // block degree, combined to match the covered values and the degree
  SchurSet full = schur_elements(w, data_dir);
  auto inv = [&](long r) {
    LaurentX d = full.degree[static_cast<size_t>(r)].as_polynomial();
    return std::make_pair(d.min_exp(), d.max_exp());
  };
  auto key = inv(phi_row);
  std::vector<long> family;
  for (long r = 0; r < ct.rows(); ++r)
    if (inv(r) == key) family.push_back(r);
  if (family.size() == 1) {
    for (long c = 0; c < nclasses; ++c)
      out.mult[c] = ct.value(phi_row, g.class_rep(c));
    out.complete = true;
    return out;
  }
  long nf = static_cast<long>(family.size());
  std::vector<std::vector<CycloNum>> rows;
  std::vector<CycloNum> rhs;
  for (const auto& [c, val] : out.mult) {
    std::vector<CycloNum> row(static_cast<size_t>(nf));
    for (long j = 0; j < nf; ++j)
      row[static_cast<size_t>(j)] = ct.value(family[static_cast<size_t>(j)], g.class_rep(c));
    rows.push_back(std::move(row));
    rhs.push_back(val);
  }
  LaurentX dphi = full.degree[static_cast<size_t>(phi_row)].as_polynomial();
  std::map<long, bool> exps;
  auto note_exps = [&](const LaurentX& f) {
    for (const auto& [e, cf] : f.terms()) exps[e] = true;
    (void)f;
  };
  note_exps(dphi);
  std::vector<LaurentX> fam_fake;
  for (long j = 0; j < nf; ++j) {
    fam_fake.push_back(w.fake_degree(family[static_cast<size_t>(j)]));
    note_exps(fam_fake.back());
  }
  for (const auto& [e, used] : exps) {
    (void)used;
    std::vector<CycloNum> row(static_cast<size_t>(nf));
    for (long j = 0; j < nf; ++j)
      row[static_cast<size_t>(j)] = fam_fake[static_cast<size_t>(j)].coefficient(e);
    rows.push_back(std::move(row));
    rhs.push_back(dphi.coefficient(e));
  }
  CMat A(static_cast<long>(rows.size()), nf);
  for (size_t i = 0; i < rows.size(); ++i)
    for (long j = 0; j < nf; ++j) A.at(static_cast<long>(i), j) = rows[i][static_cast<size_t>(j)];
  if (cmat_rank(A) != nf) return out;
  auto sol = cmat_solve(A, rhs);
  if (!sol) return out;
  for (long c = 0; c < nclasses; ++c) {
    CycloNum m;
    for (long j = 0; j < nf; ++j)
      m += (*sol)[static_cast<size_t>(j)] *
           ct.value(family[static_cast<size_t>(j)], g.class_rep(c));
    out.mult[c] = m.shrink();
  }
  out.complete = true;
  return out;
}

UnipotentChar principal_series_char(const Torus& t, long phi_row,
                                    const std::string& data_dir) {
  PrincipalMult pm = principal_series_mult(t, phi_row, data_dir);
  if (!pm.complete)
    throw MissingMultiplicity("multiplicities not determined for row " +
                              std::to_string(phi_row));
  UnipotentChar chi;
  chi.label = t.group().name() + ":phi" + std::to_string(phi_row);
  chi.mult = std::move(pm.mult);
  chi.degree =
      schur_elements(t.group(), data_dir).degree[static_cast<size_t>(phi_row)].as_polynomial();
  return chi;
}

}  // namespace spets
