#include "spets/hecke.hpp"

#include <fstream>
#include <map>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "spets/errors.hpp"
#include "spets/molien.hpp"
#include "spets/parse.hpp"

namespace spets {

namespace {

using njson = nlohmann::json;

std::string space_key(const std::vector<std::vector<CycloNum>>& basis,
                      long n) {
  if (basis.empty()) return "0";
  CMat m(static_cast<long>(basis.size()), n);
  for (long i = 0; i < m.rows; ++i)
    for (long j = 0; j < n; ++j)
      m.at(i, j) = basis[static_cast<size_t>(i)][static_cast<size_t>(j)];
  return cmat_key(cmat_rref(m));
}

// ambient det(1 - x*w) and class size for each class of the subgroup
struct SubClasses {
  std::vector<LaurentX> cdets;
  std::vector<CycloNum> csizes;
};

SubClasses class_data(const ReflectionGroup& w, const Subgroup& sub) {
  SubClasses d;
  for (long c = 0; c < sub.grp.class_count(); ++c) {
    long pe = sub.to_parent[static_cast<size_t>(sub.grp.class_rep(c))];
    d.cdets.push_back(char_det(w.matrix(pe)));
    d.csizes.push_back(CycloNum(sub.grp.class_size(c)));
  }
  return d;
}

LaurentX poincare_of(const std::vector<long>& degrees) {
  LaurentX p(1);
  for (long d : degrees) {
    LaurentX f;
    for (long k = 0; k < d; ++k) f = f + LaurentX::x(k);
    p = p * f;
  }
  return p;
}

// closed form for a cyclic group: the character with value zeta^j at a
// generator gets S_j = prod_{k != j} (1 - u_j/u_k) with u_0 = x and
// u_k = zeta^k
SchurSet cyclic_schur(const ReflectionGroup& w) {
  const FiniteGroup& g = w.group();
  const long d = g.size();
  long gen = -1;
  for (long e = 1; e < d; ++e)
    if (g.element_order(e) == d) {
      gen = e;
      break;
    }
  std::vector<RatFun> u;
  u.push_back(RatFun(LaurentX::x()));
  for (long k = 1; k < d; ++k)
    u.push_back(RatFun(LaurentX(CycloNum::root_of_unity(d, k))));
  LaurentX P = w.poincare();
  SchurSet out;
  for (long r = 0; r < w.chars().rows(); ++r) {
    CycloNum v = w.chars().value(r, gen);
    long j = -1;
    for (long k = 0; k < d; ++k)
      if (v == CycloNum::root_of_unity(d, k)) {
        j = k;
        break;
      }
    if (j < 0) throw SplitFailure("cyclic character value is not a root of unity");
    RatFun S(1);
    for (long k = 0; k < d; ++k)
      if (k != j) S *= RatFun(1) - u[static_cast<size_t>(j)] / u[static_cast<size_t>(k)];
    out.schur.push_back(S);
    out.degree.push_back(RatFun(P) / S);
  }
  return out;
}

SchurSet fakedeg_schur(const ReflectionGroup& w) {
  LaurentX P = w.poincare();
  SchurSet out;
  for (long r = 0; r < w.chars().rows(); ++r) {
    const LaurentX& f = w.fake_degree(r);
    out.degree.push_back(RatFun(f));
    out.schur.push_back(RatFun(P, f));
  }
  return out;
}

SchurSet load_schur_data(const ReflectionGroup& w, const std::string& dir) {
  std::string d = dir.empty() ? default_data_dir() : dir;
  std::string path = d + "/schur_" + w.name() + ".json";
  std::ifstream in(path);
  if (!in) throw DataValidation("cannot open " + path);
  njson root = njson::parse(in);
  if (root.at("group_type").get<std::string>() != w.name())
    throw DataValidation("group_type mismatch in " + path);
  const auto& chars = root.at("characters");
  if (static_cast<long>(chars.size()) != w.chars().rows())
    throw DataValidation("character count mismatch in " + path);
  LaurentX P = w.poincare();
  SchurSet out;
  for (long r = 0; r < w.chars().rows(); ++r) {
    const auto& row = chars[static_cast<size_t>(r)];
    LaurentX num = parse_laurent(row.at("num").get<std::string>());
    LaurentX den = parse_laurent(row.at("den").get<std::string>());
    RatFun S(num, den);
    CycloNum at1 = S.evaluate(mpq_class(1));
    if (!(at1 * CycloNum(w.chars().degree(r)) == CycloNum(w.size())))
      throw DataValidation("Schur element " + std::to_string(r) +
                           " fails the x=1 law in " + path);
    RatFun D = RatFun(P) / S;
    if (!D.is_polynomial())
      throw DataValidation("Schur element " + std::to_string(r) +
                           " does not divide Poincare in " + path);
    out.schur.push_back(S);
    out.degree.push_back(D);
  }
  if (!(out.schur[static_cast<size_t>(w.chars().trivial_row())] == RatFun(P)))
    throw DataValidation("trivial Schur element is not Poincare in " + path);
  RatFun st(P, LaurentX::x(w.reflection_count()));
  if (!(out.schur[static_cast<size_t>(w.det_row())] == st))
    throw DataValidation("Steinberg Schur element fails in " + path);
  return out;
}

}  // namespace

SpecialisationMap spetsial_specialisation(const ReflectionGroup& w) {
  const long n = w.rank();
  SpecialisationMap out;
  out.z = 0;
  for (long e = 0; e < w.size(); ++e) {
    const CMat& m = w.matrix(e);
    CycloNum c = m.at(0, 0);
    bool scalar = true;
    for (long i = 0; i < n && scalar; ++i)
      for (long j = 0; j < n && scalar; ++j)
        if (!(m.at(i, j) == (i == j ? c : CycloNum()))) scalar = false;
    if (scalar) ++out.z;
  }

  std::map<std::string, long> refs_on;  // hyperplane key -> reflections on it
  std::map<std::string, std::vector<std::vector<CycloNum>>> basis_of;
  for (long e : w.reflections()) {
    auto basis = w.fixed_space({e});
    std::string key = space_key(basis, n);
    ++refs_on[key];
    basis_of.emplace(key, std::move(basis));
  }

  std::set<std::string> seen;
  for (const auto& [key, cnt] : refs_on) {
    if (seen.count(key)) continue;
    // sweep the orbit of this hyperplane
    std::vector<std::string> stack{key};
    seen.insert(key);
    while (!stack.empty()) {
      std::string cur = stack.back();
      stack.pop_back();
      const auto& basis = basis_of.at(cur);
      for (long g = 0; g < w.size(); ++g) {
        std::vector<std::vector<CycloNum>> img;
        for (const auto& v : basis) img.push_back(cmat_vec(w.matrix(g), v));
        std::string ik = space_key(img, n);
        if (!seen.count(ik)) {
          seen.insert(ik);
          stack.push_back(ik);
        }
      }
    }
    long order = cnt + 1;  // pointwise stabiliser of the hyperplane
    std::vector<LaurentX> params;
    params.push_back(LaurentX::x());
    for (long j = 1; j < order; ++j)
      params.push_back(LaurentX(CycloNum::root_of_unity(order, j)));
    out.params.push_back(std::move(params));
  }
  return out;
}

std::vector<long> subgroup_degrees(const ReflectionGroup& w,
                                   const Subgroup& sub) {
  SubClasses cd = class_data(w, sub);
  const long size = sub.grp.size();
  long nref = 0;
  {
    std::set<long> elems(sub.to_parent.begin(), sub.to_parent.end());
    for (long r : w.reflections())
      if (elems.count(r)) ++nref;
  }
  for (long K = 16; K <= 256; K *= 2) {
    auto S = molien_series(cd.cdets, cd.csizes, size, K);
    auto deg = peel_degrees(S, w.rank());
    if (deg.empty()) continue;
    long prod = 1, sum = 0;
    for (long dd : deg) {
      prod *= dd;
      sum += dd - 1;
    }
    if (prod == size && sum == nref) return deg;
  }
  throw NoProvider("stabiliser is not a reflection subgroup");
}

SchurSet subgroup_schur(const ReflectionGroup& w, const Subgroup& sub,
                        const CharTable& subct) {
  auto deg = subgroup_degrees(w, sub);
  SubClasses cd = class_data(w, sub);
  const long size = sub.grp.size();
  long N = 0;
  for (long dd : deg) N += dd - 1;
  LaurentX P = poincare_of(deg);
  const long K = N + 2;
  SchurSet out;
  for (long r = 0; r < subct.rows(); ++r) {
    std::vector<CycloNum> weights;
    for (long c = 0; c < sub.grp.class_count(); ++c)
      weights.push_back(cd.csizes[static_cast<size_t>(c)] *
                        subct.row(r)[static_cast<size_t>(c)]);
    auto S = molien_series(cd.cdets, weights, size, K);
    for (long dd : deg) series_clear_factor(S, dd);
    LaurentX f = series_to_poly(S);
    out.degree.push_back(RatFun(f));
    out.schur.push_back(RatFun(P, f));
  }
  return out;
}

SchurSet schur_elements(const ReflectionGroup& w, const std::string& data_dir) {
  const std::string& n = w.name();
  if (n == "mu3" || n == "A1") return cyclic_schur(w);
  if (n == "A1A1" || n == "A2") return fakedeg_schur(w);
  if (n == "G332" || n == "G552" || n == "G772" || n == "G333")
    return load_schur_data(w, data_dir);
  throw NoProvider("no Schur element provider for type " + n);
}

RatFun index_xprime(const ReflectionGroup& w,
                    const std::vector<long>& subdeg) {
  LaurentX num(1), den(1);
  for (long d : w.degrees()) num = num * (LaurentX::x(d) - LaurentX(1));
  for (long d : subdeg) den = den * (LaurentX::x(d) - LaurentX(1));
  return RatFun(num, den);
}

BlockLabels block_degrees(const Torus& t, const std::string& data_dir) {
  const ReflectionGroup& w = t.group();
  if (!t.coprime())
    throw DataValidation("block labels need a coprime torus");
  BlockLabels out;
  for (long o = 0; o < t.dual_orbit_count(); ++o) {
    const TorusOrbit& orb = t.dual_orbit(o);
    if (static_cast<long>(orb.stab.size()) == w.size()) {
      SchurSet full = schur_elements(w, data_dir);
      for (long r = 0; r < w.chars().rows(); ++r) {
        out.labels.emplace_back(o, r);
        out.degree.push_back(full.degree[static_cast<size_t>(r)]);
      }
      continue;
    }
    Subgroup sub = make_subgroup(w.group(), orb.stab);
    CharTable ct = CharTable::build(sub.grp);
    SchurSet ss = subgroup_schur(w, sub, ct);
    RatFun idx = index_xprime(w, subgroup_degrees(w, sub));
    for (long r = 0; r < ct.rows(); ++r) {
      out.labels.emplace_back(o, r);
      out.degree.push_back(idx * ss.degree[static_cast<size_t>(r)]);
    }
  }
  return out;
}

RatFun dim_block(const Torus& t, const std::string& data_dir) {
  BlockLabels bl = block_degrees(t, data_dir);
  RatFun s;
  for (const RatFun& d : bl.degree) s += d * d;
  return s;
}

}  // namespace spets
