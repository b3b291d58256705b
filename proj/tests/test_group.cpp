#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "spets/errors.hpp"
#include "spets/linalg.hpp"
#include "spets/molien.hpp"
#include "spets/parse.hpp"
#include "spets/reflgroup.hpp"

using namespace spets;

namespace {

CycloNum z(long m, long k = 1) { return CycloNum::root_of_unity(m, k); }

CMat mat(long n, std::vector<CycloNum> entries) {
  CMat m(n, n);
  m.a = std::move(entries);
  return m;
}

ReflectionGroup get(const std::string& name) {
  return ReflectionGroup::build(load_group_entry(name));
}

std::vector<long> char_degrees(const ReflectionGroup& w) {
  std::vector<long> d;
  for (long r = 0; r < w.chars().rows(); ++r) d.push_back(w.chars().degree(r));
  std::sort(d.begin(), d.end());
  return d;
}

LaurentX xpow(long k) { return LaurentX::x(k); }

}  // namespace

TEST_CASE("exact linear algebra") {
  CMat m = mat(2, {CycloNum(1), CycloNum(2), CycloNum(3), CycloNum(4)});
  CHECK(cmat_det(m) == CycloNum(-2));
  CHECK(cmat_rank(m) == 2);
  CHECK(cmat_trace(m) == CycloNum(5));

  CMat sing = mat(2, {CycloNum(1), CycloNum(2), CycloNum(2), CycloNum(4)});
  CHECK(cmat_rank(sing) == 1);
  auto ker = cmat_kernel(sing);
  REQUIRE(ker.size() == 1);
  CHECK(cmat_vec(sing, ker[0]) == std::vector<CycloNum>{CycloNum(0), CycloNum(0)});

  // det(1 - x*diag(z3, z3^2)) = 1 + x + x^2
  CMat d = mat(2, {z(3), CycloNum(0), CycloNum(0), z(3, 2)});
  CHECK(char_det(d).str() == "x^2+x+1");

  auto sol = cmat_solve(m, {CycloNum(5), CycloNum(11)});
  REQUIRE(sol.has_value());
  CHECK(cmat_vec(m, *sol) == std::vector<CycloNum>{CycloNum(5), CycloNum(11)});
  CHECK(!cmat_solve(sing, {CycloNum(1), CycloNum(0)}).has_value());
}

TEST_CASE("finite group from permutations") {
  // S3 on 3 points
  FiniteGroup s3 = FiniteGroup::from_perms(3, {{1, 0, 2}, {0, 2, 1}});
  CHECK(s3.size() == 6);
  CHECK(s3.class_count() == 3);
  CHECK(!s3.is_abelian());
  std::vector<long> sizes;
  for (long c = 0; c < 3; ++c) sizes.push_back(s3.class_size(c));
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<long>{1, 2, 3});

  CharTable t = CharTable::build(s3);
  CHECK(t.rows() == 3);
  CHECK(t.degree(0) == 1);
  CHECK(t.degree(2) == 2);

  // closure under too many commuting transpositions exceeds the cap
  std::vector<std::vector<int>> gens;
  for (int i = 0; i < 14; ++i) {
    std::vector<int> p(28);
    for (int j = 0; j < 28; ++j) p[static_cast<size_t>(j)] = j;
    std::swap(p[static_cast<size_t>(2 * i)], p[static_cast<size_t>(2 * i + 1)]);
    gens.push_back(std::move(p));
  }
  CHECK_THROWS_AS(FiniteGroup::from_perms(28, gens), OrderCapExceeded);
}

TEST_CASE("frobenius group of order 21") {
  // C7 : C3 acting by multiplication by 2
  std::vector<int> cyc(7), dbl(7);
  for (int i = 0; i < 7; ++i) {
    cyc[static_cast<size_t>(i)] = (i + 1) % 7;
    dbl[static_cast<size_t>(i)] = 2 * i % 7;
  }
  FiniteGroup f21 = FiniteGroup::from_perms(7, {cyc, dbl});
  REQUIRE(f21.size() == 21);
  CHECK(f21.class_count() == 5);

  CharTable t = CharTable::build(f21);
  std::vector<long> degs;
  for (long r = 0; r < 5; ++r) degs.push_back(t.degree(r));
  std::sort(degs.begin(), degs.end());
  CHECK(degs == std::vector<long>{1, 1, 1, 3, 3});

  // the two degree-3 rows take the Gauss sum values (-1 +- sqrt(-7))/2
  // on the order-7 classes
  CycloNum eta = z(7, 1) + z(7, 2) + z(7, 4);
  long c7 = -1;
  for (long c = 0; c < 5; ++c)
    if (f21.element_order(f21.class_rep(c)) == 7 &&
        t.value(3, f21.class_rep(c)) == eta)
      c7 = c;
  if (c7 < 0)
    for (long c = 0; c < 5; ++c)
      if (f21.element_order(f21.class_rep(c)) == 7 &&
          t.value(4, f21.class_rep(c)) == eta)
        c7 = c;
  REQUIRE(c7 >= 0);
  long rep = f21.class_rep(c7);
  CHECK(((t.value(3, rep) == eta && t.value(4, rep) == eta.conj()) ||
         (t.value(4, rep) == eta && t.value(3, rep) == eta.conj())));
  CHECK(eta + eta.conj() == CycloNum(-1));
  CHECK(eta * eta.conj() == CycloNum(2));
}

TEST_CASE("cyclic mu3") {
  ReflectionGroup w = get("mu3");
  CHECK(w.size() == 3);
  CHECK(w.reflection_count() == 2);
  CHECK(w.degrees() == std::vector<long>{3});
  CHECK(w.chars().rows() == 3);
  CHECK(char_degrees(w) == std::vector<long>{1, 1, 1});
  // coinvariant algebra 1, x, x^2: det lands in degree 2, its inverse in 1
  CHECK(w.fake_degree(w.chars().trivial_row()).str() == "1");
  CHECK(w.fake_degree(w.det_row()).str() == "x^2");
  CHECK(w.poincare().str() == "x^2+x+1");
}

TEST_CASE("rank one and two Weyl groups") {
  ReflectionGroup a1 = get("A1");
  CHECK(a1.size() == 2);
  CHECK(a1.reflection_count() == 1);
  CHECK(a1.degrees() == std::vector<long>{2});
  CHECK(a1.fake_degree(a1.det_row()).str() == "x");

  ReflectionGroup a11 = get("A1A1");
  CHECK(a11.size() == 4);
  CHECK(a11.reflection_count() == 2);
  CHECK(a11.degrees() == std::vector<long>{2, 2});
  CHECK(char_degrees(a11) == std::vector<long>{1, 1, 1, 1});
  CHECK(a11.fake_degree(a11.det_row()).str() == "x^2");

  ReflectionGroup a2 = get("A2");
  CHECK(a2.size() == 6);
  CHECK(a2.group().class_count() == 3);
  CHECK(a2.reflection_count() == 3);
  CHECK(a2.degrees() == std::vector<long>{2, 3});
  CHECK(char_degrees(a2) == std::vector<long>{1, 1, 2});
  CHECK(a2.fake_degree(a2.det_row()).str() == "x^3");
  long two = -1;
  for (long r = 0; r < 3; ++r)
    if (a2.chars().degree(r) == 2) two = r;
  CHECK(a2.fake_degree(two).str() == "x^2+x");
}

TEST_CASE("dihedral groups G(e,e,2)") {
  ReflectionGroup g332 = get("G332");
  CHECK(g332.size() == 6);
  CHECK(g332.group().class_count() == 3);
  CHECK(g332.reflection_count() == 3);
  CHECK(g332.degrees() == std::vector<long>{2, 3});
  CHECK(char_degrees(g332) == std::vector<long>{1, 1, 2});

  ReflectionGroup g552 = get("G552");
  CHECK(g552.size() == 10);
  CHECK(g552.reflection_count() == 5);
  CHECK(g552.degrees() == std::vector<long>{2, 5});
  CHECK(char_degrees(g552) == std::vector<long>{1, 1, 2, 2});

  ReflectionGroup g772 = get("G772");
  CHECK(g772.size() == 14);
  CHECK(g772.reflection_count() == 7);
  CHECK(g772.degrees() == std::vector<long>{2, 7});
  CHECK(char_degrees(g772) == std::vector<long>{1, 1, 2, 2, 2});

  // fake degrees of the odd dihedral groups: 1, x^e, x^i + x^{e-i}
  for (auto* wp : {&g332, &g552, &g772}) {
    const ReflectionGroup& w = *wp;
    long e = w.degrees()[1];
    std::vector<std::string> expect = {"1", "x^" + std::to_string(e)};
    for (long i = 1; 2 * i < e; ++i)
      expect.push_back("x^" + std::to_string(e - i) +
                       (i == 1 ? "+x" : "+x^" + std::to_string(i)));
    std::vector<std::string> got;
    for (long r = 0; r < w.chars().rows(); ++r)
      got.push_back(w.fake_degree(r).str());
    std::sort(got.begin(), got.end());
    std::sort(expect.begin(), expect.end());
    CHECK(got == expect);
  }
}

TEST_CASE("G(3,3,3)") {
  ReflectionGroup w = get("G333");
  CHECK(w.size() == 54);
  CHECK(w.reflection_count() == 9);
  CHECK(w.degrees() == std::vector<long>{3, 3, 6});
  CHECK(w.fake_degree(w.det_row()).str() == "x^9");
  CHECK(w.chars().degree(w.det_row()) == 1);

  // stabiliser of a generic vector is trivial
  std::vector<std::vector<CycloNum>> generic = {
      {CycloNum(1), CycloNum(5), CycloNum(25)}};
  CHECK(w.pointwise_stabilizer(generic) == std::vector<long>{0});
  CHECK(w.is_parabolic({0}));
}

TEST_CASE("B3") {
  ReflectionGroup w = get("B3");
  CHECK(w.size() == 48);
  CHECK(w.reflection_count() == 9);
  CHECK(w.degrees() == std::vector<long>{2, 4, 6});
  CHECK(char_degrees(w) == std::vector<long>{1, 1, 1, 1, 2, 2, 3, 3, 3, 3});
  CHECK(w.group().class_count() == 10);
  CHECK(w.fake_degree(w.det_row()).str() == "x^9");
}

TEST_CASE("coinvariant identities across the catalog") {
  for (const CatalogEntry& e : load_catalog()) {
    ReflectionGroup w = ReflectionGroup::build(e);
    // sum of phi(1) * f_phi is the Poincare polynomial
    LaurentX sum;
    for (long r = 0; r < w.chars().rows(); ++r)
      sum = sum + CycloNum(w.chars().degree(r)) * w.fake_degree(r);
    CHECK(sum == w.poincare());
    CHECK(w.fake_degree(w.chars().trivial_row()).str() == "1");
    // Poincare at 1 is |W|
    CHECK(w.poincare().eval_one() == CycloNum(w.size()));
    long n = 1;
    for (long d : w.degrees()) n *= d;
    CHECK(n == w.size());
  }
}

TEST_CASE("restriction multiplicities A2 over A1") {
  ReflectionGroup a2 = get("A2");
  Subgroup sub = make_subgroup(a2.group(), {a2.generator_elements()[0]});
  REQUIRE(sub.grp.size() == 2);
  CharTable subT = CharTable::build(sub.grp);
  long sgn = subT.trivial_row() == 0 ? 1 : 0;

  // sign restricts to sign
  auto m = a2.chars().restriction_mults(a2.det_row(), sub, subT);
  CHECK(m[static_cast<size_t>(sgn)] == 1);
  CHECK(m[static_cast<size_t>(subT.trivial_row())] == 0);
  // the reflection character restricts to trivial + sign
  long two = -1;
  for (long r = 0; r < 3; ++r)
    if (a2.chars().degree(r) == 2) two = r;
  m = a2.chars().restriction_mults(two, sub, subT);
  CHECK(m == std::vector<long>({1, 1}));
  // trivial multiplicity in the regular character
  CHECK(a2.chars().restriction_mults(two, sub, subT)[static_cast<size_t>(subT.trivial_row())] == 1);
}

TEST_CASE("parabolic subgroups of A2") {
  ReflectionGroup a2 = get("A2");
  long s = a2.generator_elements()[0];
  auto fs = a2.fixed_space({s});
  REQUIRE(fs.size() == 1);
  CHECK(cmat_vec(a2.matrix(s), fs[0]) == fs[0]);
  CHECK(a2.is_parabolic({0, s}));

  // the rotation subgroup is not parabolic
  long c = a2.group().mult(a2.generator_elements()[0], a2.generator_elements()[1]);
  CHECK(a2.group().element_order(c) == 3);
  CHECK(!a2.is_parabolic(a2.group().closure({c})));
  // the full group is the stabiliser of the zero space
  CHECK(a2.is_parabolic(a2.group().closure(a2.generator_elements())));
}

TEST_CASE("lattice rank mod ell") {
  ResidueEmbedding e7(7, 1);
  ReflectionGroup a2 = get("A2");
  CHECK(full_rank_mod_ell(a2, e7));
  ReflectionGroup g333 = get("G333");
  CHECK(full_rank_mod_ell(g333, e7));

  ResidueEmbedding e3(3, 1);
  ReflectionGroup a1 = get("A1");
  CHECK(full_rank_mod_ell(a1, e3));
  // 2 divides -1 - 1, so the stacked matrix loses rank mod 2
  ResidueEmbedding e2(2, 1);
  CHECK(!full_rank_mod_ell(a1, e2));
}

TEST_CASE("degenerate generator matrices are rejected") {
  CatalogEntry bad;
  bad.name = "bad";
  bad.rank = 2;
  bad.cyclo_order = 1;
  bad.flags = {"reflection_generators"};
  // a rotation moves two eigenvalues away from 1
  bad.generators = {mat(2, {CycloNum(0), CycloNum(1), CycloNum(-1), CycloNum(0)})};
  CHECK_THROWS_AS(ReflectionGroup::build(bad), NotReflectionGroup);

  CatalogEntry shear;
  shear.name = "shear";
  shear.rank = 2;
  shear.cyclo_order = 1;
  shear.flags = {"reflection_generators"};
  shear.generators = {mat(2, {CycloNum(1), CycloNum(1), CycloNum(0), CycloNum(1)})};
  CHECK_THROWS_AS(ReflectionGroup::build(shear), NotFinite);
}

TEST_CASE("catalog round trip is byte exact") {
  std::vector<CatalogEntry> cat = load_catalog();
  REQUIRE(!cat.empty());
  std::ifstream in(default_data_dir() + "/catalog.json", std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == catalog_to_json(cat));

  // generator matrices survive the trip exactly
  CatalogEntry g333 = load_group_entry("G333");
  CHECK(g333.generators[1].at(0, 1) == z(3, 2));
  CHECK(g333.generators[1].at(1, 0) == z(3));
  CHECK(g333.cyclo_order == 3);
}

TEST_CASE("molien series utilities") {
  // 1/(1-x)^2 = 1 + 2x + 3x^2 + ...
  LaurentX p = (LaurentX::monomial(CycloNum(1), 0) - xpow(1)) *
               (LaurentX::monomial(CycloNum(1), 0) - xpow(1));
  auto s = series_inverse(p, 6);
  for (long k = 0; k < 6; ++k) CHECK(s[static_cast<size_t>(k)] == CycloNum(k + 1));
  auto deg = peel_degrees(s, 2);
  CHECK(deg == std::vector<long>{1, 1});
}
