#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "spets/errors.hpp"
#include "spets/hecke.hpp"
#include "spets/parse.hpp"
#include "spets/reflgroup.hpp"
#include "spets/torus.hpp"

using namespace spets;

namespace {

ReflectionGroup get(const std::string& name) {
  return ReflectionGroup::build(load_group_entry(name));
}

Torus make(const std::string& name, long ell, long a) {
  ResidueEmbedding emb(ell, a);
  return Torus::build(get(name), ell, a, emb);
}

RatFun rf(const std::string& s) { return RatFun(parse_laurent(s)); }

RatFun rf2(const std::string& num, const std::string& den) {
  return RatFun(parse_laurent(num), parse_laurent(den));
}

}  // namespace

TEST_CASE("spetsial parameters") {
  auto a1 = get("A1");
  auto sp = spetsial_specialisation(a1);
  REQUIRE(sp.params.size() == 1);
  REQUIRE(sp.params[0].size() == 2);
  CHECK(sp.params[0][0] == LaurentX::x());
  CHECK(sp.params[0][1] == LaurentX(-1));
  CHECK(sp.z == 2);

  auto mu = spetsial_specialisation(get("mu3"));
  REQUIRE(mu.params.size() == 1);
  REQUIRE(mu.params[0].size() == 3);
  CHECK(mu.params[0][0] == LaurentX::x());
  CHECK(mu.params[0][1] == LaurentX(CycloNum::root_of_unity(3, 1)));
  CHECK(mu.params[0][2] == LaurentX(CycloNum::root_of_unity(3, 2)));
  CHECK(mu.z == 3);

  CHECK(spetsial_specialisation(get("A1A1")).params.size() == 2);
  CHECK(spetsial_specialisation(get("A1A1")).z == 2);
  CHECK(spetsial_specialisation(get("A2")).z == 1);
  CHECK(spetsial_specialisation(get("G552")).params.size() == 1);
  CHECK(spetsial_specialisation(get("G552")).z == 1);
  CHECK(spetsial_specialisation(get("G333")).params.size() == 1);
  CHECK(spetsial_specialisation(get("G333")).z == 3);
  CHECK(spetsial_specialisation(get("B3")).params.size() == 2);
  CHECK(spetsial_specialisation(get("B3")).z == 2);
}

TEST_CASE("cyclic closed forms") {
  auto a1 = get("A1");
  auto sa = schur_elements(a1);
  long tr = a1.chars().trivial_row();
  long sg = 1 - tr;
  CHECK(sa.schur[tr] == rf("x+1"));
  CHECK(sa.schur[sg] == rf2("x+1", "x"));
  CHECK(sa.schur[tr] / sa.schur[sg] == rf("x"));
  CHECK(sa.degree[tr] == rf("1"));
  CHECK(sa.degree[sg] == rf("x"));

  auto mu = get("mu3");
  auto sm = schur_elements(mu);
  long mtr = mu.chars().trivial_row();
  CHECK(sm.schur[mtr] == rf("x^2+x+1"));
  CHECK(sm.degree[mtr] == rf("1"));
  long gen = -1;
  for (long e = 1; e < 3; ++e)
    if (mu.group().element_order(e) == 3) {
      gen = e;
      break;
    }
  REQUIRE(gen > 0);
  for (long r = 0; r < 3; ++r) {
    if (r == mtr) continue;
    CHECK(sm.schur[r].evaluate(mpq_class(1)) == CycloNum(3));
    CycloNum v = mu.chars().value(r, gen);
    long j = v == CycloNum::root_of_unity(3, 1) ? 1 : 2;
    CHECK(v == CycloNum::root_of_unity(3, j));
    // degree x*(x - zeta^{-j}) / (1 - zeta^{-j})
    CycloNum w = CycloNum::root_of_unity(3, 3 - j);
    RatFun want(LaurentX::x() * (LaurentX::x() - LaurentX(w)),
                LaurentX(CycloNum(1) - w));
    CHECK(sm.degree[r] == want);
  }
  // the two nontrivial degrees multiply to x^2 (x^2+x+1) / 3
  RatFun prod(1);
  for (long r = 0; r < 3; ++r)
    if (r != mtr) prod *= sm.degree[r];
  CHECK(prod == rf2("x^4+x^3+x^2", "3"));
}

TEST_CASE("fake degree quotients") {
  auto a2 = get("A2");
  auto s2 = schur_elements(a2);
  for (long r = 0; r < 3; ++r) {
    if (r == a2.chars().trivial_row())
      CHECK(s2.degree[r] == rf("1"));
    else if (r == a2.det_row())
      CHECK(s2.degree[r] == rf("x^3"));
    else {
      CHECK(s2.degree[r] == rf("x^2+x"));
      CHECK(s2.schur[r] == rf2("x^2+x+1", "x"));
    }
  }

  auto aa = get("A1A1");
  auto saa = schur_elements(aa);
  std::multiset<std::string> degs;
  for (long r = 0; r < 4; ++r)
    degs.insert(saa.degree[r].numerator().str());
  CHECK(degs == std::multiset<std::string>({"1", "x", "x", "x^2"}));
  // the sign-by-sign character gets the square of the A1 sign element
  auto gens = aa.generator_elements();
  for (long r = 0; r < 4; ++r)
    if (aa.chars().value(r, gens[0]) == CycloNum(-1) &&
        aa.chars().value(r, gens[1]) == CycloNum(-1))
      CHECK(saa.schur[r] == rf2("x^2+2*x+1", "x^2"));

  auto g552 = get("G552");
  auto s5 = schur_elements(g552);
  std::multiset<std::string> two;
  for (long r = 0; r < 4; ++r) {
    CHECK(s5.degree[r] == RatFun(g552.fake_degree(r)));
    if (g552.chars().degree(r) == 2)
      two.insert(s5.degree[r].numerator().str());
  }
  CHECK(two == std::multiset<std::string>({"x^4+x", "x^3+x^2"}));

  auto g772 = get("G772");
  auto s7 = schur_elements(g772);
  std::multiset<std::string> sevens;
  for (long r = 0; r < 5; ++r)
    if (g772.chars().degree(r) == 2)
      sevens.insert(s7.degree[r].numerator().str());
  CHECK(sevens ==
        std::multiset<std::string>({"x^6+x", "x^5+x^2", "x^4+x^3"}));

  auto g333 = get("G333");
  auto s3 = schur_elements(g333);
  CHECK(s3.degree[g333.det_row()] == rf("x^9"));
  long twodims = 0;
  for (long r = 0; r < 10; ++r)
    if (g333.chars().degree(r) == 2) {
      CHECK(s3.degree[r] == rf("x^6+x^3"));
      ++twodims;
    }
  CHECK(twodims == 4);
}

TEST_CASE("value at one is the group order over the degree") {
  for (const std::string& name :
       {"mu3", "A1", "A1A1", "A2", "G332", "G552", "G772", "G333"}) {
    auto w = get(name);
    auto s = schur_elements(w);
    REQUIRE(static_cast<long>(s.schur.size()) == w.chars().rows());
    for (long r = 0; r < w.chars().rows(); ++r) {
      CHECK(s.schur[r].evaluate(mpq_class(1)) * CycloNum(w.chars().degree(r)) ==
            CycloNum(w.size()));
      CHECK(s.degree[r].evaluate(mpq_class(1)) ==
            CycloNum(w.chars().degree(r)));
    }
  }
}

TEST_CASE("providers refuse what they cannot serve") {
  auto b3 = get("B3");
  try {
    schur_elements(b3);
    CHECK(false);
  } catch (const NoProvider& e) {
    CHECK(std::string(e.what()).find("B3") != std::string::npos);
  }

  auto g552 = get("G552");
  CHECK_THROWS_AS(schur_elements(g552, "no_such_dir"), DataValidation);

  namespace fs = std::filesystem;
  fs::create_directories("tmp_hecke");
  {
    std::ofstream f("tmp_hecke/schur_G552.json");
    f << "{\"group_type\":\"G552\",\"z\":1,\"parameters\":[],"
         "\"characters\":[]}\n";
  }
  CHECK_THROWS_AS(schur_elements(g552, "tmp_hecke"), DataValidation);

  // corrupt one coefficient so the x=1 law fails
  {
    std::ifstream in(default_data_dir() + "/schur_G552.json");
    nlohmann::json root = nlohmann::json::parse(in);
    for (auto& c : root.at("characters"))
      if (c.at("num").get<std::string>() == "x^4+x^3+x^2+x+1") {
        c["num"] = "x^4+x^3+x^2+x+2";
        break;
      }
    std::ofstream f("tmp_hecke/schur_G552.json");
    f << root.dump() << "\n";
  }
  CHECK_THROWS_AS(schur_elements(g552, "tmp_hecke"), DataValidation);
}

TEST_CASE("stabiliser subgroups on the ambient space") {
  auto g552 = get("G552");
  Subgroup line = make_subgroup(g552.group(), {g552.reflections()[0]});
  CHECK(subgroup_degrees(g552, line) == std::vector<long>({1, 2}));
  CharTable lt = CharTable::build(line.grp);
  auto sl = subgroup_schur(g552, line, lt);
  long ltr = lt.trivial_row();
  CHECK(sl.degree[ltr] == rf("1"));
  CHECK(sl.degree[1 - ltr] == rf("x"));
  CHECK(sl.schur[ltr] == rf("x+1"));
  CHECK(index_xprime(g552, subgroup_degrees(g552, line)) ==
        rf("x^4+x^3+x^2+x+1"));

  Subgroup triv = make_subgroup(g552.group(), {0});
  CHECK(subgroup_degrees(g552, triv) == std::vector<long>({1, 1}));
  CharTable tt = CharTable::build(triv.grp);
  auto st = subgroup_schur(g552, triv, tt);
  CHECK(st.schur.size() == 1);
  CHECK(st.schur[0] == rf("1"));
  CHECK(index_xprime(g552, subgroup_degrees(g552, triv)) ==
        rf("x^5+2*x^4+2*x^3+2*x^2+2*x+1"));

  auto g333 = get("G333");
  auto gens = g333.generator_elements();
  Subgroup para = make_subgroup(g333.group(), {gens[0], gens[1]});
  REQUIRE(para.grp.size() == 6);
  CHECK(subgroup_degrees(g333, para) == std::vector<long>({1, 2, 3}));
  CharTable pt = CharTable::build(para.grp);
  auto sp = subgroup_schur(g333, para, pt);
  for (long r = 0; r < 3; ++r) {
    if (pt.degree(r) == 2) CHECK(sp.degree[r] == rf("x^2+x"));
  }

  // a cyclic rotation subgroup is not generated by reflections
  long rot = -1;
  std::set<long> refs(g333.reflections().begin(), g333.reflections().end());
  for (long e = 1; e < g333.size(); ++e)
    if (g333.group().element_order(e) == 3 && !refs.count(e)) {
      rot = e;
      break;
    }
  REQUIRE(rot > 0);
  Subgroup cyc = make_subgroup(g333.group(), {rot});
  CHECK_THROWS_AS(subgroup_degrees(g333, cyc), NoProvider);
}

TEST_CASE("block degrees over a coprime torus") {
  auto t1 = make("A1", 3, 1);
  CHECK(dim_block(t1) == rf("2*x^2+2*x+2"));
  CHECK(block_degrees(t1).labels.size() == 3);

  auto t2 = make("A1", 3, 2);
  RatFun d2 = dim_block(t2);
  CHECK(d2 == rf("5*x^2+8*x+5"));
  CHECK(d2.evaluate(mpq_class(4)) == CycloNum(117));
  CHECK(d2.evaluate(mpq_class(4)).ell_val(3) == 2);

  auto tm = make("mu3", 7, 1);
  RatFun dm = dim_block(tm);
  CHECK(block_degrees(tm).labels.size() == 5);
  RatFun p3 = rf("x^2+x+1");
  CHECK(dm == RatFun(1) + rf2("x^4+4*x^3+x^2", "3") + RatFun(2) * p3 * p3);
  CHECK(dm.evaluate(mpq_class(1)) == CycloNum(21));
  CycloNum at8 = dm.evaluate(mpq_class(8));
  CHECK(at8.rational_value() == mpq_class(38185, 3));
  CHECK(at8.ell_val(7) == 1);

  CHECK(dim_block(make("mu3", 7, 2)).evaluate(mpq_class(1)) == CycloNum(147));

  auto ta = make("A2", 7, 1);
  RatFun da = dim_block(ta);
  RatFun q = rf("x^2+x");
  RatFun want = RatFun(1) + q * q + rf("x^6") +
                RatFun(6) * rf("x^2+1") * p3 * p3 +
                RatFun(5) * rf("x+1") * rf("x+1") * p3 * p3;
  CHECK(da == want);
  CHECK(da.evaluate(mpq_class(1)) == CycloNum(294));
  CHECK(da.evaluate(mpq_class(8)) == CycloNum(4503884));
  CHECK(da.evaluate(mpq_class(8)).ell_val(7) == 2);

  // same dihedral group in its imprimitive coordinates, served from data
  auto tg = make("G332", 7, 1);
  CHECK(dim_block(tg) == da);

  auto t5 = make("G552", 11, 1);
  RatFun d5 = dim_block(t5);
  CHECK(block_degrees(t5).labels.size() == 31);
  CHECK(d5.evaluate(mpq_class(1)) == CycloNum(1210));
  CHECK(d5.evaluate(mpq_class(12)) == CycloNum(1409682832866L));
  CHECK(d5.evaluate(mpq_class(12)).ell_val(11) == 2);

  auto t7 = make("G772", 29, 1);
  RatFun d7 = dim_block(t7);
  CHECK(block_degrees(t7).labels.size() == 107);
  CHECK(d7.evaluate(mpq_class(1)) == CycloNum(11774));
  CHECK(d7.evaluate(mpq_class(30)).ell_val(29) == 2);

  auto t3 = make("G333", 7, 1);
  RatFun d3 = dim_block(t3);
  CHECK(block_degrees(t3).labels.size() == 51);
  CHECK(d3.evaluate(mpq_class(1)) == CycloNum(18522));
  CHECK(d3.evaluate(mpq_class(8)).ell_val(7) == 3);
}

TEST_CASE("block degree guards") {
  ResidueEmbedding e3(3, 1);
  Torus bad = Torus::build(get("A2"), 3, 1, e3);
  CHECK(!bad.coprime());
  CHECK_THROWS_AS(block_degrees(bad), DataValidation);

  auto tb = make("B3", 7, 1);
  CHECK_THROWS_AS(block_degrees(tb), NoProvider);
}
