#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "spets/errors.hpp"
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

std::vector<std::vector<long>> orbit_sets(const Torus& t) {
  std::vector<std::vector<long>> out;
  for (long i = 0; i < t.orbit_count(); ++i) out.push_back(t.orbit(i).points);
  std::sort(out.begin(), out.end());
  return out;
}

// per-flat point tallies by exact stabiliser, brute force
std::vector<mpz_class> tally_by_flat(const Torus& t) {
  std::vector<mpz_class> got(t.flats().size(), 0);
  for (long p = 0; p < t.point_count(); ++p) {
    std::vector<long> stab = t.stabilizer(t.point(p));
    long hit = -1;
    for (size_t f = 0; f < t.flats().size(); ++f)
      if (t.flats()[f].stab == stab) {
        REQUIRE(hit == -1);
        hit = static_cast<long>(f);
      }
    REQUIRE(hit >= 0);
    ++got[static_cast<size_t>(hit)];
  }
  return got;
}

std::vector<long> fit_of(const Torus& t, long flat_index) {
  OsFit f = os_fit(t.flats(), flat_index, t.ell(), t.level());
  REQUIRE(f.ok);
  return f.b;
}

// ascending list of b-vectors over all flats
std::vector<std::vector<long>> all_fits(const Torus& t) {
  std::vector<std::vector<long>> out;
  for (size_t f = 0; f < t.flats().size(); ++f)
    out.push_back(fit_of(t, static_cast<long>(f)));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("rank one tori") {
  SUBCASE("multiplicative orbits mod 7") {
    Torus t = make("mu3", 7, 1);
    CHECK(t.modulus() == 7);
    CHECK(t.point_count() == 7);
    CHECK(t.coprime());
    std::vector<std::vector<long>> want = {{0}, {1, 2, 4}, {3, 5, 6}};
    CHECK(orbit_sets(t) == want);
    CHECK(t.orbit(t.orbit_of(0)).stab.size() == 3);
    CHECK(t.orbit(t.orbit_of(1)).stab == std::vector<long>{0});
  }
  SUBCASE("sign action mod 9") {
    Torus t = make("A1", 3, 2);
    CHECK(t.modulus() == 9);
    CHECK(t.point_count() == 9);
    std::vector<std::vector<long>> want = {{0}, {1, 8}, {2, 7}, {3, 6}, {4, 5}};
    CHECK(orbit_sets(t) == want);
    // the nontrivial element negates
    CHECK(t.act_point(1, {2}) == std::vector<long>{7});
    CHECK(t.act_dual(1, {4}) == std::vector<long>{5});
  }
}

TEST_CASE("rank three census mod 7") {
  Torus t = make("G333", 7, 1);
  CHECK(t.point_count() == 343);
  CHECK(t.coprime());

  // 12 lines, 9 hyperplanes, the origin, the ambient space
  std::map<long, long> flats_by_dim;
  for (const auto& f : t.flats()) ++flats_by_dim[f.dim];
  CHECK(flats_by_dim == std::map<long, long>{{0, 1}, {1, 12}, {2, 9}, {3, 1}});

  // stabiliser-order histogram over all points: 1 fixed, 72 on lines,
  // 216 on single hyperplanes, 54 free
  std::map<size_t, long> hist;
  long total = 0;
  for (long i = 0; i < t.orbit_count(); ++i) {
    const auto& o = t.orbit(i);
    CHECK(o.stab.size() * o.points.size() == 54);
    hist[o.stab.size()] += static_cast<long>(o.points.size());
    total += static_cast<long>(o.points.size());
  }
  CHECK(total == 343);
  CHECK(hist == std::map<size_t, long>{{54, 1}, {6, 72}, {2, 216}, {1, 54}});

  // per-copy counts from the lattice match brute enumeration
  std::vector<mpz_class> counted = tally_by_flat(t);
  CHECK(counted == t.counts());
  for (size_t f = 0; f < t.flats().size(); ++f) {
    long dim = t.flats()[f].dim;
    mpz_class want = dim == 3 ? 54 : dim == 2 ? 24 : dim == 1 ? 6 : 1;
    CHECK(counted[f] == want);
  }
}

TEST_CASE("characters ride along with points") {
  for (const auto& [name, ell, a] :
       std::vector<std::tuple<std::string, long, long>>{
           {"mu3", 7, 1}, {"A1", 3, 2}, {"A2", 7, 1}, {"G552", 11, 1}, {"G333", 7, 1}}) {
    CAPTURE(name);
    Torus t = make(name, ell, a);
    const ReflectionGroup& w = t.group();

    // zero goes to the trivial character
    CHECK(t.char_of(0) == std::vector<long>(static_cast<size_t>(t.rank()), 0));
    CHECK(t.point_of_char(t.char_of(0)) == 0);

    std::set<long> seen;
    for (long p = 0; p < t.point_count(); ++p) {
      std::vector<long> d = t.char_of(p);
      // bijective, stabiliser-preserving, equivariant for every generator
      CHECK(seen.insert(t.index_of(d)).second);
      CHECK(t.point_of_char(d) == p);
      CHECK(t.dual_stabilizer(d) == t.stabilizer(t.point(p)));
      for (long g : w.generator_elements())
        CHECK(t.char_of(t.index_of(t.act_point(g, t.point(p)))) == t.act_dual(g, d));
    }

    // the pairing is invariant: theta^w(t^w) = theta(t)
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> pe(0, w.size() - 1), pp(0, t.point_count() - 1);
    for (int i = 0; i < 50; ++i) {
      long e = pe(rng);
      std::vector<long> d = t.point(pp(rng)), x = t.point(pp(rng));
      CHECK(t.char_value(t.act_dual(e, d), t.act_point(e, x)) == t.char_value(d, x));
    }

    // stabilisers move by conjugation
    for (int i = 0; i < 20; ++i) {
      long e = pe(rng);
      std::vector<long> x = t.point(pp(rng));
      std::vector<long> moved;
      for (long s : t.stabilizer(x))
        moved.push_back(w.group().mult(w.group().mult(w.group().inverse(e), s), e));
      std::sort(moved.begin(), moved.end());
      CHECK(t.stabilizer(t.act_point(e, x)) == moved);
    }
  }
}

TEST_CASE("point counts fit products of cyclotomic shifts") {
  SUBCASE("rank one") {
    Torus t = make("mu3", 7, 1);
    std::vector<std::vector<long>> want = {{}, {1}};
    CHECK(all_fits(t) == want);
  }
  SUBCASE("dihedral") {
    for (const auto& [name, ell, e] :
         std::vector<std::tuple<std::string, long, long>>{
             {"G332", 7, 3}, {"G552", 11, 5}, {"G772", 29, 7}}) {
      CAPTURE(name);
      Torus t = make(name, ell, 1);
      std::vector<std::vector<long>> want = {{}, {1, e - 1}};
      for (long i = 0; i < e; ++i) want.push_back({1});
      std::sort(want.begin(), want.end());
      CHECK(all_fits(t) == want);
      // the free count is (q-1)(q+1-e) with q-1 = ell
      mpz_class free = t.counts()[0];
      CHECK(free == mpz_class((ell - 1) * (ell + 1 - e)));
    }
  }
  SUBCASE("rank three") {
    Torus t = make("G333", 7, 1);
    std::vector<std::vector<long>> want = {{}, {1, 4, 4}};
    for (long i = 0; i < 12; ++i) want.push_back({1});
    for (long i = 0; i < 9; ++i) want.push_back({1, 3});
    std::sort(want.begin(), want.end());
    CHECK(all_fits(t) == want);
  }
  SUBCASE("fits do not depend on the level") {
    for (long a = 1; a <= 3; ++a) {
      ResidueEmbedding emb(7, a);
      auto flats = arrangement_flats(get("mu3"));
      CHECK(os_fit(flats, 0, 7, a).b == std::vector<long>{1});
    }
    auto flats = arrangement_flats(get("G552"));
    CHECK(os_fit(flats, 0, 11, 2).b == os_fit(flats, 0, 11, 1).b);
  }
  SUBCASE("counts telescope to the full torus") {
    for (const std::string& name : {"A2", "G333", "B3"}) {
      auto flats = arrangement_flats(get(name));
      long n = flats[0].dim;
      for (long alpha = 1; alpha <= 3; ++alpha) {
        mpz_class sum = 0, want;
        for (const auto& m : flat_counts(flats, 5, alpha)) sum += m;
        mpz_class base = 5;
        mpz_pow_ui(want.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(alpha * n));
        CHECK(sum == want);
      }
    }
  }
}

TEST_CASE("modular torus without coprimality") {
  Torus t = make("A2", 3, 1);
  CHECK_FALSE(t.coprime());
  CHECK(t.point_count() == 9);
  long total = 0;
  for (long i = 0; i < t.orbit_count(); ++i) {
    const auto& o = t.orbit(i);
    CHECK(o.stab.size() * o.points.size() == 6);
    total += static_cast<long>(o.points.size());
  }
  CHECK(total == 9);
  // the invariant line mod 3 is fixed by the whole group
  CHECK(t.stabilizer({1, 2}).size() == 6);
  CHECK(t.stabilizer({2, 1}).size() == 6);
}

TEST_CASE("torus construction guards") {
  ResidueEmbedding shallow(7, 1);
  CHECK_THROWS_AS(Torus::build(get("mu3"), 7, 2, shallow), DataValidation);
  ResidueEmbedding wrong(5, 1);
  CHECK_THROWS_AS(Torus::build(get("mu3"), 7, 1, wrong), DataValidation);
  ResidueEmbedding deep(3, 15);
  CHECK_THROWS_AS(Torus::build(get("A1"), 3, 15, deep), OrderCapExceeded);
}
