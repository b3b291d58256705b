// Regenerates data/catalog.json from the generator models below.  The
// shipped file is the verbatim output of this tool, so the round-trip
// test in test_group stays byte-exact.
//
//   ./build/make_catalog [path]

#include <fstream>
#include <iostream>
#include <vector>

#include "spets/reflgroup.hpp"

using namespace spets;

namespace {

CycloNum z(long m, long k = 1) { return CycloNum::root_of_unity(m, k); }

CMat mat(long n, std::vector<CycloNum> entries) {
  CMat m(n, n);
  m.a = std::move(entries);
  return m;
}

CatalogEntry entry(std::string name, long rank, long m, std::vector<CMat> gens) {
  CatalogEntry e;
  e.name = std::move(name);
  e.rank = rank;
  e.cyclo_order = m;
  e.generators = std::move(gens);
  e.flags = {"reflection_generators"};
  return e;
}

// G(e,e,2): the swap and its twist by diag(zeta_e, zeta_e^-1)
CatalogEntry dihedral(std::string name, long e) {
  CycloNum o(1), l(0);
  return entry(std::move(name), 2, e,
               {mat(2, {l, o, o, l}), mat(2, {l, z(e, e - 1), z(e, 1), l})});
}

}  // namespace

int main(int argc, char** argv) {
  CycloNum o(1), l(0);
  std::vector<CatalogEntry> cat;

  cat.push_back(entry("mu3", 1, 3, {mat(1, {z(3)})}));
  cat.push_back(entry("A1", 1, 1, {mat(1, {CycloNum(-1)})}));
  cat.push_back(entry("A1A1", 2, 1,
                      {mat(2, {CycloNum(-1), l, l, o}),
                       mat(2, {o, l, l, CycloNum(-1)})}));
  cat.push_back(entry("A2", 2, 1,
                      {mat(2, {CycloNum(-1), o, l, o}),
                       mat(2, {o, l, o, CycloNum(-1)})}));
  cat.push_back(dihedral("G332", 3));
  cat.push_back(dihedral("G552", 5));
  cat.push_back(dihedral("G772", 7));
  cat.push_back(entry("G333", 3, 3,
                      {mat(3, {l, o, l, o, l, l, l, l, o}),
                       mat(3, {l, z(3, 2), l, z(3, 1), l, l, l, l, o}),
                       mat(3, {o, l, l, l, l, o, l, o, l})}));
  cat.push_back(entry("B3", 3, 1,
                      {mat(3, {l, o, l, o, l, l, l, l, o}),
                       mat(3, {o, l, l, l, l, o, l, o, l}),
                       mat(3, {o, l, l, l, o, l, l, l, CycloNum(-1)})}));

  std::string path = argc > 1 ? argv[1] : "data/catalog.json";
  std::ofstream out(path);
  if (!out) {
    std::cerr << "cannot write " << path << "\n";
    return 1;
  }
  out << catalog_to_json(cat);
  std::cout << "wrote " << cat.size() << " groups to " << path << "\n";
  return 0;
}
