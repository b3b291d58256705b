// Writes the bundled Schur element files for the dihedral and G(e,e,3)
// catalog entries.  Rows follow the character table; each Schur element
// is the Poincare polynomial divided by the fake degree, which pins the
// trivial row to Poincare and the determinant row to Poincare / x^N.
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "spets/hecke.hpp"
#include "spets/reflgroup.hpp"

using namespace spets;
using ojson = nlohmann::ordered_json;

static std::string label_for(const ReflectionGroup& w, long r,
                             std::map<std::string, long>& used) {
  long d = w.chars().degree(r);
  long b = w.fake_degree(r).terms().begin()->first;
  std::string base =
      "phi{" + std::to_string(d) + "," + std::to_string(b) + "}";
  long k = used[base]++;
  return base + std::string(static_cast<size_t>(k), '\'');
}

int main(int argc, char** argv) {
  std::string dir = argc > 1 ? argv[1] : "data";
  for (const std::string& name : {"G332", "G552", "G772", "G333"}) {
    ReflectionGroup w = ReflectionGroup::build(load_group_entry(name, dir));
    LaurentX P = w.poincare();
    SpecialisationMap sp = spetsial_specialisation(w);

    ojson root;
    root["group_type"] = name;
    root["z"] = sp.z;
    ojson params = ojson::array();
    for (const auto& u : sp.params.front()) params.push_back(u.str());
    root["parameters"] = params;

    ojson chars = ojson::array();
    std::map<std::string, long> used;
    for (long r = 0; r < w.chars().rows(); ++r) {
      const LaurentX& f = w.fake_degree(r);
      RatFun S(P, f);
      CycloNum at1 = S.evaluate(mpq_class(1));
      if (!(at1 * CycloNum(w.chars().degree(r)) == CycloNum(w.size()))) {
        std::cerr << name << " row " << r << " fails the x=1 law\n";
        return 1;
      }
      ojson c;
      c["label"] = label_for(w, r, used);
      c["num"] = S.numerator().str();
      c["den"] = S.denominator().str();
      c["z"] = 1;
      chars.push_back(c);
    }
    root["characters"] = chars;

    std::string path = dir + "/schur_" + name + ".json";
    std::ofstream out(path);
    if (!out) {
      std::cerr << "cannot write " << path << "\n";
      return 1;
    }
    out << root.dump(2) << "\n";
    std::cout << name << ": " << w.chars().rows() << " characters, N = "
              << w.reflection_count() << ", wrote " << path << "\n";
  }
  return 0;
}
