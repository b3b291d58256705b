#pragma once
// Reduction of cyclotomic numbers into Z/ell^a.  Tame roots of unity map
// through a fixed Teichmueller-style lift of the smallest primitive root;
// square roots of registered discriminants get explicit residue roots.
// Every root choice is recorded so reports can state which embedding was
// used.

#include <string>
#include <vector>

#include "spets/cyclo.hpp"

namespace spets {

struct ResidueRoot {
  std::string poly;    // minimal polynomial over Z, variable t
  long choice;         // index among admissible roots, by the stated rule
  std::string value;   // decimal residue
};

class ResidueEmbedding {
 public:
  ResidueEmbedding(long ell, long a);

  long ell() const { return ell_; }
  long level() const { return a_; }
  const mpz_class& modulus() const { return mod_; }
  // the fixed unit of order ell^{a-1}(ell-1); ell odd only
  const mpz_class& omega() const;

  // d = p or -p for an odd prime p, d = 1 mod 4.  Chooses the smallest
  // residue root of t^2 - d (for ell = 2 additionally = 1 mod 4) and, at
  // ell = 2, the unit root of t^2 - t + (1-d)/4 for half-integral values.
  void register_sqrt(long d);

  // residue of c in [0, modulus); BadDenominator when a coordinate
  // denominator meets ell, MissingRoot when no registered image exists
  mpz_class reduce(const CycloNum& c) const;

  const std::vector<ResidueRoot>& root_report() const { return roots_; }

 private:
  mpz_class reduce_rational(const mpq_class& q) const;

  struct QuadRoot {
    long d;
    CycloNum sqrt_d;   // Gauss sum representation inside Q(zeta_p)
    mpz_class y;       // residue of sqrt(d)
    mpz_class w;       // residue of (1+sqrt(d))/2, ell = 2 only
  };

  long ell_, a_;
  mpz_class mod_;
  mpz_class omega_;
  std::vector<QuadRoot> quads_;
  std::vector<ResidueRoot> roots_;
};

inline mpz_class reduce_mod(const CycloNum& c, const ResidueEmbedding& emb) {
  return emb.reduce(c);
}

}  // namespace spets
