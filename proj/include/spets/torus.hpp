#pragma once
// The finite torus (Z/ell^a)^n with the reflection group acting through a
// residue embedding: orbits, stabilisers, the equivariant identification
// of points with characters, and stabiliser-resolved point counts with
// their product-form fits.

#include <string>
#include <vector>

#include "spets/reflgroup.hpp"
#include "spets/residue.hpp"

namespace spets {

// a fixed subspace in the reflection arrangement's intersection lattice,
// together with its pointwise stabiliser and the flats strictly below it
struct Flat {
  std::vector<std::vector<CycloNum>> basis;  // canonical echelon rows
  long dim = 0;
  std::vector<long> stab;       // sorted element list
  std::vector<long> below;      // indices of strictly contained flats
};

// every intersection of reflection hyperplanes, the full space first;
// index 0 is the ambient space when rank > 0
std::vector<Flat> arrangement_flats(const ReflectionGroup& w);

// points of (Z/ell^alpha)^n whose stabiliser is exactly the flat's, one
// entry per flat, by downward inclusion-exclusion over the lattice
std::vector<mpz_class> flat_counts(const std::vector<Flat>& flats, long ell, long alpha);

// integers b_i with count = prod_i (ell^alpha - b_i), dim-many factors,
// solved at levels a and a+1 and verified at a+2
struct OsFit {
  bool ok = false;
  std::vector<long> b;          // ascending
  std::string note;             // diagnostic when not ok or ambiguous
};
OsFit os_fit(const std::vector<Flat>& flats, long flat_index, long ell, long a);

struct TorusOrbit {
  std::vector<long> points;     // sorted point indices; points[0] is the rep
  std::vector<long> stab;       // stabiliser of the rep, sorted elements
};

class Torus {
 public:
  // emb must have ell matching and level at least a
  static Torus build(const ReflectionGroup& w, long ell, long a, ResidueEmbedding& emb);

  const ReflectionGroup& group() const { return w_; }
  long ell() const { return ell_; }
  long level() const { return a_; }
  long modulus() const { return q_; }
  long rank() const { return n_; }
  bool coprime() const { return coprime_; }
  long point_count() const { return npts_; }
  // point index <-> coordinate vector, little-endian base q
  long index_of(const std::vector<long>& t) const;
  std::vector<long> point(long idx) const;

  // t^w and the matching action on character coordinates; both are right
  // actions and the pairing <d, t> is preserved jointly
  std::vector<long> act_point(long welem, const std::vector<long>& t) const;
  std::vector<long> act_dual(long welem, const std::vector<long>& d) const;
  // zeta_{q}^{<dual, t>}
  CycloNum char_value(const std::vector<long>& dual, const std::vector<long>& t) const;

  std::vector<long> stabilizer(const std::vector<long>& t) const;
  std::vector<long> dual_stabilizer(const std::vector<long>& d) const;

  long orbit_count() const { return static_cast<long>(orbits_.size()); }
  const TorusOrbit& orbit(long i) const { return orbits_[static_cast<size_t>(i)]; }
  long orbit_of(long point_idx) const { return orbit_of_[static_cast<size_t>(point_idx)]; }
  long dual_orbit_count() const { return static_cast<long>(dual_orbits_.size()); }
  const TorusOrbit& dual_orbit(long i) const { return dual_orbits_[static_cast<size_t>(i)]; }
  long dual_orbit_of(long idx) const { return dual_orbit_of_[static_cast<size_t>(idx)]; }

  // character coordinates identified with each point, equivariantly and
  // stabiliser-preservingly
  const std::vector<long>& char_of(long point_idx) const {
    return hat_[static_cast<size_t>(point_idx)];
  }
  // inverse of char_of, as a point index
  long point_of_char(const std::vector<long>& d) const;

  // exact per-flat counts at this level, matching flat_counts
  const std::vector<Flat>& flats() const { return flats_; }
  std::vector<mpz_class> counts() const { return flat_counts(flats_, ell_, a_); }

 private:
  explicit Torus(ReflectionGroup w) : w_(std::move(w)) {}
  void enumerate_orbits();
  void build_hat();

  ReflectionGroup w_;
  long ell_ = 0, a_ = 0, q_ = 0, n_ = 0;
  long npts_ = 0;
  bool coprime_ = false;
  std::vector<std::vector<long>> red_;   // per element, row-major n*n mod q
  std::vector<TorusOrbit> orbits_, dual_orbits_;
  std::vector<int> orbit_of_, dual_orbit_of_;
  std::vector<std::vector<long>> hat_;   // per point index, dual coords
  std::vector<long> hat_inv_;            // dual index -> point index
  std::vector<Flat> flats_;
};

}  // namespace spets
