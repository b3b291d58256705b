#pragma once
// Deligne-Lusztig values at ell-elements and the characters assembled
// from them: order polynomials of sub-cosets, unipotent and almost
// character values through the uniform projection, scalar products with
// torus characters, and polynomial fits of those scalars across levels.

#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "spets/cyclo.hpp"
#include "spets/laurent.hpp"
#include "spets/linalg.hpp"
#include "spets/ratfun.hpp"
#include "spets/reflgroup.hpp"
#include "spets/torus.hpp"

namespace spets {

// reflection subgroup of the ambient group together with a twisting
// matrix normalising it.  The identity twist gives split sub-cosets;
// W_L = {1} with twist w gives the torus of w.
struct SubCoset {
  const ReflectionGroup* amb = nullptr;
  std::vector<long> elems;  // sorted element ids, identity included
  CMat twist;               // rows == 0 means identity
};

SubCoset split_coset(const ReflectionGroup& w, std::vector<long> elems);
SubCoset torus_coset(const ReflectionGroup& w, long elem);
// the stabiliser sub-coset of a torus point, split
SubCoset point_coset(const Torus& t, const std::vector<long>& at);

// matrix of the coset element indexed by v in elems
CMat coset_matrix(const SubCoset& c, long v);

struct OrderPoly {
  LaurentX value;
  // (-1)^{dim of the 1-eigenspace}; for a coset with several elements,
  // the value at maximal 1-eigenspace dimension (the split rank)
  int epsilon = 1;
};

// x^{N} times the reversed denominator of the coset Molien series,
// normalised by the square of the product of its unit coefficients
OrderPoly order_polynomial(const SubCoset& c);

// the order with its power of x removed
LaurentX xprime_part(const LaurentX& order);

// R_v(1) of the sub-coset: (-1)^n |L|_{x'} / det(1 - x v), which is the
// classical eta_v |L:T_v|_{x'} with eta_v = epsilon_L epsilon_{T_v} when
// v has a real characteristic polynomial; a torus contributes 1
LaurentX dl_degree_one(const SubCoset& L, long v);

// value of R_w at an ell-element with centraliser L: |C_W(w)| times the
// average over the class intersection with the coset of the R(1) of L.
// An empty intersection gives zero.
RatFun dl_value(long class_id, const SubCoset& L);

struct UnipotentChar {
  std::string label;
  std::map<long, CycloNum> mult;  // <chi, R_w> by ambient class id
  LaurentX degree;
};

// uniform projection value |W_L|^{-1} sum_v <chi,R_v> R_v(1) over the
// coset; MissingMultiplicity names a class the mult map lacks
RatFun unipotent_value(const UnipotentChar& chi, const SubCoset& L);

// value of the almost character of a character row at an ell-element
// with centraliser L: the graded multiplicity series of the restricted
// row in the coinvariant algebra of L on the ambient space
LaurentX almost_value(long phi_row, const SubCoset& L);

// per-flat sums of a level-a torus character over the points of tb whose
// stabiliser is exactly the flat's, indexed like tb.flats(); psi pairs
// through the reduction to level a
std::vector<CycloNum> psi_flat_sums(const Torus& tb,
                                    const std::vector<long>& psi, long a);

struct ScalarProduct {
  CycloNum value;
  bool integral = false;  // rational integer
};

// |T|^{-1} sum_t psi(t) f(q) with f the almost value at t, grouped over
// the arrangement flats; q must be an integer with ell^a dividing q-1
ScalarProduct almost_scalar(const Torus& t, long phi_row,
                            const std::vector<long>& psi,
                            const mpq_class& q);

// the grouped sum with prescribed per-flat psi-sums kept symbolic in x,
// divided by |T| = (x-1)^n
RatFun almost_scalar_symbolic(const Torus& t, long phi_row,
                              const std::vector<LaurentX>& psi_sums);

struct PolyFit {
  std::vector<CycloNum> values;   // scalar product per level in b_range
  std::vector<mpq_class> coeffs;  // ascending powers of y = ell^b
  long degree_bound = 0;
  bool integral = false;
  bool nonnegative = false;
  bool cross_validated = false;  // a held-out level was reproduced
  bool partial = false;          // no level was left over to hold out
};

// scalar products of the almost character with psi inflated from level a
// across the torus levels in b_range, at x = ell^b + 1, fitted by a
// polynomial in ell^b; InterpolationUnderdetermined when the range is
// shorter than the degree bound allows
PolyFit polynomiality_check(const ReflectionGroup& w, long ell, long a,
                            long phi_row, const std::vector<long>& psi,
                            const std::vector<long>& b_range);

// multiplicities <gamma_{1,phi}, R_v> for the coprime principal block:
// phi(v) on every class meeting a proper point stabiliser whose block
// degrees agree with its fake degrees, completed across the remaining
// classes by the family-constrained combination when that system has
// exactly one solution
struct PrincipalMult {
  std::map<long, CycloNum> mult;
  bool complete = false;
};

PrincipalMult principal_series_mult(const Torus& t, long phi_row,
                                    const std::string& data_dir = "");

// the same data bundled as a character, with the block degree; requires
// a complete multiplicity map
UnipotentChar principal_series_char(const Torus& t, long phi_row,
                                    const std::string& data_dir = "");

}  // namespace spets
