#pragma once
// Dense exact linear algebra over cyclotomic numbers, sized for reflection
// representations of rank <= 4.

#include <optional>
#include <string>
#include <vector>

#include "spets/cyclo.hpp"
#include "spets/laurent.hpp"

namespace spets {

struct CMat {
  long rows = 0, cols = 0;
  std::vector<CycloNum> a;  // row-major

  CMat() = default;
  CMat(long r, long c) : rows(r), cols(c), a(static_cast<size_t>(r * c)) {}

  CycloNum& at(long i, long j) { return a[static_cast<size_t>(i * cols + j)]; }
  const CycloNum& at(long i, long j) const { return a[static_cast<size_t>(i * cols + j)]; }

  bool operator==(const CMat& o) const;
  bool operator!=(const CMat& o) const { return !(*this == o); }
};

CMat cmat_identity(long n);
CMat cmat_mul(const CMat& x, const CMat& y);
CMat cmat_sub(const CMat& x, const CMat& y);
CMat cmat_scale(const CycloNum& c, const CMat& x);
std::vector<CycloNum> cmat_vec(const CMat& x, const std::vector<CycloNum>& v);
CMat cmat_pow(const CMat& x, long k);

// canonical entrywise display, usable as a dictionary key
std::string cmat_key(const CMat& x);
std::string vec_key(const std::vector<CycloNum>& v);

CycloNum cmat_det(const CMat& x);
CycloNum cmat_trace(const CMat& x);

long cmat_rank(CMat x);
// basis of the right kernel, deterministic order
std::vector<std::vector<CycloNum>> cmat_kernel(const CMat& x);
// reduced row echelon form with zero rows dropped; canonical basis of the
// row space, so rref keys identify subspaces
CMat cmat_rref(CMat x);
// one solution of x * s = rhs, if any
std::optional<std::vector<CycloNum>> cmat_solve(const CMat& x, const std::vector<CycloNum>& rhs);

// det(1 - x*M) as a polynomial
LaurentX char_det(const CMat& m);

}  // namespace spets
