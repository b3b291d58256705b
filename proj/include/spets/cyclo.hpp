#pragma once
// Exact elements of cyclotomic fields Q(zeta_m).  Coordinates live in the
// power basis {1, z, ..., z^{phi(m)-1}} reduced mod the m-th cyclotomic
// polynomial; this basis is an integral basis of Z[zeta_m], so integrality
// and ell-divisibility are coordinatewise.  Mixed-order arithmetic promotes
// both operands to the lcm order via zeta_m = zeta_N^{N/m}.

#include <gmpxx.h>

#include <string>
#include <vector>

#include "spets/rational.hpp"

namespace spets {

long phi(long m);
// coefficients of Phi_m, constant term first, monic
const std::vector<mpq_class>& cyclotomic_poly(long m);

class CycloNum {
 public:
  CycloNum() : m_(1), c_(1, mpq_class(0)) {}
  CycloNum(const mpq_class& q) : m_(1), c_(1, q) {}
  CycloNum(long n) : m_(1), c_(1, mpq_class(n)) {}
  CycloNum(int n) : m_(1), c_(1, mpq_class(n)) {}

  // zeta_m^k
  static CycloNum root_of_unity(long m, long k = 1);
  // coeffs must have size phi(m) (already reduced)
  static CycloNum from_coeffs(long m, std::vector<mpq_class> coeffs);
  // arbitrary-degree polynomial in zeta_m, reduced here
  static CycloNum from_dense(long m, std::vector<mpq_class> dense);

  long order() const { return m_; }
  const std::vector<mpq_class>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational() const { return m_ == 1 || nonconst_all_zero(); }
  mpq_class rational_value() const;  // requires is_rational()

  CycloNum operator-() const;
  CycloNum operator+(const CycloNum& o) const;
  CycloNum operator-(const CycloNum& o) const;
  CycloNum operator*(const CycloNum& o) const;
  CycloNum operator/(const CycloNum& o) const;
  CycloNum& operator+=(const CycloNum& o) { return *this = *this + o; }
  CycloNum& operator-=(const CycloNum& o) { return *this = *this - o; }
  CycloNum& operator*=(const CycloNum& o) { return *this = *this * o; }
  bool operator==(const CycloNum& o) const;
  bool operator!=(const CycloNum& o) const { return !(*this == o); }

  CycloNum inverse() const;  // DivisionByZero on zero
  // zeta_m -> zeta_m^k, gcd(k, m) = 1
  CycloNum galois(long k) const;
  // complex conjugation zeta -> zeta^{-1}
  CycloNum conj() const { return galois(m_ == 1 ? 1 : m_ - 1); }
  // image under promotion to order N (m | N)
  CycloNum promoted(long N) const;
  // canonical minimal-order representative (smallest divisor d of m with
  // the value inside Q(zeta_d))
  CycloNum shrink() const;

  // algebraic integer test: integral coordinates
  bool is_integral() const;
  // min over coordinate valuations; kValInfinity for zero
  long ell_val(long ell) const;

  // canonical display, e.g. "2*z7^4+2*z7^2+2*z7+1", "-1/2", "z3"
  std::string str() const;

 private:
  CycloNum(long m, std::vector<mpq_class> c) : m_(m), c_(std::move(c)) {}
  bool nonconst_all_zero() const;

  long m_;
  std::vector<mpq_class> c_;
};

inline CycloNum operator+(long a, const CycloNum& b) { return CycloNum(a) + b; }
inline CycloNum operator-(long a, const CycloNum& b) { return CycloNum(a) - b; }
inline CycloNum operator*(long a, const CycloNum& b) { return CycloNum(a) * b; }

// true iff c / ell^k has algebraic-integer coordinates; NotIntegral if c is
// not an algebraic integer itself
bool ell_valuation(const CycloNum& c, long ell, long k);

}  // namespace spets
