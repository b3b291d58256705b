#pragma once
// Laurent polynomials in x^{1/z} with cyclotomic coefficients.  Terms are
// keyed by exponent numerator over a common denominator z; canonical form
// stores no zero coefficients and divides out gcd(exponents, z).

#include <map>
#include <string>
#include <vector>

#include "spets/cyclo.hpp"

namespace spets {

class LaurentX {
 public:
  LaurentX() : z_(1) {}
  LaurentX(const CycloNum& c);
  LaurentX(long n) : LaurentX(CycloNum(n)) {}
  LaurentX(const mpq_class& q) : LaurentX(CycloNum(q)) {}

  // c * x^{num/den}
  static LaurentX monomial(const CycloNum& c, long num, long den = 1);
  static LaurentX x(long exponent = 1) { return monomial(CycloNum(1L), exponent); }

  long z() const { return z_; }
  const std::map<long, CycloNum>& terms() const { return t_; }

  bool is_zero() const { return t_.empty(); }
  bool is_constant() const;
  CycloNum constant_value() const;  // requires is_constant()
  // true iff z == 1 and all exponents >= 0
  bool is_polynomial() const;
  // exponent range as rationals (num over z); zero polynomial -> {0,0}
  mpq_class min_exp() const;
  mpq_class max_exp() const;
  long term_count() const { return static_cast<long>(t_.size()); }

  LaurentX operator-() const;
  LaurentX operator+(const LaurentX& o) const;
  LaurentX operator-(const LaurentX& o) const;
  LaurentX operator*(const LaurentX& o) const;
  LaurentX& operator+=(const LaurentX& o) { return *this = *this + o; }
  LaurentX& operator-=(const LaurentX& o) { return *this = *this - o; }
  LaurentX& operator*=(const LaurentX& o) { return *this = *this * o; }
  bool operator==(const LaurentX& o) const { return z_ == o.z_ && t_ == o.t_; }
  bool operator!=(const LaurentX& o) const { return !(*this == o); }

  LaurentX pow(long k) const;  // k >= 0
  // substitute x -> x^k (k > 0), or with k < 0 the inversion x -> x^{k}
  LaurentX compose_power(long k) const;
  // coefficient of x^{num/den}
  CycloNum coefficient(long num, long den = 1) const;

  // value at x = q (rational), taking an exact z-th root of q when z > 1;
  // FractionalPower if none, DivisionByZero on negative exponents at q = 0
  CycloNum eval_rational(const mpq_class& q) const;
  // value at x = c for integral exponents only
  CycloNum eval(const CycloNum& c) const;
  // x = 1 specialisation: the coefficient sum
  CycloNum eval_one() const;
  // galois/conjugation applied to every coefficient
  LaurentX map_coeffs_galois(long m, long k) const;
  LaurentX conj_coeffs() const;

  // canonical display with the given variable name
  std::string str(const std::string& var = "x") const;

 private:
  void normalize();

  long z_;
  std::map<long, CycloNum> t_;
};

LaurentX operator*(const CycloNum& c, const LaurentX& f);

}  // namespace spets
