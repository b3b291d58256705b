#pragma once
// Rational functions in x with cyclotomic coefficients, kept as a reduced
// fraction of genuine polynomials: z == 1, no negative exponents, gcd 1,
// monic denominator.  Laurent inputs are cleared by a power of x.

#include <string>

#include "spets/laurent.hpp"

namespace spets {

class RatFun {
 public:
  RatFun() : num_(), den_(CycloNum(1L)) {}
  RatFun(const LaurentX& f);
  RatFun(const CycloNum& c) : RatFun(LaurentX(c)) {}
  RatFun(long n) : RatFun(LaurentX(n)) {}
  RatFun(const LaurentX& num, const LaurentX& den);

  const LaurentX& numerator() const { return num_; }
  const LaurentX& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const;
  // requires is_polynomial()
  LaurentX as_polynomial() const;

  RatFun operator-() const;
  RatFun operator+(const RatFun& o) const;
  RatFun operator-(const RatFun& o) const;
  RatFun operator*(const RatFun& o) const;
  RatFun operator/(const RatFun& o) const;
  RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
  RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
  RatFun& operator*=(const RatFun& o) { return *this = *this * o; }
  RatFun& operator/=(const RatFun& o) { return *this = *this / o; }
  bool operator==(const RatFun& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFun& o) const { return !(*this == o); }

  // value at x = q; DivisionByZero when the denominator vanishes there
  CycloNum evaluate(const mpq_class& q) const;
  CycloNum evaluate_at(const CycloNum& c) const;

  std::string str(const std::string& var = "x") const;

 private:
  void reduce();

  LaurentX num_, den_;
};

}  // namespace spets
