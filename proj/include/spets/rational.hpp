#pragma once
// Small helpers around GMP rationals and integers.

#include <gmpxx.h>

#include <optional>
#include <string>

#include "spets/errors.hpp"

namespace spets {

// valuation of zero (and of the zero cyclotomic number)
inline constexpr long kValInfinity = 1L << 40;

inline mpq_class parse_rational(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw ParseError("bad rational: " + s);
  q.canonicalize();
  return q;
}

inline std::string rat_str(const mpq_class& q) { return q.get_str(); }

// nu_p of a rational; p prime
inline long val_p(const mpq_class& q, long p) {
  if (q == 0) return kValInfinity;
  mpz_class scratch;
  long vn = static_cast<long>(mpz_remove(scratch.get_mpz_t(), q.get_num().get_mpz_t(),
                                         mpz_class(p).get_mpz_t()));
  long vd = static_cast<long>(mpz_remove(scratch.get_mpz_t(), q.get_den().get_mpz_t(),
                                         mpz_class(p).get_mpz_t()));
  return vn - vd;
}

inline mpq_class pow_rational(const mpq_class& q, long e) {
  if (e == 0) return mpq_class(1);
  mpq_class base = q;
  bool neg = e < 0;
  unsigned long k = neg ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  mpq_class r;
  mpz_pow_ui(r.get_num().get_mpz_t(), base.get_num().get_mpz_t(), k);
  mpz_pow_ui(r.get_den().get_mpz_t(), base.get_den().get_mpz_t(), k);
  r.canonicalize();
  if (neg) {
    if (r == 0) throw DivisionByZero("0^negative");
    r = 1 / r;
  }
  return r;
}

// exact z-th root of a rational if one exists (q > 0, z >= 1)
inline std::optional<mpq_class> rational_root(const mpq_class& q, long z) {
  if (z == 1) return q;
  if (q <= 0) return std::nullopt;
  mpz_class rn, rd;
  int exact_n = mpz_root(rn.get_mpz_t(), q.get_num().get_mpz_t(), static_cast<unsigned long>(z));
  int exact_d = mpz_root(rd.get_mpz_t(), q.get_den().get_mpz_t(), static_cast<unsigned long>(z));
  if (!exact_n || !exact_d) return std::nullopt;
  mpq_class r(rn, rd);
  r.canonicalize();
  return r;
}

inline mpz_class pow_mod(mpz_class base, mpz_class exp, const mpz_class& mod) {
  mpz_class r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return r;
}

inline std::optional<mpz_class> inv_mod(const mpz_class& a, const mpz_class& mod) {
  mpz_class r;
  if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t())) return std::nullopt;
  return r;
}

inline long gcd_long(long a, long b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline long lcm_long(long a, long b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd_long(a, b) * b;
}

}  // namespace spets
