#include "spets/ratfun.hpp"

#include <vector>

#include "spets/errors.hpp"

namespace spets {

namespace {

// dense constant-first coefficients; invariant: no trailing zeros
using Poly = std::vector<CycloNum>;

void trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Poly poly_of(const LaurentX& f) {
  if (f.is_zero()) return {};
  if (f.z() != 1 || f.terms().begin()->first < 0)
    throw FractionalPower("not a polynomial: " + f.str());
  Poly p(static_cast<size_t>(f.terms().rbegin()->first) + 1);
  for (const auto& [e, c] : f.terms()) p[static_cast<size_t>(e)] = c;
  return p;
}

LaurentX laurent_of(const Poly& p) {
  LaurentX f;
  for (size_t i = 0; i < p.size(); ++i)
    f += LaurentX::monomial(p[i], static_cast<long>(i));
  return f;
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size(); ++j)
      if (!b[j].is_zero()) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

// a = q*b + r with deg r < deg b
std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
  if (b.empty()) throw DivisionByZero("polynomial division by zero");
  Poly q;
  if (a.size() < b.size()) return {q, a};
  q.assign(a.size() - b.size() + 1, CycloNum());
  CycloNum lead_inv = b.back().inverse();
  for (size_t i = a.size(); i-- >= b.size();) {
    if (a[i].is_zero()) {
      if (i == 0) break;
      continue;
    }
    CycloNum f = a[i] * lead_inv;
    q[i - b.size() + 1] = f;
    for (size_t j = 0; j < b.size(); ++j) a[i - b.size() + 1 + j] -= f * b[j];
    a[i] = CycloNum();
    if (i == 0) break;
  }
  trim(a);
  trim(q);
  return {q, a};
}

Poly make_monic(Poly p) {
  if (p.empty()) return p;
  CycloNum inv = p.back().inverse();
  for (auto& c : p) c *= inv;
  return p;
}

Poly gcd(Poly a, Poly b) {
  while (!b.empty()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a);
}

}  // namespace

RatFun::RatFun(const LaurentX& f) : RatFun(f, LaurentX(1)) {}

RatFun::RatFun(const LaurentX& num, const LaurentX& den) {
  if (num.z() != 1 || den.z() != 1)
    throw FractionalPower("fractional exponents in a rational function");
  long shift = 0;
  if (!num.is_zero()) shift = -num.terms().begin()->first;
  if (!den.is_zero()) shift = std::max(shift, -den.terms().begin()->first);
  if (shift < 0) shift = 0;
  LaurentX xs = LaurentX::x(shift);
  num_ = num * xs;
  den_ = den * xs;
  reduce();
}

void RatFun::reduce() {
  if (den_.is_zero()) throw DivisionByZero("zero denominator");
  if (num_.is_zero()) {
    den_ = LaurentX(1);
    return;
  }
  Poly n = poly_of(num_), d = poly_of(den_);
  Poly g = gcd(n, d);
  if (g.size() > 1) {
    n = divmod(n, g).first;
    d = divmod(d, g).first;
  }
  CycloNum lead_inv = d.back().inverse();
  for (auto& c : n) c *= lead_inv;
  for (auto& c : d) c *= lead_inv;
  num_ = laurent_of(n);
  den_ = laurent_of(d);
}

bool RatFun::is_polynomial() const { return den_ == LaurentX(1); }

LaurentX RatFun::as_polynomial() const {
  if (!is_polynomial()) throw DivisionByZero("not a polynomial: " + str());
  return num_;
}

RatFun RatFun::operator-() const {
  RatFun r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFun RatFun::operator+(const RatFun& o) const {
  return RatFun(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFun RatFun::operator-(const RatFun& o) const {
  return RatFun(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFun RatFun::operator*(const RatFun& o) const {
  return RatFun(num_ * o.num_, den_ * o.den_);
}

RatFun RatFun::operator/(const RatFun& o) const {
  if (o.is_zero()) throw DivisionByZero("division by zero rational function");
  return RatFun(num_ * o.den_, den_ * o.num_);
}

CycloNum RatFun::evaluate(const mpq_class& q) const {
  CycloNum d = den_.eval_rational(q);
  if (d.is_zero()) throw DivisionByZero("denominator vanishes at " + rat_str(q));
  return num_.eval_rational(q) / d;
}

CycloNum RatFun::evaluate_at(const CycloNum& c) const {
  CycloNum d = den_.eval(c);
  if (d.is_zero()) throw DivisionByZero("denominator vanishes");
  return num_.eval(c) / d;
}

std::string RatFun::str(const std::string& var) const {
  if (is_polynomial()) return num_.str(var);
  return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
}

}  // namespace spets
