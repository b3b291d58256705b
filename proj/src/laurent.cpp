#include "spets/laurent.hpp"

#include <numeric>
#include <sstream>

#include "spets/errors.hpp"

namespace spets {

LaurentX::LaurentX(const CycloNum& c) : z_(1) {
  if (!c.is_zero()) t_[0] = c;
}

LaurentX LaurentX::monomial(const CycloNum& c, long num, long den) {
  LaurentX f;
  if (c.is_zero()) return f;
  f.z_ = den;
  f.t_[num] = c;
  f.normalize();
  return f;
}

void LaurentX::normalize() {
  for (auto it = t_.begin(); it != t_.end();)
    it = it->second.is_zero() ? t_.erase(it) : std::next(it);
  if (t_.empty()) {
    z_ = 1;
    return;
  }
  long g = z_;
  for (const auto& [e, c] : t_) g = gcd_long(g, e);
  if (g > 1) {
    std::map<long, CycloNum> nt;
    for (auto& [e, c] : t_) nt.emplace(e / g, std::move(c));
    t_ = std::move(nt);
    z_ /= g;
  }
}

bool LaurentX::is_constant() const {
  return t_.empty() || (t_.size() == 1 && t_.count(0));
}

CycloNum LaurentX::constant_value() const {
  if (t_.empty()) return CycloNum();
  if (!is_constant()) throw FractionalPower("not a constant: " + str());
  return t_.at(0);
}

bool LaurentX::is_polynomial() const {
  if (t_.empty()) return true;
  return z_ == 1 && t_.begin()->first >= 0;
}

mpq_class LaurentX::min_exp() const {
  if (t_.empty()) return 0;
  mpq_class r(t_.begin()->first, z_);
  r.canonicalize();
  return r;
}

mpq_class LaurentX::max_exp() const {
  if (t_.empty()) return 0;
  mpq_class r(t_.rbegin()->first, z_);
  r.canonicalize();
  return r;
}

LaurentX LaurentX::operator-() const {
  LaurentX f = *this;
  for (auto& [e, c] : f.t_) c = -c;
  return f;
}

LaurentX LaurentX::operator+(const LaurentX& o) const {
  LaurentX f;
  long Z = lcm_long(z_, o.z_);
  f.z_ = Z;
  for (const auto& [e, c] : t_) f.t_[e * (Z / z_)] = c;
  for (const auto& [e, c] : o.t_) {
    auto [it, fresh] = f.t_.emplace(e * (Z / o.z_), c);
    if (!fresh) it->second += c;
  }
  f.normalize();
  return f;
}

LaurentX LaurentX::operator-(const LaurentX& o) const { return *this + (-o); }

LaurentX LaurentX::operator*(const LaurentX& o) const {
  LaurentX f;
  long Z = lcm_long(z_, o.z_);
  f.z_ = Z;
  long sa = Z / z_, sb = Z / o.z_;
  for (const auto& [ea, ca] : t_)
    for (const auto& [eb, cb] : o.t_) {
      CycloNum p = ca * cb;
      if (p.is_zero()) continue;
      auto [it, fresh] = f.t_.emplace(ea * sa + eb * sb, p);
      if (!fresh) it->second += p;
    }
  f.normalize();
  return f;
}

LaurentX LaurentX::pow(long k) const {
  LaurentX r(CycloNum(1L)), b = *this;
  for (; k > 0; k >>= 1) {
    if (k & 1) r *= b;
    if (k > 1) b *= b;
  }
  return r;
}

LaurentX LaurentX::compose_power(long k) const {
  if (k == 0) throw FractionalPower("x -> x^0 substitution");
  LaurentX f;
  f.z_ = z_;
  for (const auto& [e, c] : t_) f.t_[e * k] = c;
  f.normalize();
  return f;
}

CycloNum LaurentX::coefficient(long num, long den) const {
  // compare num/den with stored e/z_
  if ((num * z_) % den != 0) return CycloNum();
  auto it = t_.find(num * z_ / den);
  return it == t_.end() ? CycloNum() : it->second;
}

CycloNum LaurentX::eval(const CycloNum& c) const {
  if (t_.empty()) return CycloNum();
  if (z_ != 1) throw FractionalPower("fractional exponents at non-rational point");
  CycloNum acc;
  CycloNum inv;
  bool have_inv = false;
  for (const auto& [e, coef] : t_) {
    CycloNum base = c;
    long k = e;
    if (k < 0) {
      if (!have_inv) {
        inv = c.inverse();
        have_inv = true;
      }
      base = inv;
      k = -k;
    }
    CycloNum powv(1L);
    for (; k > 0; k >>= 1) {
      if (k & 1) powv *= base;
      if (k > 1) base *= base;
    }
    acc += coef * powv;
  }
  return acc;
}

CycloNum LaurentX::eval_rational(const mpq_class& q) const {
  if (t_.empty()) return CycloNum();
  if (q == 0) {
    if (t_.begin()->first < 0) throw DivisionByZero("negative exponent at x=0");
    auto it = t_.find(0);
    return it == t_.end() ? CycloNum() : it->second;
  }
  mpq_class base = q;
  if (z_ > 1) {
    auto r = rational_root(q, z_);
    if (!r) throw FractionalPower("no exact " + std::to_string(z_) + "-th root of " + rat_str(q));
    base = *r;
  }
  CycloNum acc;
  for (const auto& [e, c] : t_) acc += c * CycloNum(pow_rational(base, e));
  return acc;
}

CycloNum LaurentX::eval_one() const {
  CycloNum s;
  for (const auto& [e, c] : t_) s += c;
  return s;
}

// precondition: every coefficient order divides m, k coprime to m
LaurentX LaurentX::map_coeffs_galois(long m, long k) const {
  LaurentX f;
  f.z_ = z_;
  for (const auto& [e, c] : t_) f.t_[e] = c.promoted(m).galois(k);
  f.normalize();
  return f;
}

LaurentX LaurentX::conj_coeffs() const {
  LaurentX f;
  f.z_ = z_;
  for (const auto& [e, c] : t_) f.t_[e] = c.conj();
  f.normalize();
  return f;
}

std::string LaurentX::str(const std::string& var) const {
  if (t_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    long e = it->first;
    CycloNum c = it->second.shrink();
    std::string cs = c.str();
    bool rational = c.is_rational();
    bool negative = rational && c.rational_value() < 0;
    if (first) {
      first = false;
      if (negative) {
        out << "-";
        cs = rat_str(-c.rational_value());
      }
    } else {
      if (negative) {
        out << "-";
        cs = rat_str(-c.rational_value());
      } else {
        out << "+";
      }
    }
    std::string coeff = rational ? cs : "(" + cs + ")";
    if (e == 0) {
      out << coeff;
      continue;
    }
    if (coeff != "1") out << coeff << "*";
    out << var;
    long num = e, den = z_;
    long g = gcd_long(num, den);
    num /= g;
    den /= g;
    if (den == 1) {
      if (num != 1) {
        if (num > 0)
          out << "^" << num;
        else
          out << "^(" << num << ")";
      }
    } else {
      out << "^(" << num << "/" << den << ")";
    }
  }
  return out.str();
}

LaurentX operator*(const CycloNum& c, const LaurentX& f) { return LaurentX(c) * f; }

}  // namespace spets
