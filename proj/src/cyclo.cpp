#include "spets/cyclo.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "spets/errors.hpp"

namespace spets {

long phi(long m) {
  long r = m;
  for (long p = 2; p * p <= m; ++p)
    if (m % p == 0) {
      r -= r / p;
      while (m % p == 0) m /= p;
    }
  if (m > 1) r -= r / m;
  return r;
}

namespace {

// quotient of exact polynomial division, constant term first
std::vector<mpq_class> poly_exact_div(const std::vector<mpq_class>& a,
                                      const std::vector<mpq_class>& b) {
  std::vector<mpq_class> rem = a, q(a.size() - b.size() + 1, mpq_class(0));
  long db = static_cast<long>(b.size()) - 1;
  for (long d = static_cast<long>(rem.size()) - 1; d >= db; --d) {
    if (rem[d] == 0) continue;
    mpq_class c = rem[d] / b[db];
    q[d - db] = c;
    for (long j = 0; j <= db; ++j) rem[d - db + j] -= c * b[j];
  }
  return q;
}

std::map<long, std::vector<mpq_class>> g_cyclo_cache;
std::mutex g_cyclo_mutex;

}  // namespace

const std::vector<mpq_class>& cyclotomic_poly(long m) {
  std::lock_guard<std::mutex> lock(g_cyclo_mutex);
  auto it = g_cyclo_cache.find(m);
  if (it != g_cyclo_cache.end()) return it->second;
  // Phi_d = (x^d - 1) / prod_{e|d, e<d} Phi_e, filled for all divisors of m
  // in ascending order so every quotient is available when needed.
  for (long d = 1; d <= m; ++d) {
    if (m % d != 0 || g_cyclo_cache.count(d)) continue;
    std::vector<mpq_class> num(d + 1, mpq_class(0));
    num[0] = -1;
    num[d] = 1;
    for (long e = 1; e < d; ++e)
      if (d % e == 0) num = poly_exact_div(num, g_cyclo_cache.at(e));
    g_cyclo_cache.emplace(d, std::move(num));
  }
  return g_cyclo_cache.at(m);
}

CycloNum CycloNum::root_of_unity(long m, long k) {
  k %= m;
  if (k < 0) k += m;
  std::vector<mpq_class> dense(m, mpq_class(0));
  dense[k] = 1;
  return from_dense(m, std::move(dense));
}

CycloNum CycloNum::from_coeffs(long m, std::vector<mpq_class> coeffs) {
  if (static_cast<long>(coeffs.size()) != phi(m))
    throw ParseError("cyclotomic coefficient vector has wrong length");
  return CycloNum(m, std::move(coeffs));
}

CycloNum CycloNum::from_dense(long m, std::vector<mpq_class> dense) {
  const auto& ph = cyclotomic_poly(m);
  long deg = static_cast<long>(ph.size()) - 1;  // phi(m)
  for (long d = static_cast<long>(dense.size()) - 1; d >= deg; --d) {
    if (dense[d] == 0) continue;
    mpq_class c = dense[d];
    dense[d] = 0;
    for (long j = 0; j < deg; ++j) dense[d - deg + j] -= c * ph[j];
  }
  dense.resize(deg, mpq_class(0));
  return CycloNum(m, std::move(dense));
}

bool CycloNum::is_zero() const {
  for (const auto& q : c_)
    if (q != 0) return false;
  return true;
}

bool CycloNum::nonconst_all_zero() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

mpq_class CycloNum::rational_value() const {
  if (!is_rational()) throw NotIntegral("value is not rational: " + str());
  return c_[0];
}

CycloNum CycloNum::operator-() const {
  std::vector<mpq_class> c = c_;
  for (auto& q : c) q = -q;
  return CycloNum(m_, std::move(c));
}

CycloNum CycloNum::promoted(long N) const {
  if (N == m_) return *this;
  if (N % m_ != 0) throw ParseError("promotion target not a multiple of order");
  long step = N / m_;
  std::vector<mpq_class> dense(N, mpq_class(0));
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) dense[i * step] = c_[i];
  return from_dense(N, std::move(dense));
}

CycloNum CycloNum::operator+(const CycloNum& o) const {
  long N = lcm_long(m_, o.m_);
  CycloNum a = promoted(N), b = o.promoted(N);
  for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
  return a;
}

CycloNum CycloNum::operator-(const CycloNum& o) const {
  long N = lcm_long(m_, o.m_);
  CycloNum a = promoted(N), b = o.promoted(N);
  for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] -= b.c_[i];
  return a;
}

CycloNum CycloNum::operator*(const CycloNum& o) const {
  // rational fast paths keep orders small without an explicit shrink
  if (m_ == 1) {
    if (c_[0] == 0) return CycloNum();
    std::vector<mpq_class> c = o.c_;
    for (auto& q : c) q *= c_[0];
    return CycloNum(o.m_, std::move(c));
  }
  if (o.m_ == 1) return o * *this;
  long N = lcm_long(m_, o.m_);
  CycloNum a = promoted(N), b = o.promoted(N);
  std::vector<mpq_class> dense(2 * a.c_.size(), mpq_class(0));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j)
      if (b.c_[j] != 0) dense[i + j] += a.c_[i] * b.c_[j];
  }
  return from_dense(N, std::move(dense));
}

CycloNum CycloNum::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero cyclotomic number");
  if (m_ == 1) return CycloNum(mpq_class(1 / c_[0]));
  // extended Euclid in Q[X] against Phi_m: u*f + v*Phi = gcd = const
  std::vector<mpq_class> r0 = cyclotomic_poly(m_), r1 = c_;
  while (!r1.empty() && r1.back() == 0) r1.pop_back();
  std::vector<mpq_class> s0{mpq_class(0)}, s1{mpq_class(1)};  // Bezout wrt f
  while (true) {
    long d1 = static_cast<long>(r1.size()) - 1;
    long d0 = static_cast<long>(r0.size()) - 1;
    if (d1 == 0) break;  // r1 is a nonzero constant: done
    // r0 = q*r1 + r2
    std::vector<mpq_class> rem = r0, q(std::max<long>(d0 - d1 + 1, 1), mpq_class(0));
    for (long d = d0; d >= d1; --d) {
      if (rem[d] == 0) continue;
      mpq_class c = rem[d] / r1[d1];
      q[d - d1] = c;
      for (long j = 0; j <= d1; ++j) rem[d - d1 + j] -= c * r1[j];
    }
    while (!rem.empty() && rem.back() == 0) rem.pop_back();
    if (rem.empty()) throw DivisionByZero("common factor with cyclotomic polynomial");
    // s2 = s0 - q*s1
    std::vector<mpq_class> s2(std::max(s0.size(), q.size() + s1.size() - 1), mpq_class(0));
    for (size_t i = 0; i < s0.size(); ++i) s2[i] = s0[i];
    for (size_t i = 0; i < q.size(); ++i)
      if (q[i] != 0)
        for (size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
    while (!s2.empty() && s2.back() == 0) s2.pop_back();
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  mpq_class lead = r1[0];
  std::vector<mpq_class> dense = s1;
  for (auto& q : dense) q /= lead;
  return from_dense(m_, std::move(dense));
}

CycloNum CycloNum::operator/(const CycloNum& o) const { return *this * o.inverse(); }

bool CycloNum::operator==(const CycloNum& o) const {
  long N = lcm_long(m_, o.m_);
  return promoted(N).c_ == o.promoted(N).c_;
}

CycloNum CycloNum::galois(long k) const {
  k %= m_;
  if (k < 0) k += m_;
  if (gcd_long(k, m_) != 1) throw ParseError("galois exponent not coprime to order");
  if (m_ == 1 || k == 1) return *this;
  std::vector<mpq_class> dense(m_, mpq_class(0));
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) dense[(i * k) % m_] += c_[i];
  return from_dense(m_, std::move(dense));
}

CycloNum CycloNum::shrink() const {
  if (m_ == 1) return *this;
  if (nonconst_all_zero()) return CycloNum(c_[0]);
  for (long d = 2; d < m_; ++d) {
    if (m_ % d != 0) continue;
    long pd = phi(d), pm = phi(m_);
    // columns: images of zeta_d^j in the order-m basis
    std::vector<std::vector<mpq_class>> cols;
    cols.reserve(pd);
    for (long j = 0; j < pd; ++j) {
      std::vector<mpq_class> dense(m_, mpq_class(0));
      dense[j * (m_ / d)] = 1;
      cols.push_back(from_dense(m_, std::move(dense)).c_);
    }
    // solve cols * y = c_ by Gaussian elimination
    std::vector<std::vector<mpq_class>> aug(pm, std::vector<mpq_class>(pd + 1, mpq_class(0)));
    for (long r = 0; r < pm; ++r) {
      for (long j = 0; j < pd; ++j) aug[r][j] = cols[j][r];
      aug[r][pd] = c_[r];
    }
    long row = 0;
    std::vector<long> pivot_col(pd, -1);
    for (long col = 0; col < pd && row < pm; ++col) {
      long p = -1;
      for (long r = row; r < pm; ++r)
        if (aug[r][col] != 0) {
          p = r;
          break;
        }
      if (p < 0) continue;
      std::swap(aug[row], aug[p]);
      mpq_class inv = 1 / aug[row][col];
      for (long j = col; j <= pd; ++j) aug[row][j] *= inv;
      for (long r = 0; r < pm; ++r)
        if (r != row && aug[r][col] != 0) {
          mpq_class f = aug[r][col];
          for (long j = col; j <= pd; ++j) aug[r][j] -= f * aug[row][j];
        }
      pivot_col[col] = row;
      ++row;
    }
    bool consistent = true;
    for (long r = row; r < pm; ++r)
      if (aug[r][pd] != 0) {
        consistent = false;
        break;
      }
    if (!consistent) continue;
    std::vector<mpq_class> y(pd, mpq_class(0));
    for (long col = 0; col < pd; ++col)
      if (pivot_col[col] >= 0) y[col] = aug[pivot_col[col]][pd];
    return CycloNum(d, std::move(y));
  }
  return *this;
}

bool CycloNum::is_integral() const {
  for (const auto& q : c_)
    if (q.get_den() != 1) return false;
  return true;
}

long CycloNum::ell_val(long ell) const {
  long v = kValInfinity;
  for (const auto& q : c_)
    if (q != 0) v = std::min(v, val_p(q, ell));
  return v;
}

std::string CycloNum::str() const {
  CycloNum s = shrink();
  if (s.m_ == 1) return rat_str(s.c_[0]);
  std::ostringstream out;
  bool first = true;
  for (long i = static_cast<long>(s.c_.size()) - 1; i >= 0; --i) {
    const mpq_class& q = s.c_[i];
    if (q == 0) continue;
    mpq_class a = q;
    if (first) {
      if (a < 0) {
        out << "-";
        a = -a;
      }
      first = false;
    } else {
      out << (a < 0 ? "-" : "+");
      if (a < 0) a = -a;
    }
    if (i == 0) {
      out << rat_str(a);
      continue;
    }
    if (a != 1) out << rat_str(a) << "*";
    out << "z" << s.m_;
    if (i > 1) out << "^" << i;
  }
  return out.str();
}

bool ell_valuation(const CycloNum& c, long ell, long k) {
  // defined for ell-integral values; other denominators may carry ell-free
  // factors (block dimensions are rational in general)
  long v = c.ell_val(ell);
  if (v < 0) throw NotIntegral("not integral at " + std::to_string(ell) + ": " + c.str());
  return v >= k;
}

}  // namespace spets
