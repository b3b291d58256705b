#include "spets/residue.hpp"

#include <algorithm>

#include "spets/errors.hpp"
#include "spets/rational.hpp"

namespace spets {

namespace {

bool is_prime_long(long n) {
  if (n < 2) return false;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

// smallest primitive root mod the odd prime ell
long smallest_primitive_root(long ell) {
  std::vector<long> prime_factors;
  long m = ell - 1;
  for (long p = 2; p * p <= m; ++p)
    if (m % p == 0) {
      prime_factors.push_back(p);
      while (m % p == 0) m /= p;
    }
  if (m > 1) prime_factors.push_back(m);
  for (long g = 2; g < ell; ++g) {
    bool ok = true;
    for (long p : prime_factors)
      if (pow_mod(g, (ell - 1) / p, ell) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw MissingRoot("no primitive root mod " + std::to_string(ell));
}

long legendre_symbol(long a, long p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) return 0;
  return pow_mod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

}  // namespace

ResidueEmbedding::ResidueEmbedding(long ell, long a) : ell_(ell), a_(a) {
  if (ell < 2 || !is_prime_long(ell)) throw ParseError("ell must be prime");
  if (a < 1) throw ParseError("level must be >= 1");
  mpz_pow_ui(mod_.get_mpz_t(), mpz_class(ell).get_mpz_t(), static_cast<unsigned long>(a));
  if (ell == 2) return;
  long g = smallest_primitive_root(ell);
  mpz_class ell2 = mpz_class(ell) * ell;
  mpz_class lift = g;
  if (a > 1 && pow_mod(lift, ell - 1, ell2) == 1) lift += ell;
  omega_ = lift % mod_;
  roots_.push_back({"t - " + omega_.get_str() + " (primitive unit)", 0, omega_.get_str()});
}

const mpz_class& ResidueEmbedding::omega() const {
  if (ell_ == 2) throw MissingRoot("no odd-order unit generator mod powers of 2");
  return omega_;
}

void ResidueEmbedding::register_sqrt(long d) {
  long p = d < 0 ? -d : d;
  if (!is_prime_long(p) || p == 2) throw ParseError("discriminant must be +-odd prime");
  long dm4 = ((d % 4) + 4) % 4;
  if (dm4 != 1) throw ParseError("discriminant must be 1 mod 4");
  for (const auto& q : quads_)
    if (q.d == d) return;

  // Gauss sum: sum of legendre(j,p) zeta_p^j squares to d
  std::vector<mpq_class> dense(static_cast<size_t>(p), mpq_class(0));
  for (long j = 1; j < p; ++j) dense[static_cast<size_t>(j)] = legendre_symbol(j, p);
  CycloNum s = CycloNum::from_dense(p, std::move(dense));
  if (s * s != CycloNum(mpq_class(d))) throw ParseError("unsupported discriminant");

  QuadRoot qr;
  qr.d = d;
  qr.sqrt_d = s;
  mpz_class dmod = mpz_class(d) % mod_;
  if (dmod < 0) dmod += mod_;
  if (ell_ == 2) {
    // smallest y = 1 mod 4 with y^2 = d; brute force is fine at these levels
    bool found = false;
    for (mpz_class y = 1; y < mod_; y += 4)
      if ((y * y) % mod_ == dmod) {
        qr.y = y;
        found = true;
        break;
      }
    if (!found) throw MissingRoot("no square root of " + std::to_string(d) + " mod 2^" + std::to_string(a_));
    // unit root of t^2 - t + (1-d)/4 by Newton; derivative 2t-1 is a unit,
    // so the root with w = 1 mod 2 is unique
    mpz_class cterm = mpz_class(1 - d) / 4;
    mpz_class w = 1;
    for (long k = 0; k <= a_; ++k) {
      mpz_class f = (w * w - w + cterm) % mod_;
      mpz_class df = (2 * w - 1) % mod_;
      if (df < 0) df += mod_;
      auto inv = inv_mod(df, mod_);
      if (!inv) throw MissingRoot("derivative not a unit");
      w = (w - f * *inv) % mod_;
      if (w < 0) w += mod_;
    }
    mpz_class chk = (w * w - w + cterm) % mod_;
    if (chk < 0) chk += mod_;
    if (chk != 0) throw MissingRoot("Hensel iteration failed");
    qr.w = w;
    roots_.push_back({"t^2 - (" + std::to_string(d) + ")", 0, qr.y.get_str()});
    roots_.push_back({"t^2 - t + " + cterm.get_str() + " (unit root)", 0, qr.w.get_str()});
  } else {
    // root mod ell by search, Hensel lift, smaller representative
    long r0 = -1;
    long dmodl = ((d % ell_) + ell_) % ell_;
    for (long y = 0; y < ell_; ++y)
      if ((y * y) % ell_ == dmodl) {
        r0 = y;
        break;
      }
    if (r0 < 0) throw MissingRoot("no square root of " + std::to_string(d) + " mod " + std::to_string(ell_));
    mpz_class y = r0, mk = ell_;
    for (long k = 1; k < a_; ++k) {
      mk *= ell_;
      mpz_class f = (y * y - mpz_class(d)) % mk;
      auto inv = inv_mod(2 * y, mk);
      if (!inv) throw MissingRoot("even derivative at odd prime");
      y = (y - f * *inv) % mk;
      if (y < 0) y += mk;
    }
    mpz_class other = (mod_ - y) % mod_;
    qr.y = std::min(y, other);
    roots_.push_back({"t^2 - (" + std::to_string(d) + ")", 0, qr.y.get_str()});
  }
  quads_.push_back(std::move(qr));
}

mpz_class ResidueEmbedding::reduce_rational(const mpq_class& q) const {
  mpz_class den = q.get_den();
  if (den % ell_ == 0) throw BadDenominator("denominator divisible by " + std::to_string(ell_));
  auto inv = inv_mod(den % mod_, mod_);
  if (!inv) throw BadDenominator("denominator not invertible");
  mpz_class r = (q.get_num() % mod_) * *inv % mod_;
  if (r < 0) r += mod_;
  return r;
}

mpz_class ResidueEmbedding::reduce(const CycloNum& c) const {
  CycloNum v = c.shrink();
  if (v.is_rational()) return reduce_rational(v.rational_value());
  long m = v.order();
  if (ell_ != 2 && m % ell_ != 0 && (ell_ - 1) % m == 0) {
    // order-m unit: omega^{ell^{a-1}(ell-1)/m}
    mpz_class exp = 1;
    for (long k = 1; k < a_; ++k) exp *= ell_;
    exp *= (ell_ - 1) / m;
    mpz_class root = pow_mod(omega_, exp, mod_);
    mpz_class acc = 0, pw = 1;
    for (const auto& q : v.coeffs()) {
      if (q != 0) acc = (acc + reduce_rational(q) * pw) % mod_;
      pw = pw * root % mod_;
    }
    if (acc < 0) acc += mod_;
    return acc;
  }
  for (const auto& qr : quads_) {
    long p = qr.d < 0 ? -qr.d : qr.d;
    if (m != p) continue;
    // try v = alpha + beta * sqrt(d) with rational alpha, beta
    const auto& sc = qr.sqrt_d.coeffs();
    const auto& vc = v.coeffs();
    size_t i = 1;
    while (i < sc.size() && sc[i] == 0) ++i;
    if (i >= sc.size()) continue;
    mpq_class beta = vc[i] / sc[i];
    mpq_class alpha = vc[0] - beta * sc[0];
    if (v != CycloNum(alpha) + CycloNum(beta) * qr.sqrt_d) continue;
    bool alpha_ok = alpha.get_den() % ell_ != 0;
    bool beta_ok = beta.get_den() % ell_ != 0;
    if (alpha_ok && beta_ok)
      return (reduce_rational(alpha) + reduce_rational(beta) * qr.y) % mod_;
    if (ell_ == 2) {
      // half-integral: alpha + beta sqrt(d) = (alpha-beta) + 2 beta * (1+sqrt(d))/2
      mpq_class ap = alpha - beta, bp = 2 * beta;
      if (ap.get_den() % 2 != 0 && bp.get_den() % 2 != 0)
        return (reduce_rational(ap) + reduce_rational(bp) * qr.w) % mod_;
    }
    throw BadDenominator("value not integral at " + std::to_string(ell_));
  }
  throw MissingRoot("no residue image for order-" + std::to_string(m) + " value " + v.str());
}

}  // namespace spets
