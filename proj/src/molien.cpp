#include "spets/molien.hpp"

#include <stdexcept>

#include "spets/errors.hpp"

namespace spets {

namespace {

// dense coefficient list of a genuine polynomial, length K
std::vector<CycloNum> dense(const LaurentX& p, long K) {
  if (p.z() != 1) throw FractionalPower("series expects integer exponents");
  std::vector<CycloNum> out(static_cast<size_t>(K));
  for (const auto& [e, c] : p.terms()) {
    if (e < 0) throw FractionalPower("series expects a polynomial");
    if (e < K) out[static_cast<size_t>(e)] = c;
  }
  return out;
}

}  // namespace

std::vector<CycloNum> series_inverse(const LaurentX& p, long K) {
  std::vector<CycloNum> c = dense(p, K);
  if (!(c[0] == CycloNum(1)))
    throw DivisionByZero("series inverse needs constant term 1");
  std::vector<CycloNum> inv(static_cast<size_t>(K));
  inv[0] = CycloNum(1);
  for (long k = 1; k < K; ++k) {
    CycloNum acc;
    for (long j = 1; j <= k; ++j) {
      if (c[static_cast<size_t>(j)].is_zero()) continue;
      acc = acc + c[static_cast<size_t>(j)] * inv[static_cast<size_t>(k - j)];
    }
    inv[static_cast<size_t>(k)] = -acc;
  }
  return inv;
}

std::vector<CycloNum> molien_series(const std::vector<LaurentX>& dets,
                                    const std::vector<CycloNum>& weights,
                                    long total, long K) {
  if (dets.size() != weights.size())
    throw std::invalid_argument("molien_series: size mismatch");
  std::vector<CycloNum> acc(static_cast<size_t>(K));
  for (size_t c = 0; c < dets.size(); ++c) {
    if (weights[c].is_zero()) continue;
    std::vector<CycloNum> inv = series_inverse(dets[c], K);
    for (long k = 0; k < K; ++k)
      acc[static_cast<size_t>(k)] =
          acc[static_cast<size_t>(k)] + weights[c] * inv[static_cast<size_t>(k)];
  }
  CycloNum scale = CycloNum(1) / CycloNum(total);
  for (auto& v : acc) v = v * scale;
  return acc;
}

void series_clear_factor(std::vector<CycloNum>& s, long e) {
  // (1 - x^e) * s, truncated to the same length
  for (long k = static_cast<long>(s.size()) - 1; k >= e; --k)
    s[static_cast<size_t>(k)] =
        s[static_cast<size_t>(k)] - s[static_cast<size_t>(k - e)];
}

std::vector<long> peel_degrees(std::vector<CycloNum> s, long rank) {
  std::vector<long> degrees;
  for (long i = 0; i < rank; ++i) {
    long e = 0;
    for (long k = 1; k < static_cast<long>(s.size()); ++k) {
      if (!s[static_cast<size_t>(k)].is_zero()) {
        e = k;
        break;
      }
    }
    if (e == 0) return {};  // truncation exhausted before rank factors
    degrees.push_back(e);
    series_clear_factor(s, e);
  }
  return degrees;
}

LaurentX series_to_poly(const std::vector<CycloNum>& s) {
  LaurentX out;
  for (long k = 0; k < static_cast<long>(s.size()); ++k)
    if (!s[static_cast<size_t>(k)].is_zero())
      out = out + LaurentX::monomial(s[static_cast<size_t>(k)], k);
  return out;
}

}  // namespace spets
