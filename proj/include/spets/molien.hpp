#pragma once
// Truncated power series with cyclotomic coefficients, enough for Molien
// sums: inversion of det(1 - x*w), weighted averages, degree peeling.

#include <vector>

#include "spets/laurent.hpp"

namespace spets {

// coefficients of 1/p mod x^K; requires p polynomial with p(0) = 1
std::vector<CycloNum> series_inverse(const LaurentX& p, long K);

// (1/total) * sum_c weights[c] / dets[c], truncated to K terms
std::vector<CycloNum> molien_series(const std::vector<LaurentX>& dets,
                                    const std::vector<CycloNum>& weights,
                                    long total, long K);

// multiply the truncated series by (1 - x^e) in place
void series_clear_factor(std::vector<CycloNum>& s, long e);

// factor the series as prod_i 1/(1-x^{d_i}) greedily, smallest degree
// first; returns empty when the truncation runs out before rank factors
std::vector<long> peel_degrees(std::vector<CycloNum> s, long rank);

// the truncation as a polynomial; trailing zero coefficients dropped
LaurentX series_to_poly(const std::vector<CycloNum>& s);

}  // namespace spets
