#include "spets/linalg.hpp"

#include <algorithm>
#include <sstream>

#include "spets/errors.hpp"

namespace spets {

bool CMat::operator==(const CMat& o) const {
  if (rows != o.rows || cols != o.cols) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != o.a[i]) return false;
  return true;
}

CMat cmat_identity(long n) {
  CMat m(n, n);
  for (long i = 0; i < n; ++i) m.at(i, i) = CycloNum(1L);
  return m;
}

CMat cmat_mul(const CMat& x, const CMat& y) {
  if (x.cols != y.rows) throw ParseError("matrix shape mismatch");
  CMat r(x.rows, y.cols);
  for (long i = 0; i < x.rows; ++i)
    for (long k = 0; k < x.cols; ++k) {
      if (x.at(i, k).is_zero()) continue;
      for (long j = 0; j < y.cols; ++j)
        if (!y.at(k, j).is_zero()) r.at(i, j) += x.at(i, k) * y.at(k, j);
    }
  return r;
}

CMat cmat_sub(const CMat& x, const CMat& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw ParseError("matrix shape mismatch");
  CMat r(x.rows, x.cols);
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.a[i] - y.a[i];
  return r;
}

CMat cmat_scale(const CycloNum& c, const CMat& x) {
  CMat r = x;
  for (auto& e : r.a) e *= c;
  return r;
}

std::vector<CycloNum> cmat_vec(const CMat& x, const std::vector<CycloNum>& v) {
  if (x.cols != static_cast<long>(v.size())) throw ParseError("matrix shape mismatch");
  std::vector<CycloNum> r(static_cast<size_t>(x.rows));
  for (long i = 0; i < x.rows; ++i)
    for (long j = 0; j < x.cols; ++j)
      if (!x.at(i, j).is_zero() && !v[static_cast<size_t>(j)].is_zero())
        r[static_cast<size_t>(i)] += x.at(i, j) * v[static_cast<size_t>(j)];
  return r;
}

CMat cmat_pow(const CMat& x, long k) {
  CMat r = cmat_identity(x.rows), b = x;
  for (; k > 0; k >>= 1) {
    if (k & 1) r = cmat_mul(r, b);
    if (k > 1) b = cmat_mul(b, b);
  }
  return r;
}

std::string cmat_key(const CMat& x) {
  std::ostringstream out;
  out << x.rows << "x" << x.cols << ":";
  for (const auto& e : x.a) out << e.str() << ";";
  return out.str();
}

std::string vec_key(const std::vector<CycloNum>& v) {
  std::ostringstream out;
  for (const auto& e : v) out << e.str() << ";";
  return out.str();
}

CycloNum cmat_trace(const CMat& x) {
  CycloNum t;
  for (long i = 0; i < std::min(x.rows, x.cols); ++i) t += x.at(i, i);
  return t;
}

namespace {

CycloNum det_rec(const CMat& m, std::vector<long>& cols, long row) {
  if (row == m.rows) return CycloNum(1L);
  CycloNum acc;
  for (size_t k = 0; k < cols.size(); ++k) {
    long c = cols[k];
    if (m.at(row, c).is_zero()) continue;
    cols.erase(cols.begin() + static_cast<long>(k));
    CycloNum sub = det_rec(m, cols, row + 1);
    cols.insert(cols.begin() + static_cast<long>(k), c);
    CycloNum term = m.at(row, c) * sub;
    if (k % 2) term = -term;
    acc += term;
  }
  return acc;
}

}  // namespace

CycloNum cmat_det(const CMat& x) {
  if (x.rows != x.cols) throw ParseError("determinant of non-square matrix");
  std::vector<long> cols(static_cast<size_t>(x.cols));
  for (long j = 0; j < x.cols; ++j) cols[static_cast<size_t>(j)] = j;
  return det_rec(x, cols, 0);
}

long cmat_rank(CMat x) {
  long r = 0;
  for (long c = 0; c < x.cols && r < x.rows; ++c) {
    long piv = -1;
    for (long i = r; i < x.rows; ++i)
      if (!x.at(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    for (long j = 0; j < x.cols; ++j) std::swap(x.at(r, j), x.at(piv, j));
    CycloNum inv = x.at(r, c).inverse();
    for (long j = c; j < x.cols; ++j) x.at(r, j) *= inv;
    for (long i = 0; i < x.rows; ++i) {
      if (i == r || x.at(i, c).is_zero()) continue;
      CycloNum f = x.at(i, c);
      for (long j = c; j < x.cols; ++j) x.at(i, j) -= f * x.at(r, j);
    }
    ++r;
  }
  return r;
}

CMat cmat_rref(CMat x) {
  long r = 0;
  for (long c = 0; c < x.cols && r < x.rows; ++c) {
    long piv = -1;
    for (long i = r; i < x.rows; ++i)
      if (!x.at(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    for (long j = 0; j < x.cols; ++j) std::swap(x.at(r, j), x.at(piv, j));
    CycloNum inv = x.at(r, c).inverse();
    for (long j = c; j < x.cols; ++j) x.at(r, j) *= inv;
    for (long i = 0; i < x.rows; ++i) {
      if (i == r || x.at(i, c).is_zero()) continue;
      CycloNum f = x.at(i, c);
      for (long j = c; j < x.cols; ++j) x.at(i, j) -= f * x.at(r, j);
    }
    ++r;
  }
  CMat out(r, x.cols);
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < x.cols; ++j) out.at(i, j) = x.at(i, j);
  return out;
}

std::vector<std::vector<CycloNum>> cmat_kernel(const CMat& x) {
  CMat r = cmat_rref(x);
  std::vector<long> pivot_col(static_cast<size_t>(r.rows), -1);
  std::vector<bool> is_pivot(static_cast<size_t>(x.cols), false);
  for (long i = 0; i < r.rows; ++i)
    for (long j = 0; j < r.cols; ++j)
      if (!r.at(i, j).is_zero()) {
        pivot_col[static_cast<size_t>(i)] = j;
        is_pivot[static_cast<size_t>(j)] = true;
        break;
      }
  std::vector<std::vector<CycloNum>> basis;
  for (long f = 0; f < x.cols; ++f) {
    if (is_pivot[static_cast<size_t>(f)]) continue;
    std::vector<CycloNum> v(static_cast<size_t>(x.cols));
    v[static_cast<size_t>(f)] = CycloNum(1L);
    for (long i = 0; i < r.rows; ++i)
      v[static_cast<size_t>(pivot_col[static_cast<size_t>(i)])] = -r.at(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<CycloNum>> cmat_solve(const CMat& x, const std::vector<CycloNum>& rhs) {
  if (static_cast<long>(rhs.size()) != x.rows) throw ParseError("matrix shape mismatch");
  CMat aug(x.rows, x.cols + 1);
  for (long i = 0; i < x.rows; ++i) {
    for (long j = 0; j < x.cols; ++j) aug.at(i, j) = x.at(i, j);
    aug.at(i, x.cols) = rhs[static_cast<size_t>(i)];
  }
  CMat r = cmat_rref(std::move(aug));
  std::vector<CycloNum> sol(static_cast<size_t>(x.cols));
  for (long i = 0; i < r.rows; ++i) {
    long piv = -1;
    for (long j = 0; j < r.cols; ++j)
      if (!r.at(i, j).is_zero()) {
        piv = j;
        break;
      }
    if (piv < 0) continue;
    if (piv == x.cols) return std::nullopt;  // 0 = nonzero row
    sol[static_cast<size_t>(piv)] = r.at(i, x.cols);
  }
  return sol;
}

LaurentX char_det(const CMat& m) {
  if (m.rows != m.cols) throw ParseError("characteristic determinant of non-square matrix");
  long n = m.rows;
  // permutation expansion of det(1 - x*M); n is small
  std::vector<long> perm(static_cast<size_t>(n));
  for (long i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i;
  LaurentX acc;
  do {
    long inversions = 0;
    for (long i = 0; i < n; ++i)
      for (long j = i + 1; j < n; ++j)
        if (perm[static_cast<size_t>(i)] > perm[static_cast<size_t>(j)]) ++inversions;
    LaurentX term(1);
    for (long i = 0; i < n && !term.is_zero(); ++i) {
      long j = perm[static_cast<size_t>(i)];
      LaurentX entry = -LaurentX::monomial(m.at(i, j), 1);
      if (i == j) entry += LaurentX(1);
      term *= entry;
    }
    acc += (inversions % 2) ? -term : term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

}  // namespace spets
