// Copyright 2026 The fnfdist Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Independent brute-force oracles for tests. Nothing in here calls the
// library's fast paths; only PrimeField scalar arithmetic is shared.

#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <queue>
#include <random>
#include <vector>

#include "fnfdist/field.hpp"
#include "fnfdist/matrix.hpp"

namespace fnfdist::testing {

inline constexpr u64 kSmallPrime = 101;
inline constexpr u64 kMidPrime = 1000003;
inline constexpr u64 kBigPrime = 1152921504606846883ULL;  // < 2^60

inline Vector random_vector(const PrimeField& f, std::size_t n, Rng& rng) {
  Vector v(n);
  for (auto& x : v) x = f.random(rng);
  return v;
}

inline Vector schoolbook_mul(const PrimeField& f, const Vector& a, const Vector& b) {
  if (a.empty() || b.empty()) return {};
  Vector out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
  while (!out.empty() && out.back().v == 0) out.pop_back();
  return out;
}

inline Matrix naive_mul(const PrimeField& f, const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Scalar s{0};
      for (std::size_t k = 0; k < a.cols(); ++k) s = f.add(s, f.mul(a(i, k), b(k, j)));
      c(i, j) = s;
    }
  return c;
}

// A^1 .. A^h by repeated naive multiplication.
inline std::vector<Matrix> naive_powers(const PrimeField& f, const Matrix& a, std::size_t h) {
  std::vector<Matrix> out;
  if (h == 0) return out;
  out.push_back(a);
  for (std::size_t k = 1; k < h; ++k) out.push_back(naive_mul(f, out.back(), a));
  return out;
}

inline Matrix naive_power(const PrimeField& f, const Matrix& a, std::size_t k) {
  Matrix r = Matrix::identity(a.rows());
  for (std::size_t i = 0; i < k; ++i) r = naive_mul(f, r, a);
  return r;
}

inline Matrix sub_matrix(const Matrix& a, const IndexList& rows, const IndexList& cols) {
  Matrix s(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = a(rows[i], cols[j]);
  return s;
}

inline Vector naive_matvec(const PrimeField& f, const Matrix& a, const Vector& v) {
  Vector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] = f.add(out[i], f.mul(a(i, j), v[j]));
  return out;
}

inline std::vector<Vector> naive_krylov(const PrimeField& f, const Matrix& a, const Vector& u, std::size_t m) {
  std::vector<Vector> out;
  Vector cur = u;
  for (std::size_t k = 0; k < m; ++k) {
    out.push_back(cur);
    cur = naive_matvec(f, a, cur);
  }
  return out;
}

// Rank of a list of equal-length vectors by plain Gaussian elimination.
inline std::size_t rank_of(const PrimeField& f, std::vector<Vector> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c].v == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    const Scalar inv = f.inv(rows[r][c]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c].v == 0) continue;
      const Scalar factor = f.mul(rows[i][c], inv);
      for (std::size_t k = c; k < cols; ++k) rows[i][k] = f.sub(rows[i][k], f.mul(factor, rows[r][k]));
    }
    ++r;
  }
  return r;
}

// Generic iff I, A, ..., A^(n-1) are linearly independent (minimal polynomial
// has degree n).
inline bool is_generic_brute(const PrimeField& f, const Matrix& a) {
  const std::size_t n = a.rows();
  std::vector<Vector> flat;
  Matrix p = Matrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    flat.push_back(p.entries());
    p = naive_mul(f, p, a);
  }
  return rank_of(f, flat) == n;
}

// Faddeev-LeVerrier; requires p > n. Returns c_0..c_(n-1) of the monic
// characteristic polynomial.
inline Vector charpoly_brute(const PrimeField& f, const Matrix& a) {
  const std::size_t n = a.rows();
  Vector c(n + 1);
  c[n] = f.one();
  Matrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix am = naive_mul(f, a, m);
    for (std::size_t i = 0; i < n; ++i) am(i, i) = f.add(am(i, i), c[n - k + 1]);
    m = am;
    Matrix t = naive_mul(f, a, m);
    Scalar tr{0};
    for (std::size_t i = 0; i < n; ++i) tr = f.add(tr, t(i, i));
    c[n - k] = f.neg(f.mul(tr, f.inv(f.from_u64(k))));
  }
  c.pop_back();
  return c;
}

// a_k = -sum_i c_i a_(k-n+i), stepped one term at a time.
inline Vector naive_recurrence(const PrimeField& f, const Vector& init, const Vector& c) {
  const std::size_t n = c.size();
  Vector seq = init;
  for (std::size_t k = n; k < 2 * n; ++k) {
    Scalar s{0};
    for (std::size_t i = 0; i < n; ++i) s = f.add(s, f.mul(c[i], seq[k - n + i]));
    seq.push_back(f.neg(s));
  }
  return Vector(seq.begin() + static_cast<std::ptrdiff_t>(n), seq.end());
}

// Smallest k in [1, bound] with (A^k)_{s,t} != 0 (0 if s == t), else nullopt.
inline std::vector<std::vector<std::optional<std::size_t>>> min_nonzero_power(const PrimeField& f,
                                                                              const Matrix& a,
                                                                              std::size_t bound) {
  const std::size_t n = a.rows();
  std::vector<std::vector<std::optional<std::size_t>>> out(n, std::vector<std::optional<std::size_t>>(n));
  for (std::size_t i = 0; i < n; ++i) out[i][i] = 0;
  Matrix p = a;
  for (std::size_t k = 1; k <= bound; ++k) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!out[i][j] && p(i, j).v != 0) out[i][j] = k;
    if (k < bound) p = naive_mul(f, p, a);
  }
  return out;
}

// All-pairs shortest paths on a dense weight table; negative entries mean "no
// edge".
inline std::vector<std::vector<long long>> floyd_warshall(std::vector<std::vector<long long>> d) {
  const long long inf = std::numeric_limits<long long>::max() / 4;
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (d[i][j] < 0) d[i][j] = inf;
      if (i == j) d[i][j] = 0;
    }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  for (auto& row : d)
    for (auto& x : row)
      if (x >= inf) x = -1;
  return d;
}

// A + col * row^T.
inline Matrix outer_update(const PrimeField& f, Matrix a, const Vector& col, const Vector& row) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = f.add(a(i, j), f.mul(col[i], row[j]));
  return a;
}

inline std::vector<Matrix> pick(const std::vector<Matrix>& powers, const IndexList& rows, const IndexList& cols) {
  std::vector<Matrix> out;
  for (const auto& p : powers) out.push_back(sub_matrix(p, rows, cols));
  return out;
}

inline IndexList random_list(std::size_t n, std::size_t max_size, Rng& r) {
  std::uniform_int_distribution<std::size_t> idx(0, n - 1), size(1, max_size);
  IndexList s;
  const std::size_t k = size(r);
  for (std::size_t i = 0; i < k; ++i) s.push_back(idx(r));
  return s;
}

}  // namespace fnfdist::testing
