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

#include "fnfdist/matrix.hpp"

#include <numeric>
#include <string>

#include "fnfdist/errors.hpp"

namespace fnfdist {

Matrix::Matrix(std::size_t rows, std::size_t cols, Vector entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) throw DimensionMismatch("Matrix: entry count does not match shape");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar{1};
  return m;
}

Matrix Matrix::random(const PrimeField& field, std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix m(rows, cols);
  for (auto& x : m.data_) x = field.random(rng);
  return m;
}

Matrix Matrix::from_rows(const PrimeField& field,
                         std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  Matrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionMismatch("Matrix::from_rows: ragged rows");
    std::size_t j = 0;
    for (std::int64_t x : row) m(i, j++) = field.from_i64(x);
    ++i;
  }
  return m;
}

Vector Matrix::column(std::size_t j) const {
  Vector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

Matrix mat_add(const PrimeField& field, const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("mat_add: shape mismatch");
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = field.add(a(i, j), b(i, j));
  return c;
}

Matrix mat_sub(const PrimeField& field, const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("mat_sub: shape mismatch");
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = field.sub(a(i, j), b(i, j));
  return c;
}

Vector mat_vec(const PrimeField& field, const Matrix& a, const Vector& v) {
  if (a.cols() != v.size()) throw DimensionMismatch("mat_vec: length mismatch");
  Vector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    LazyAccumulator acc(field);
    auto r = a.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) acc.add_product(r[j], v[j]);
    out[i] = acc.value();
  }
  return out;
}

Matrix select(const Matrix& a, const IndexList& rows, const IndexList& cols) {
  Matrix s(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] >= a.rows()) throw IndexOutOfRange("select: row index " + std::to_string(rows[i]));
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j] >= a.cols()) throw IndexOutOfRange("select: column index " + std::to_string(cols[j]));
      s(i, j) = a(rows[i], cols[j]);
    }
  }
  return s;
}

namespace {

Matrix mul_reference(const PrimeField& field, const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Scalar s{0};
      for (std::size_t k = 0; k < a.cols(); ++k) s = field.add(s, field.mul(a(i, k), b(k, j)));
      c(i, j) = s;
    }
  return c;
}

Matrix mul_blocked(const PrimeField& field, const Matrix& a, const Matrix& b) {
  const std::size_t n = a.rows();
  const std::size_t inner = a.cols();
  const std::size_t m = b.cols();
  Matrix c(n, m);
  std::vector<u128> acc(m);
  const std::size_t limit = field.lazy_limit();
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(acc.begin(), acc.end(), u128{0});
    std::size_t count = 0;
    for (std::size_t k = 0; k < inner; ++k) {
      const u64 x = a(i, k).v;
      if (x == 0) continue;
      const Scalar* brow = b.row(k).data();
      for (std::size_t j = 0; j < m; ++j) acc[j] += static_cast<u128>(x) * brow[j].v;
      if (++count == limit) {
        for (auto& s : acc) s = field.reduce(s);
        count = 1;
      }
    }
    auto crow = c.row(i);
    for (std::size_t j = 0; j < m; ++j) crow[j] = {field.reduce(acc[j])};
  }
  return c;
}

}  // namespace

Matrix mat_mul(const PrimeField& field, const Matrix& a, const Matrix& b, MatMulKernel kernel) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("mat_mul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " times " +
                            std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  switch (kernel) {
    case MatMulKernel::reference:
      return mul_reference(field, a, b);
    case MatMulKernel::blocked:
      break;
  }
  return mul_blocked(field, a, b);
}

std::optional<LinearSolver> LinearSolver::factor(const PrimeField& field, const Matrix& a) {
  if (!a.is_square()) throw DimensionMismatch("LinearSolver: matrix is not square");
  const std::size_t n = a.rows();
  Matrix lu = a;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Vector pivot_inv(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && lu(piv, col).v == 0) ++piv;
    if (piv == n) return std::nullopt;
    if (piv != col) {
      std::swap(perm[piv], perm[col]);
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(piv, j), lu(col, j));
    }
    const Scalar inv = field.inv(lu(col, col));
    pivot_inv[col] = inv;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (lu(r, col).v == 0) continue;
      const Scalar f = field.mul(lu(r, col), inv);
      lu(r, col) = f;
      const Scalar nf = field.neg(f);
      for (std::size_t j = col + 1; j < n; ++j) lu(r, j) = field.add(lu(r, j), field.mul(nf, lu(col, j)));
    }
  }
  return LinearSolver(field, std::move(lu), std::move(perm), std::move(pivot_inv));
}

Vector LinearSolver::solve(const Vector& b) const {
  const std::size_t n = lu_.rows();
  if (b.size() != n) throw DimensionMismatch("LinearSolver::solve: length mismatch");
  Vector y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = b[perm_[i]];
  for (std::size_t i = 0; i < n; ++i) {
    LazyAccumulator acc(field_);
    acc.add(y[i]);
    for (std::size_t j = 0; j < i; ++j) acc.add_product(field_.neg(lu_(i, j)), y[j]);
    y[i] = acc.value();
  }
  for (std::size_t i = n; i-- > 0;) {
    LazyAccumulator acc(field_);
    acc.add(y[i]);
    for (std::size_t j = i + 1; j < n; ++j) acc.add_product(field_.neg(lu_(i, j)), y[j]);
    y[i] = field_.mul(acc.value(), pivot_inv_[i]);
  }
  return y;
}

std::optional<Matrix> mat_inv(const PrimeField& field, const Matrix& a) {
  auto solver = LinearSolver::factor(field, a);
  if (!solver) return std::nullopt;
  const std::size_t n = a.rows();
  Matrix inv(n, n);
  Vector e(n, Scalar{0});
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = Scalar{1};
    Vector col = solver->solve(e);
    e[j] = Scalar{0};
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
  }
  return inv;
}

}  // namespace fnfdist
