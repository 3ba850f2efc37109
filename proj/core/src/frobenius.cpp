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

#include "fnfdist/frobenius.hpp"

#include <cmath>
#include <string>

#include "fnfdist/errors.hpp"
#include "fnfdist/hankel.hpp"
#include "fnfdist/polymatrix.hpp"

namespace fnfdist {

Matrix companion_matrix(const PrimeField& field, const Vector& charpoly) {
  const std::size_t n = charpoly.size();
  Matrix c(n, n);
  for (std::size_t i = 1; i < n; ++i) c(i, i - 1) = field.one();
  for (std::size_t i = 0; i < n; ++i) c(i, n - 1) = field.neg(charpoly[i]);
  return c;
}

bool is_valid_form(const PrimeField& field, const Matrix& a, const FrobeniusForm& form) {
  if (!a.is_square() || a.rows() != form.n || form.charpoly.size() != form.n) return false;
  if (form.U.rows() != form.n || form.Uinv.rows() != form.n) return false;
  const Matrix c = companion_matrix(field, form.charpoly);
  return mat_mul(field, a, form.U) == mat_mul(field, form.U, c) &&
         mat_mul(field, form.U, form.Uinv) == Matrix::identity(form.n);
}

Iterates naive_iterates(const PrimeField& field, const Matrix& a, const Vector& u, std::size_t count) {
  if (!a.is_square() || u.size() != a.rows()) throw DimensionMismatch("naive_iterates: shape mismatch");
  if (count > a.rows()) throw DimensionMismatch("naive_iterates: more iterates than the matrix order");
  Iterates out;
  out.reserve(count);
  if (count == 0) return out;
  out.push_back(u);
  for (std::size_t k = 1; k < count; ++k) out.push_back(mat_vec(field, a, out.back()));
  return out;
}

std::optional<FrobeniusForm> fnf_from_iterates(const PrimeField& field, const Matrix& a, const Iterates& iter_u,
                                               const Iterates& iter_v) {
  const std::size_t n = a.rows();
  if (!a.is_square() || iter_u.size() != n || iter_v.size() != n) {
    throw DimensionMismatch("fnf_from_iterates: need n iterates of each vector");
  }
  if (n == 0) return FrobeniusForm{};
  for (std::size_t i = 0; i < n; ++i) {
    if (iter_u[i].size() != n || iter_v[i].size() != n) throw DimensionMismatch("fnf_from_iterates: vector length");
  }

  // v^T A^s u for s = 0 .. 2n-2.
  Vector hank(2 * n - 1);
  for (std::size_t s = 0; s < n; ++s) hank[s] = dot(field, iter_v[0], iter_u[s]);
  for (std::size_t s = n; s + 1 < 2 * n; ++s) hank[s] = dot(field, iter_v[s - n + 1], iter_u[n - 1]);
  auto solver = factor_hankel(field, HankelWindow(n, std::move(hank)));
  if (!solver) return std::nullopt;

  FrobeniusForm form;
  form.n = n;
  form.U = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) form.U(i, j) = iter_u[j][i];

  // Uinv = (VU)^{-1} V, one column at a time.
  form.Uinv = Matrix(n, n);
  Vector rhs(n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = 0; i < n; ++i) rhs[i] = iter_v[i][c];
    const Vector col = solver->solve(rhs);
    for (std::size_t i = 0; i < n; ++i) form.Uinv(i, c) = col[i];
  }

  // The Hankel values only pair v_0 with every u_s and every v_s with
  // u_(n-1), so a family that is dependent but not a true Krylov sequence can
  // slip past the solve. U * (Uinv * x) == x for a fixed pseudo-random x
  // catches that in O(n^2).
  {
    Rng probe_rng(0x9e3779b97f4a7c15ULL);
    Vector x(n);
    for (auto& e : x) e = field.random(probe_rng);
    if (mat_vec(field, form.U, mat_vec(field, form.Uinv, x)) != x) return std::nullopt;
  }

  // Last column of C = Uinv * A * (A^(n-1) u) = -(c_0, ..., c_(n-1)).
  const Vector last = mat_vec(field, form.Uinv, mat_vec(field, a, iter_u[n - 1]));
  form.charpoly.resize(n);
  for (std::size_t i = 0; i < n; ++i) form.charpoly[i] = field.neg(last[i]);
  return form;
}

std::size_t default_fnf_attempts(std::size_t n) {
  const double l = 1.0 + std::log2(static_cast<double>(n < 1 ? 1 : n));
  return static_cast<std::size_t>(std::ceil(64.0 * l * l));
}

FrobeniusForm compute_fnf(const PrimeField& field, const Matrix& a, Rng& rng, std::size_t max_attempts) {
  if (!a.is_square()) throw DimensionMismatch("compute_fnf: matrix is not square");
  const std::size_t n = a.rows();
  if (max_attempts == 0) max_attempts = default_fnf_attempts(n);
  const Matrix at = transpose(a);
  Vector u(n), v(n);
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    for (auto& x : u) x = field.random(rng);
    for (auto& x : v) x = field.random(rng);
    auto form = fnf_from_iterates(field, a, naive_iterates(field, a, u, n), naive_iterates(field, at, v, n));
    if (form) return std::move(*form);
  }
  throw GenericityFailure("compute_fnf: no generic vector pair after " + std::to_string(max_attempts) +
                          " attempts; the matrix is likely not generic");
}

RecurrenceExtender::RecurrenceExtender(const PrimeField& field, const Vector& charpoly)
    : field_(field), n_(charpoly.size()) {
  denom_.resize(n_ + 1);
  denom_[0] = field.one();
  for (std::size_t j = 1; j <= n_; ++j) denom_[j] = charpoly[n_ - j];
  const Poly inv = poly_series_inv(field, Poly(denom_), 2 * n_);
  denom_inv_.assign(2 * n_ + 1, Scalar{0});
  for (std::size_t i = 0; i <= 2 * n_; ++i) denom_inv_[i] = inv.coeff(i);
}

Vector RecurrenceExtender::extend(const Vector& init) const {
  if (init.size() != n_) throw DimensionMismatch("extend_recurrence: need exactly n initial terms");
  if (n_ == 0) return {};
  // Numerator of the generating function: (init * denom) mod x^n.
  Vector num = kernels::multiply(field_, init, denom_);
  num.resize(n_);
  // Coefficients n .. 2n-1 of num * denom_inv as a middle product:
  //   out_i = sum_j denom_inv[1 + i + j] * num[n - 1 - j].
  Vector rev(num.rbegin(), num.rend());
  std::span<const Scalar> tail(denom_inv_.data() + 1, denom_inv_.size() - 1);
  return kernels::middle_product(field_, tail, rev, n_);
}

Vector extend_recurrence(const PrimeField& field, const Vector& init, const Vector& charpoly) {
  if (init.size() != charpoly.size()) throw DimensionMismatch("extend_recurrence: init and charpoly lengths differ");
  return RecurrenceExtender(field, charpoly).extend(init);
}

PowerOracle::PowerOracle(const PrimeField& field, FrobeniusForm form, Matrix aux)
    : field_(field), form_(std::move(form)), aux_(std::move(aux)) {}

Matrix PowerOracle::window(std::size_t k) const {
  const std::size_t n = form_.n;
  if (k < 1 || k > n) throw IndexOutOfRange("PowerOracle::window: k must lie in [1, n]");
  Matrix w(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t z = 0; z < n; ++z) w(i, z) = aux_(i, k - 1 + z);
  return w;
}

PowerOracle build_power_oracle(const PrimeField& field, const Matrix& a, FrobeniusForm form) {
  const std::size_t n = form.n;
  if (a.rows() != n || !a.is_square()) throw DimensionMismatch("build_power_oracle: form does not match matrix");
  Matrix aux(n, n == 0 ? 0 : 2 * n - 1);
  if (n > 0) {
    const RecurrenceExtender ext(field, form.charpoly);
    Vector row(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t z = 0; z < n; ++z) row[z] = form.U(i, z);
      const Vector next = ext.extend(row);
      // r_{i,k} = u_{i,k+1}: the row of U shifted left by one, then the
      // extension.
      for (std::size_t z = 1; z < n; ++z) aux(i, z - 1) = row[z];
      for (std::size_t z = 0; z < n; ++z) aux(i, n - 1 + z) = next[z];
    }
  }
  return PowerOracle(field, std::move(form), std::move(aux));
}

namespace {

void check_index(std::size_t idx, std::size_t n, const char* what) {
  if (idx >= n) {
    throw IndexOutOfRange(std::string(what) + " index " + std::to_string(idx) + " out of range for order " +
                          std::to_string(n));
  }
}

}  // namespace

Vector query_cell_powers(const PowerOracle& oracle, std::size_t i, std::size_t j, std::size_t h) {
  const std::size_t n = oracle.order();
  check_index(i, n, "query_cell_powers: row");
  check_index(j, n, "query_cell_powers: column");
  if (h > n) throw IndexOutOfRange("query_cell_powers: h exceeds the matrix order");
  if (h == 0) return {};
  const auto r = oracle.aux().row(i);
  return kernels::middle_product(oracle.field(), r, oracle.form().Uinv.column(j), h);
}

Iterates vector_iterates_fast(const PowerOracle& oracle, const Vector& v) {
  const std::size_t n = oracle.order();
  if (v.size() != n) throw DimensionMismatch("vector_iterates_fast: vector length differs from order");
  Iterates out(n, Vector(n));
  if (n == 0) return out;
  out[0] = v;
  const Vector w = mat_vec(oracle.field(), oracle.form().Uinv, v);
  for (std::size_t i = 0; i < n; ++i) {
    const Vector seq = kernels::middle_product(oracle.field(), oracle.aux().row(i), w, n - 1);
    for (std::size_t k = 1; k < n; ++k) out[k][i] = seq[k - 1];
  }
  return out;
}

std::vector<Matrix> query_submatrix_powers(const PowerOracle& oracle, const IndexList& rows, const IndexList& cols,
                                           std::size_t h) {
  const std::size_t n = oracle.order();
  for (Index s : rows) check_index(s, n, "query_submatrix_powers: row");
  for (Index t : cols) check_index(t, n, "query_submatrix_powers: column");
  if (h > n) throw IndexOutOfRange("query_submatrix_powers: h exceeds the matrix order");
  if (h == 0) return {};

  const std::size_t blocks = (n + h - 1) / h;
  const Matrix& aux = oracle.aux();
  const Matrix& uinv = oracle.form().Uinv;
  const std::size_t aux_cols = aux.cols();

  // p_{i,j}(x) = sum_{l=1}^{2h-1} r_{i, j*h + l} x^l
  PolyMatrix p(rows.size(), blocks, 2 * h - 1);
  for (std::size_t l = 1; l <= 2 * h - 1; ++l) {
    Matrix& coeff = p.coeff(l);
    for (std::size_t a = 0; a < rows.size(); ++a)
      for (std::size_t j = 0; j < blocks; ++j) {
        const std::size_t col = j * h + l;  // 1-based column of R
        if (col <= aux_cols) coeff(a, j) = aux(rows[a], col - 1);
      }
  }
  // q_{j,i}(x) = sum_{l=1}^{h} g_{j*h + l, i} x^(h-l)
  PolyMatrix q(blocks, cols.size(), h - 1);
  for (std::size_t l = 1; l <= h; ++l) {
    Matrix& coeff = q.coeff(h - l);
    for (std::size_t j = 0; j < blocks; ++j) {
      const std::size_t row = j * h + l;  // 1-based row of Uinv
      if (row > n) continue;
      for (std::size_t b = 0; b < cols.size(); ++b) coeff(j, b) = uinv(row - 1, cols[b]);
    }
  }
  // (A^k)_{i,j} is the coefficient of x^(k+h-1).
  return polymat_mul_window(oracle.field(), p, q, h, 2 * h - 1);
}

}  // namespace fnfdist
