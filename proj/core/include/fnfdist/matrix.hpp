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

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fnfdist/field.hpp"

namespace fnfdist {

using Index = std::size_t;
using IndexList = std::vector<Index>;

// Dense row-major matrix over a prime field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, Vector entries);

  static Matrix identity(std::size_t n);
  static Matrix random(const PrimeField& field, std::size_t rows, std::size_t cols, Rng& rng);
  static Matrix from_rows(const PrimeField& field, std::initializer_list<std::initializer_list<std::int64_t>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  Scalar operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  std::span<Scalar> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
  std::span<const Scalar> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }
  Vector column(std::size_t j) const;

  const Vector& entries() const noexcept { return data_; }

  friend bool operator==(const Matrix& a, const Matrix& b) noexcept {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Vector data_;
};

Matrix transpose(const Matrix& a);
Matrix mat_add(const PrimeField& field, const Matrix& a, const Matrix& b);
Matrix mat_sub(const PrimeField& field, const Matrix& a, const Matrix& b);
Vector mat_vec(const PrimeField& field, const Matrix& a, const Vector& v);

// Rows and columns of `a` picked (and reordered, repeats allowed) by index.
Matrix select(const Matrix& a, const IndexList& rows, const IndexList& cols);

enum class MatMulKernel {
  blocked,     // i-k-j loop order with u128 row accumulators (default)
  reference,   // plain triple loop, one reduction per product
};

// Throws DimensionMismatch when a.cols() != b.rows().
Matrix mat_mul(const PrimeField& field, const Matrix& a, const Matrix& b,
               MatMulKernel kernel = MatMulKernel::blocked);

// LU-style factorization with row pivoting; reusable for many right-hand sides.
class LinearSolver {
 public:
  // nullopt when `a` is singular. Throws DimensionMismatch for non-square input.
  static std::optional<LinearSolver> factor(const PrimeField& field, const Matrix& a);

  Vector solve(const Vector& b) const;
  std::size_t order() const noexcept { return lu_.rows(); }

 private:
  LinearSolver(const PrimeField& field, Matrix lu, std::vector<std::size_t> perm, Vector pivot_inv)
      : field_(field), lu_(std::move(lu)), perm_(std::move(perm)), pivot_inv_(std::move(pivot_inv)) {}

  PrimeField field_;
  Matrix lu_;
  std::vector<std::size_t> perm_;
  Vector pivot_inv_;
};

// nullopt signals a singular matrix.
std::optional<Matrix> mat_inv(const PrimeField& field, const Matrix& a);

}  // namespace fnfdist
