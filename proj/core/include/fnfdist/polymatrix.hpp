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
#include <vector>

#include "fnfdist/matrix.hpp"
#include "fnfdist/poly.hpp"

namespace fnfdist {

// Matrix with entries in F[x]/(x^(cap+1)), stored coefficient-major: coeff(k)
// is the scalar matrix of x^k coefficients.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols, std::size_t cap);
  // coefficient matrices for x^0 .. x^(coeffs.size()-1); all must share a shape.
  explicit PolyMatrix(std::vector<Matrix> coeffs);

  static PolyMatrix identity(std::size_t n, std::size_t cap);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t cap() const noexcept { return coeffs_.size() - 1; }

  Matrix& coeff(std::size_t k) { return coeffs_.at(k); }
  const Matrix& coeff(std::size_t k) const { return coeffs_.at(k); }
  const std::vector<Matrix>& coefficients() const noexcept { return coeffs_; }

  Poly entry(std::size_t i, std::size_t j) const;
  void set_entry(std::size_t i, std::size_t j, const Poly& p);

  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) noexcept { return a.coeffs_ == b.coeffs_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Matrix> coeffs_;
};

PolyMatrix polymat_add(const PrimeField& field, const PolyMatrix& p, const PolyMatrix& q);
PolyMatrix polymat_sub(const PrimeField& field, const PolyMatrix& p, const PolyMatrix& q);

// P * Q truncated to x^cap. Throws DimensionMismatch if P.cols() != Q.rows().
PolyMatrix polymat_mul(const PrimeField& field, const PolyMatrix& p, const PolyMatrix& q, std::size_t cap);

// Exact routes for polymat_mul_window:
//   convolution    sums products of coefficient matrices;
//   evaluation     evaluates both operands at deg(P)+deg(Q)+1 points,
//                  multiplies pointwise and interpolates only the window;
//   transposition  for windows inside [deg Q, deg P], where every coefficient
//                  sees all of Q: the transposed evaluation scheme, needing
//                  only (hi-lo+1)+deg(Q) points.
enum class WindowRoute { cheapest, convolution, evaluation, transposition };

// Coefficient matrices of x^lo .. x^hi in the untruncated product P * Q.
// `cheapest` picks by multiply count. Forcing a route that does not apply
// (too few field elements for the points, or for transposition a window whose
// part up to deg P + deg Q leaves [deg Q, deg P]) throws
// std::invalid_argument.
std::vector<Matrix> polymat_mul_window(const PrimeField& field, const PolyMatrix& p, const PolyMatrix& q,
                                       std::size_t lo, std::size_t hi, WindowRoute route = WindowRoute::cheapest);

}  // namespace fnfdist
