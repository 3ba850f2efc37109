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
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>

#include "fnfdist/field.hpp"

namespace fnfdist {

// Dense univariate polynomial. coeffs()[i] is the coefficient of x^i; the zero
// polynomial has no coefficients. With a cap set, the polynomial lives in
// F[x]/(x^(cap+1)) and is kept truncated.
class Poly {
 public:
  Poly() = default;
  explicit Poly(Vector coeffs, std::optional<std::size_t> cap = std::nullopt);

  static Poly from_i64(const PrimeField& field, std::initializer_list<std::int64_t> coeffs,
                       std::optional<std::size_t> cap = std::nullopt);

  const Vector& coeffs() const noexcept { return coeffs_; }
  std::optional<std::size_t> cap() const noexcept { return cap_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  // -1 for the zero polynomial.
  std::ptrdiff_t degree() const noexcept { return static_cast<std::ptrdiff_t>(coeffs_.size()) - 1; }
  Scalar coeff(std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : Scalar{0}; }

  friend bool operator==(const Poly& a, const Poly& b) noexcept { return a.coeffs_ == b.coeffs_; }

 private:
  void normalize();

  Vector coeffs_;
  std::optional<std::size_t> cap_;
};

Poly poly_add(const PrimeField& field, const Poly& f, const Poly& g);
Poly poly_sub(const PrimeField& field, const Poly& f, const Poly& g);

// Exact product, truncated to the smaller cap when either operand has one.
// Schoolbook below 32 coefficients, Karatsuba above.
Poly poly_mul(const PrimeField& field, const Poly& f, const Poly& g);

// g with f * g = 1 (mod x^(k+1)), by Newton iteration. Throws
// NotInvertibleSeries when f(0) = 0.
Poly poly_series_inv(const PrimeField& field, const Poly& f, std::size_t k);

namespace kernels {

// Full product of two coefficient sequences; result has |a| + |b| - 1 entries
// (empty if either input is empty).
Vector multiply(const PrimeField& field, std::span<const Scalar> a, std::span<const Scalar> b);

// r_i = sum_j a_{i+j} b_j for i < count, entries of a past its end read as 0.
// This is the transposed product: it costs one Karatsuba multiplication of
// size max(|b|, count) instead of a full |a| x |b| product.
Vector middle_product(const PrimeField& field, std::span<const Scalar> a, std::span<const Scalar> b,
                      std::size_t count);

}  // namespace kernels

}  // namespace fnfdist
