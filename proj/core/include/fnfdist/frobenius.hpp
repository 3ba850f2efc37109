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
#include <vector>

#include "fnfdist/field.hpp"
#include "fnfdist/matrix.hpp"
#include "fnfdist/poly.hpp"

namespace fnfdist {

// Krylov iterates v, Mv, ..., M^(m-1) v.
using Iterates = std::vector<Vector>;

// A = U * C * Uinv where C is the companion matrix of
// p_A(t) = t^n + c[n-1] t^(n-1) + ... + c[0].
//
// Only the coefficient vector is stored; companion_matrix() materializes C for
// checks.
struct FrobeniusForm {
  std::size_t n = 0;
  Vector charpoly;
  Matrix U;
  Matrix Uinv;
};

Matrix companion_matrix(const PrimeField& field, const Vector& charpoly);

// A * U == U * C and U * Uinv == I, checked with dense products.
bool is_valid_form(const PrimeField& field, const Matrix& a, const FrobeniusForm& form);

Iterates naive_iterates(const PrimeField& field, const Matrix& a, const Vector& u, std::size_t count);

// Builds the Hankel matrix v^T A^(i+j) u from the two iterate families and
// recovers U, Uinv and the characteristic polynomial. Returns nullopt when the
// Hankel matrix is singular, i.e. u is not generic for A or v is not generic
// for A^T (the two cases are not distinguished).
std::optional<FrobeniusForm> fnf_from_iterates(const PrimeField& field, const Matrix& a, const Iterates& iter_u,
                                               const Iterates& iter_v);

// ceil(64 * (1 + log2 n)^2)
std::size_t default_fnf_attempts(std::size_t n);

// Las Vegas FNF: retries fnf_from_iterates on fresh uniform u, v. Throws
// GenericityFailure when the attempt budget (0 = default) is exhausted.
FrobeniusForm compute_fnf(const PrimeField& field, const Matrix& a, Rng& rng, std::size_t max_attempts = 0);

// Next terms of a_k = -sum_i c_i a_(k-n+i). One series inverse of the reversed
// characteristic polynomial is shared by every extend() call; each call then
// costs two truncated multiplications.
class RecurrenceExtender {
 public:
  RecurrenceExtender(const PrimeField& field, const Vector& charpoly);

  // init holds n consecutive terms; returns the following n terms.
  Vector extend(const Vector& init) const;

 private:
  PrimeField field_;
  std::size_t n_;
  Vector denom_;      // 1 + c[n-1] x + ... + c[0] x^n
  Vector denom_inv_;  // its inverse mod x^(2n)
};

Vector extend_recurrence(const PrimeField& field, const Vector& init, const Vector& charpoly);

// FNF plus the n x (2n-1) auxiliary matrix R whose length-n column window
// starting at (1-based) column k equals U * C^k for k in [1, n].
class PowerOracle {
 public:
  PowerOracle(const PrimeField& field, FrobeniusForm form, Matrix aux);

  const PrimeField& field() const noexcept { return field_; }
  const FrobeniusForm& form() const noexcept { return form_; }
  const Matrix& aux() const noexcept { return aux_; }
  std::size_t order() const noexcept { return form_.n; }

  // U * C^k as a dense matrix, k in [1, n].
  Matrix window(std::size_t k) const;

 private:
  PrimeField field_;
  FrobeniusForm form_;
  Matrix aux_;
};

PowerOracle build_power_oracle(const PrimeField& field, const Matrix& a, FrobeniusForm form);

// (A^1)_{i,j}, ..., (A^h)_{i,j}; 0-based i, j and 0 <= h <= n.
Vector query_cell_powers(const PowerOracle& oracle, std::size_t i, std::size_t j, std::size_t h);

// v, Av, ..., A^(n-1) v.
Iterates vector_iterates_fast(const PowerOracle& oracle, const Vector& v);

// (A^1)_{S,T}, ..., (A^h)_{S,T} via one polynomial-matrix product of the
// packed R and Uinv blocks. Element k-1 of the result is (A^k)_{S,T}.
std::vector<Matrix> query_submatrix_powers(const PowerOracle& oracle, const IndexList& rows, const IndexList& cols,
                                           std::size_t h);

}  // namespace fnfdist
