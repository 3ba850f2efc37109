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
#include <utility>
#include <vector>

#include "fnfdist/field.hpp"
#include "fnfdist/frobenius.hpp"
#include "fnfdist/matrix.hpp"
#include "fnfdist/polymatrix.hpp"

namespace fnfdist {

// Pre-iterated inputs of the rank-1 recurrence
//   X_j = delta_j + sum_{l<j} alpha_(j-1-l) * (b . X_l)
// with delta_i = A^i u and alpha_i = A^i a.
struct PerturbationContext {
  Iterates delta;
  Iterates alpha;
  Vector b;
};

inline constexpr std::size_t kPerturbedBaseCase = 8;

// (A + a b^T)^k u for k = 0 .. n-1 by divide and conquer. Each split feeds the
// solved left half into the right half with one middle product per
// coordinate. Segments of at most `base_case` steps are solved directly.
Iterates perturbed_iterates(const PrimeField& field, const PerturbationContext& ctx,
                            std::size_t base_case = kPerturbedBaseCase);

struct Rank1Result {
  FrobeniusForm form;             // of A + a b^T
  FrobeniusForm form_transposed;  // of (A + a b^T)^T = A^T + b a^T
};

// FNF of A + a b^T and of its transpose from the power oracles of A and A^T,
// without forming any Krylov sequence of the new matrix by repeated
// mat-vecs. Throws GenericityFailure when no attempt (0 = default budget)
// yields a nonsingular Hankel matrix.
Rank1Result rank1_update_fnf(const PrimeField& field, const Matrix& a, const PowerOracle& oracle,
                             const PowerOracle& oracle_transposed, const Vector& col, const Vector& row, Rng& rng,
                             std::size_t max_attempts = 0);

// Sets entry (row, col) to `value`; `previous` is the entry it replaces.
struct ElementChange {
  Index row = 0;
  Index col = 0;
  Scalar value;
  Scalar previous;
};

// Lemma-style Sherman-Morrison-Woodbury data for B = A + sum_i d_i e_(r_i) e_(c_i)^T
// over F[X]/(X^(h+1)).
//
// With Z = (I - X A)^(-1) = I + sum_k X^k A^k,
//   (I - X B)^(-1) = Z + (Z U) P (X D) (V Z),   P = (I - X D (V Z U))^(-1),
// where U has columns e_(r_i), V has rows e_(c_i)^T and D = diag(d).
class ElementUpdateBatch {
 public:
  ElementUpdateBatch() = default;

  std::size_t size() const noexcept { return changes_.size(); }
  std::size_t h() const noexcept { return h_; }
  const std::vector<ElementChange>& changes() const noexcept { return changes_; }
  const IndexList& rows() const noexcept { return rows_; }  // r_i
  const IndexList& cols() const noexcept { return cols_; }  // c_i
  const Vector& delta() const noexcept { return delta_; }
  const PolyMatrix& P() const noexcept { return p_; }
  // V Z U, kept for the round-trip check.
  const PolyMatrix& VZU() const noexcept { return vzu_; }

 private:
  friend ElementUpdateBatch batch_preprocess(const PrimeField&, const std::vector<Matrix>&,
                                             std::vector<ElementChange>, std::size_t);
  std::size_t h_ = 0;
  std::vector<ElementChange> changes_;
  IndexList rows_;
  IndexList cols_;
  Vector delta_;
  PolyMatrix vzu_;
  PolyMatrix p_;
};

// powers_cr[k-1] holds (A^k)_{C,R} for k = 1..h, where C = (c_i) and
// R = (r_i) follow the order of `changes`. Throws DuplicatePosition when two
// changes share a position.
ElementUpdateBatch batch_preprocess(const PrimeField& field, const std::vector<Matrix>& powers_cr,
                                    std::vector<ElementChange> changes, std::size_t h);

// (B^k)_{X,Y} for k = 1..h given (A^k)_{X,R}, (A^k)_{C,Y} and (A^k)_{X,Y}.
std::vector<Matrix> batch_query(const PrimeField& field, const ElementUpdateBatch& batch, const IndexList& x,
                                const IndexList& y, const std::vector<Matrix>& powers_xr,
                                const std::vector<Matrix>& powers_cy, const std::vector<Matrix>& powers_xy);

// I + sum_k X^k M_k with the identity restricted to positions where
// rows[i] == cols[j]. Exposed for tests and callers composing their own SMW
// expressions.
PolyMatrix resolvent_block(const IndexList& rows, const IndexList& cols, const std::vector<Matrix>& powers);

}  // namespace fnfdist
