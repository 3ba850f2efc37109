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

#include "fnfdist/hankel.hpp"

#include "fnfdist/errors.hpp"
#include "fnfdist/poly.hpp"

namespace fnfdist {

HankelWindow::HankelWindow(std::size_t order, Vector values) : m(order), diag(std::move(values)) {
  const std::size_t expected = order == 0 ? 0 : 2 * order - 1;
  if (diag.size() != expected) throw DimensionMismatch("HankelWindow: need 2m-1 skew-diagonal values");
}

Matrix HankelWindow::dense() const {
  Matrix d(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) d(i, j) = diag[i + j];
  return d;
}

Vector hankel_vec_mul(const PrimeField& field, const HankelWindow& h, const Vector& v) {
  if (v.size() != h.m) throw DimensionMismatch("hankel_vec_mul: vector length differs from order");
  return kernels::middle_product(field, h.diag, v, h.m);
}

std::optional<LinearSolver> factor_hankel(const PrimeField& field, const HankelWindow& h) {
  return LinearSolver::factor(field, h.dense());
}

std::optional<Vector> hankel_solve(const PrimeField& field, const HankelWindow& h, const Vector& b) {
  if (b.size() != h.m) throw DimensionMismatch("hankel_solve: right-hand side length differs from order");
  auto solver = factor_hankel(field, h);
  if (!solver) return std::nullopt;
  return solver->solve(b);
}

}  // namespace fnfdist
