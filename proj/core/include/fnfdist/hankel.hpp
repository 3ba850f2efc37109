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

#include "fnfdist/matrix.hpp"

namespace fnfdist {

// m x m Hankel matrix given by its 2m-1 skew-diagonal values: entry (i, j) is
// diag[i + j].
struct HankelWindow {
  std::size_t m = 0;
  Vector diag;

  HankelWindow() = default;
  HankelWindow(std::size_t order, Vector values);

  Matrix dense() const;
};

// H * v as one middle product of diag and v.
Vector hankel_vec_mul(const PrimeField& field, const HankelWindow& h, const Vector& v);

// Dense factorization of H; nullopt when H is singular.
std::optional<LinearSolver> factor_hankel(const PrimeField& field, const HankelWindow& h);

// x with H x = b, or nullopt when H is singular.
std::optional<Vector> hankel_solve(const PrimeField& field, const HankelWindow& h, const Vector& b);

}  // namespace fnfdist
