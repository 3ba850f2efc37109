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


#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "fnfdist/errors.hpp"
#include "fnfdist/updates.hpp"
#include "support/oracles.hpp"

using namespace fnfdist;
using namespace fnfdist::testing;

TEST_CASE("perturbed_iterates hand cases") {
  const PrimeField f(101);
  const Matrix swap = Matrix::from_rows(f, {{0, 1}, {1, 0}});
  const Vector e1{{1}, {0}}, e2{{0}, {1}};
  PerturbationContext ctx{naive_krylov(f, swap, e1, 2), naive_krylov(f, swap, e1, 2), e2};
  CHECK(perturbed_iterates(f, ctx) == Iterates{e1, e2});

  Rng r(2);
  const Matrix a = Matrix::random(f, 5, 5, r);
  const Vector u = random_vector(f, 5, r);
  PerturbationContext zero_b{naive_krylov(f, a, u, 5), naive_krylov(f, a, random_vector(f, 5, r), 5), Vector(5)};
  CHECK(perturbed_iterates(f, zero_b) == zero_b.delta);
}

TEST_CASE("perturbed_iterates equals explicit iterates") {
  const PrimeField f(kBigPrime);
  Rng r(3);
  std::uniform_int_distribution<std::size_t> d(1, 64);
  for (int it = 0; it < 50; ++it) {
    const std::size_t n = d(r);
    const Matrix a = Matrix::random(f, n, n, r);
    const Vector col = random_vector(f, n, r), row = random_vector(f, n, r), u = random_vector(f, n, r);
    PerturbationContext ctx{naive_krylov(f, a, u, n), naive_krylov(f, a, col, n), row};
    const Iterates expect = naive_krylov(f, outer_update(f, a, col, row), u, n);
    REQUIRE(perturbed_iterates(f, ctx) == expect);
    REQUIRE(perturbed_iterates(f, ctx, 1) == expect);
  }
}

TEST_CASE("perturbed_iterates on larger instances") {
  // Small, medium and large moduli take the 52-bit vector leaves (where the
  // CPU has them), the unreduced scalar recursion and the reduced one.
  for (const u64 p : {u64{35184372088777}, u64{36028797018963913}, kBigPrime}) {
    const PrimeField f(p);
    Rng r(p % 1000);
    for (const std::size_t n : {std::size_t{129}, std::size_t{300}, std::size_t{385}}) {
      CAPTURE(p);
      CAPTURE(n);
      const Matrix a = Matrix::random(f, n, n, r);
      const Vector col = random_vector(f, n, r), row = random_vector(f, n, r), u = random_vector(f, n, r);
      PerturbationContext ctx{naive_krylov(f, a, u, n), naive_krylov(f, a, col, n), row};
      REQUIRE(perturbed_iterates(f, ctx) == naive_krylov(f, outer_update(f, a, col, row), u, n));
    }
  }
}

TEST_CASE("rank1_update_fnf") {
  const PrimeField f(kBigPrime);
  Rng r(4);
  std::uniform_int_distribution<std::size_t> d(1, 32);
  for (int it = 0; it < 20; ++it) {
    const std::size_t n = d(r);
    const Matrix a = Matrix::random(f, n, n, r);
    const PowerOracle oa = build_power_oracle(f, a, compute_fnf(f, a, r));
    const PowerOracle oat = build_power_oracle(f, transpose(a), compute_fnf(f, transpose(a), r));
    Vector col = random_vector(f, n, r), row = random_vector(f, n, r);
    const Matrix b = outer_update(f, a, col, row);
    if (n <= 12 && !is_generic_brute(f, b)) continue;
    const Rank1Result res = rank1_update_fnf(f, a, oa, oat, col, row, r);
    REQUIRE(is_valid_form(f, b, res.form));
    REQUIRE(is_valid_form(f, transpose(b), res.form_transposed));
    if (n <= 12) REQUIRE(res.form.charpoly == charpoly_brute(f, b));
    REQUIRE(res.form.charpoly == res.form_transposed.charpoly);

    const Rank1Result same = rank1_update_fnf(f, a, oa, oat, Vector(n), row, r);
    REQUIRE(same.form.charpoly == oa.form().charpoly);
  }
}

TEST_CASE("batch_preprocess and batch_query hand case") {
  const PrimeField f(kBigPrime);
  const Matrix a = Matrix::from_rows(f, {{0, 1}, {0, 0}});
  const auto powers = naive_powers(f, a, 2);
  // Set (2,1) -> 1, 0-based (1, 0).
  std::vector<ElementChange> psi{{1, 0, f.one(), f.zero()}};
  const ElementUpdateBatch batch = batch_preprocess(f, pick(powers, {0}, {1}), psi, 2);
  CHECK(batch.P().rows() == 1);
  // P (1 - x d (VZU)) == 1 mod x^3.
  PolyMatrix w(1, 1, 2);
  w.coeff(0)(0, 0) = f.one();
  for (std::size_t k = 1; k <= 2; ++k) w.coeff(k)(0, 0) = f.neg(f.mul(batch.delta()[0], batch.VZU().coeff(k - 1)(0, 0)));
  CHECK(polymat_mul(f, batch.P(), w, 2) == PolyMatrix::identity(1, 2));

  const auto got = batch_query(f, batch, {0}, {0}, pick(powers, {0}, {1}), pick(powers, {0}, {0}),
                               pick(powers, {0}, {0}));
  REQUIRE(got.size() == 2);
  CHECK(got[0](0, 0) == f.zero());
  CHECK(got[1](0, 0) == f.one());
}

TEST_CASE("no-op and empty batches") {
  const PrimeField f(kBigPrime);
  Rng r(5);
  const Matrix a = Matrix::random(f, 6, 6, r);
  const auto powers = naive_powers(f, a, 4);
  std::vector<ElementChange> noop{{1, 2, a(1, 2), a(1, 2)}, {3, 0, a(3, 0), a(3, 0)}};
  const ElementUpdateBatch b = batch_preprocess(f, pick(powers, {2, 0}, {1, 3}), noop, 4);
  CHECK(b.P() == PolyMatrix::identity(2, 4));
  const ElementUpdateBatch empty = batch_preprocess(f, pick(powers, {}, {}), {}, 4);
  const IndexList x{0, 5}, y{1, 2, 3};
  CHECK(batch_query(f, empty, x, y, pick(powers, x, {}), pick(powers, {}, y), pick(powers, x, y)) ==
        pick(powers, x, y));
  std::vector<ElementChange> dup{{1, 2, f.one(), a(1, 2)}, {1, 2, f.zero(), a(1, 2)}};
  CHECK_THROWS_AS(batch_preprocess(f, pick(powers, {2, 2}, {1, 1}), dup, 4), DuplicatePosition);
}

TEST_CASE("batch_query equals powers of the updated matrix") {
  const PrimeField f(kBigPrime);
  Rng r(6);
  std::uniform_int_distribution<std::size_t> dn(2, 32), df(1, 6), dh(1, 10);
  for (int it = 0; it < 40; ++it) {
    const std::size_t n = dn(r);
    const std::size_t h = std::min(dh(r), n);
    const Matrix a = Matrix::random(f, n, n, r);
    std::uniform_int_distribution<std::size_t> pos(0, n - 1);
    std::set<std::pair<Index, Index>> used;
    std::vector<ElementChange> psi;
    Matrix b = a;
    const std::size_t target = std::min(df(r), n * n);
    while (psi.size() < target) {
      const Index i = pos(r), j = pos(r);
      if (!used.emplace(i, j).second) continue;
      const Scalar v = (r() % 3 == 0) ? f.zero() : f.random(r);
      psi.push_back({i, j, v, a(i, j)});
      b(i, j) = v;
    }
    IndexList rows, cols;
    for (const auto& c : psi) {
      rows.push_back(c.row);
      cols.push_back(c.col);
    }
    const auto pa = naive_powers(f, a, h);
    const auto pb = naive_powers(f, b, h);
    const ElementUpdateBatch batch = batch_preprocess(f, pick(pa, cols, rows), psi, h);

    // Round trip: P (I - X D VZU) == I.
    PolyMatrix w(psi.size(), psi.size(), h);
    w.coeff(0) = Matrix::identity(psi.size());
    for (std::size_t k = 1; k <= h; ++k)
      for (std::size_t i = 0; i < psi.size(); ++i)
        for (std::size_t j = 0; j < psi.size(); ++j)
          w.coeff(k)(i, j) = f.neg(f.mul(batch.delta()[i], batch.VZU().coeff(k - 1)(i, j)));
    REQUIRE(polymat_mul(f, batch.P(), w, h) == PolyMatrix::identity(psi.size(), h));

    const IndexList x = random_list(n, 8, r), y = random_list(n, 8, r);
    const auto got = batch_query(f, batch, x, y, pick(pa, x, rows), pick(pa, cols, y), pick(pa, x, y));
    REQUIRE(got == pick(pb, x, y));
  }
}
