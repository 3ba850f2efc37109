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


#include <random>

#include "doctest.h"
#include "fnfdist/errors.hpp"
#include "fnfdist/frobenius.hpp"
#include "support/oracles.hpp"

using namespace fnfdist;
using namespace fnfdist::testing;

namespace {

Vector unit(std::size_t n, std::size_t i) {
  Vector e(n);
  e[i] = Scalar{1};
  return e;
}

IndexList random_subset(std::size_t n, Rng& r) {
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  IndexList s;
  const std::size_t size = pick(r) + 1;
  for (std::size_t i = 0; i < size; ++i) s.push_back(pick(r));
  return s;
}

}  // namespace

TEST_CASE("naive_iterates") {
  const PrimeField f(101);
  const Iterates zero = naive_iterates(f, Matrix(3, 3), unit(3, 0), 3);
  CHECK(zero == Iterates{unit(3, 0), Vector(3), Vector(3)});
  const Vector u{{4}, {5}, {6}};
  CHECK(naive_iterates(f, Matrix::identity(3), u, 3) == Iterates{u, u, u});
  const Matrix swap = Matrix::from_rows(f, {{0, 1}, {1, 0}});
  CHECK(naive_iterates(f, swap, unit(2, 0), 2) == Iterates{unit(2, 0), unit(2, 1)});
  CHECK_THROWS_AS(naive_iterates(f, swap, unit(3, 0), 2), DimensionMismatch);
}

TEST_CASE("fnf_from_iterates hand cases") {
  const PrimeField f(5);
  const Matrix id = Matrix::identity(2);
  const Vector u{{1}, {2}}, v{{3}, {1}};
  CHECK_FALSE(fnf_from_iterates(f, id, naive_iterates(f, id, u, 2), naive_iterates(f, id, v, 2)).has_value());

  const Matrix swap = Matrix::from_rows(f, {{0, 1}, {1, 0}});
  const auto form = fnf_from_iterates(f, swap, naive_iterates(f, swap, unit(2, 0), 2),
                                      naive_iterates(f, swap, unit(2, 0), 2));
  REQUIRE(form.has_value());
  CHECK(form->U == Matrix::identity(2));
  CHECK(form->Uinv == Matrix::identity(2));
  CHECK(form->charpoly == Vector{f.from_i64(-1), f.zero()});
}

TEST_CASE("fnf_from_iterates reports dependent iterates") {
  const PrimeField f(kBigPrime);
  Rng r(3);
  const Matrix a = Matrix::random(f, 6, 6, r);
  const Matrix at = transpose(a);
  const Vector v = random_vector(f, 6, r);
  // An eigen-like direction of a block-diagonal matrix is never generic.
  Matrix block(6, 6);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) block(i, j) = a(i, j);
  for (std::size_t i = 3; i < 6; ++i)
    for (std::size_t j = 3; j < 6; ++j) block(i, j) = a(i, j);
  Vector u = random_vector(f, 6, r);
  for (std::size_t i = 3; i < 6; ++i) u[i] = f.zero();
  CHECK_FALSE(fnf_from_iterates(f, block, naive_iterates(f, block, u, 6),
                                naive_iterates(f, transpose(block), v, 6))
                  .has_value());
  // Dependent v family with a healthy u family.
  Iterates iu = naive_iterates(f, a, random_vector(f, 6, r), 6);
  Iterates iv = naive_iterates(f, at, v, 6);
  iv[5] = iv[2];
  CHECK_FALSE(fnf_from_iterates(f, a, iu, iv).has_value());
}

TEST_CASE("compute_fnf") {
  const PrimeField f(kBigPrime);
  Rng r(5);
  const Vector c{f.from_i64(-1), f.zero()};
  const FrobeniusForm form = compute_fnf(f, companion_matrix(f, c), r);
  CHECK(form.charpoly == c);
  CHECK_THROWS_AS(compute_fnf(f, Matrix::identity(2), r), GenericityFailure);
  CHECK(default_fnf_attempts(1) == 64);
  CHECK(default_fnf_attempts(16) == 64 * 25);
}

TEST_CASE("FNF validity and charpoly on random matrices") {
  const PrimeField f(kBigPrime);
  Rng r(7);
  std::uniform_int_distribution<std::size_t> d(1, 32);
  for (int it = 0; it < 50; ++it) {
    const std::size_t n = d(r);
    const Matrix a = Matrix::random(f, n, n, r);
    const FrobeniusForm form = compute_fnf(f, a, r);
    REQUIRE(is_valid_form(f, a, form));
    REQUIRE(naive_mul(f, a, form.U) == naive_mul(f, form.U, companion_matrix(f, form.charpoly)));
    if (n <= 12) REQUIRE(form.charpoly == charpoly_brute(f, a));
  }
}

TEST_CASE("extend_recurrence") {
  const PrimeField f(101);
  // a_k = a_(k-1) + a_(k-2): c_0 = -1, c_1 = -1.
  const Vector fib{f.from_i64(-1), f.from_i64(-1)};
  CHECK(extend_recurrence(f, Vector{{1}, {1}}, fib) == Vector{{2}, {3}});
  CHECK(extend_recurrence(f, Vector{{7}}, Vector{f.from_i64(-1)}) == Vector{{7}});
  CHECK_THROWS_AS(extend_recurrence(f, Vector{{1}}, fib), DimensionMismatch);

  const PrimeField g(kBigPrime);
  Rng r(8);
  for (std::size_t n : {1, 2, 8, 33, 100}) {
    const Vector c = random_vector(g, n, r);
    const RecurrenceExtender ext(g, c);
    for (int it = 0; it < 3; ++it) {
      const Vector init = random_vector(g, n, r);
      REQUIRE(ext.extend(init) == naive_recurrence(g, init, c));
    }
  }
}

TEST_CASE("power oracle windows equal U C^k") {
  const PrimeField f(kBigPrime);
  Rng r(9);
  {
    const Matrix a = Matrix::from_rows(f, {{42}});
    FrobeniusForm form{1, Vector{f.from_i64(-42)}, Matrix::identity(1), Matrix::identity(1)};
    const PowerOracle o = build_power_oracle(f, a, form);
    CHECK(o.aux() == a);
    CHECK(o.window(1) == a);
  }
  std::uniform_int_distribution<std::size_t> d(1, 16);
  for (int it = 0; it < 10; ++it) {
    const std::size_t n = d(r);
    const Matrix a = Matrix::random(f, n, n, r);
    const PowerOracle o = build_power_oracle(f, a, compute_fnf(f, a, r));
    const Matrix c = companion_matrix(f, o.form().charpoly);
    Matrix uc = o.form().U;
    for (std::size_t k = 1; k <= n; ++k) {
      uc = naive_mul(f, uc, c);
      REQUIRE(o.window(k) == uc);
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j + 1 < n; ++j) REQUIRE(o.aux()(i, j) == o.form().U(i, j + 1));
  }
}

TEST_CASE("power queries") {
  const PrimeField f(kBigPrime);
  Rng r(10);
  const Matrix swap = Matrix::from_rows(f, {{0, 1}, {1, 0}});
  const PowerOracle so = build_power_oracle(f, swap, compute_fnf(f, swap, r));
  CHECK(query_cell_powers(so, 0, 1, 2) == Vector{{1}, {0}});
  CHECK(query_cell_powers(so, 0, 0, 2) == Vector{{0}, {1}});
  CHECK_THROWS_AS(query_cell_powers(so, 2, 0, 1), IndexOutOfRange);
  CHECK_THROWS_AS(query_submatrix_powers(so, {0}, {5}, 1), IndexOutOfRange);

  std::uniform_int_distribution<std::size_t> d(1, 32);
  for (int it = 0; it < 20; ++it) {
    const std::size_t n = d(r);
    const Matrix a = Matrix::random(f, n, n, r);
    const PowerOracle o = build_power_oracle(f, a, compute_fnf(f, a, r));
    const auto powers = naive_powers(f, a, n);

    IndexList all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    CHECK(query_submatrix_powers(o, all, all, 1).at(0) == a);

    for (std::size_t h : {std::size_t{1}, std::size_t{2}, std::size_t{3}, (n + 1) / 2, n}) {
      if (h > n) continue;
      const IndexList s = random_subset(n, r), t = random_subset(n, r);
      const auto got = query_submatrix_powers(o, s, t, h);
      REQUIRE(got.size() == h);
      for (std::size_t k = 0; k < h; ++k) REQUIRE(got[k] == sub_matrix(powers[k], s, t));
      const auto one = query_submatrix_powers(o, {s[0]}, {t[0]}, h);
      const Vector cell = query_cell_powers(o, s[0], t[0], h);
      for (std::size_t k = 0; k < h; ++k) REQUIRE(one[k](0, 0) == cell[k]);
    }
    const Vector v = random_vector(f, n, r);
    REQUIRE(vector_iterates_fast(o, v) == naive_krylov(f, a, v, n));
    REQUIRE(vector_iterates_fast(o, Vector(n)) == Iterates(n, Vector(n)));
    const auto ej = vector_iterates_fast(o, unit(n, 0));
    for (std::size_t k = 1; k < n; ++k) REQUIRE(ej[k] == powers[k - 1].column(0));
  }
}
