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

#include "fnfdist/field.hpp"

#include <array>
#include <stdexcept>
#include <string>

#include "fnfdist/errors.hpp"

namespace fnfdist {

PrimeField::PrimeField(u64 p) : p_(p) {
  if (p < 3 || (p & 1) == 0 || p >= (u64{1} << 63)) {
    throw std::invalid_argument("field modulus must be an odd prime below 2^63, got " + std::to_string(p));
  }
  const u128 m = ~u128{0} / p;
  m0_ = static_cast<u64>(m);
  m1_ = static_cast<u64>(m >> 64);
  const u128 sq = static_cast<u128>(p - 1) * (p - 1);
  const u128 lim = ~u128{0} / sq;
  lazy_limit_ = lim > (u128{1} << 40) ? (std::size_t{1} << 40) : static_cast<std::size_t>(lim);
}

Scalar PrimeField::from_i64(std::int64_t x) const noexcept {
  if (x >= 0) return from_u64(static_cast<u64>(x));
  const u64 m = static_cast<u64>(-(x + 1)) + 1;
  return neg(from_u64(m));
}

Scalar PrimeField::pow(Scalar a, u64 e) const noexcept {
  Scalar r = one();
  while (e != 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Scalar PrimeField::inv(Scalar a) const {
  if (a.v == 0) throw ZeroInverse();
  return pow(a, p_ - 2);
}

Scalar PrimeField::random(Rng& rng) const {
  std::uniform_int_distribution<u64> dist(0, p_ - 1);
  return {dist(rng)};
}

Scalar PrimeField::random_nonzero(Rng& rng) const {
  std::uniform_int_distribution<u64> dist(1, p_ - 1);
  return {dist(rng)};
}

Scalar dot(const PrimeField& field, const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot: length mismatch");
  LazyAccumulator acc(field);
  for (std::size_t i = 0; i < a.size(); ++i) acc.add_product(a[i], b[i]);
  return acc.value();
}

namespace {

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e != 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

bool miller_rabin_round(u64 n, u64 a, u64 d, int s) {
  a %= n;
  if (a == 0) return true;
  u64 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace

bool is_probable_prime(u64 n, Rng& rng, int rounds) {
  if (n < 2) return false;
  static constexpr std::array<u64, 12> kSmall = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 q : kSmall) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  int done = 0;
  for (u64 a : kSmall) {
    if (!miller_rabin_round(n, a, d, s)) return false;
    ++done;
  }
  std::uniform_int_distribution<u64> dist(2, n - 2);
  for (; done < rounds; ++done) {
    if (!miller_rabin_round(n, dist(rng), d, s)) return false;
  }
  return true;
}

PrimeField sample_prime(std::size_t n, unsigned c, Rng& rng) {
  if (n < 1 || c < 1) throw std::invalid_argument("sample_prime: need n >= 1 and c >= 1");
  constexpr u64 kFloor = u64{1} << 20;
  constexpr u64 kCeiling = u64{1} << 62;
  u64 bound = 1;
  for (unsigned i = 0; i < 4 + c; ++i) {
    if (bound > kCeiling / n) {
      throw std::invalid_argument("sample_prime: n^(4+c) exceeds the 63-bit modulus range");
    }
    bound *= n;
  }
  const u64 lo = bound < kFloor ? kFloor : bound;
  std::uniform_int_distribution<u64> dist(lo, 2 * lo);
  for (;;) {
    u64 candidate = dist(rng) | 1;
    if (candidate > 2 * lo) continue;
    if (is_probable_prime(candidate, rng)) return PrimeField(candidate);
  }
}

}  // namespace fnfdist
