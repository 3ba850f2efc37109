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
#include <ostream>
#include <random>
#include <vector>

#if !defined(__SIZEOF_INT128__)
#error "fnfdist requires unsigned __int128 (GCC/Clang)."
#endif

namespace fnfdist {

using u64 = std::uint64_t;
__extension__ using u128 = unsigned __int128;

// Every randomized routine draws from a caller-owned generator of this type.
using Rng = std::mt19937_64;

// Element of Z/pZ. Always the canonical residue in [0, p).
struct Scalar {
  u64 v = 0;

  friend constexpr bool operator==(Scalar a, Scalar b) noexcept { return a.v == b.v; }
  friend std::ostream& operator<<(std::ostream& os, Scalar a) { return os << a.v; }
};

using Vector = std::vector<Scalar>;

// Arithmetic context for a prime field Z/pZ with an odd prime p < 2^63.
//
// Products are reduced with a precomputed Barrett reciprocal instead of a
// 128-by-64 division. Sums of up to lazy_limit() unreduced products fit in a
// u128 accumulator, which the dense kernels exploit.
class PrimeField {
 public:
  explicit PrimeField(u64 p);

  u64 modulus() const noexcept { return p_; }

  Scalar zero() const noexcept { return {0}; }
  Scalar one() const noexcept { return {1}; }

  Scalar from_u64(u64 x) const noexcept { return {x % p_}; }
  Scalar from_i64(std::int64_t x) const noexcept;

  Scalar add(Scalar a, Scalar b) const noexcept {
    u64 s = a.v + b.v;
    return {s >= p_ ? s - p_ : s};
  }
  Scalar sub(Scalar a, Scalar b) const noexcept { return {a.v >= b.v ? a.v - b.v : a.v + p_ - b.v}; }
  Scalar neg(Scalar a) const noexcept { return {a.v == 0 ? 0 : p_ - a.v}; }
  Scalar mul(Scalar a, Scalar b) const noexcept { return {reduce(static_cast<u128>(a.v) * b.v)}; }

  // Throws ZeroInverse for a = 0.
  Scalar inv(Scalar a) const;
  Scalar pow(Scalar a, u64 e) const noexcept;

  Scalar random(Rng& rng) const;
  Scalar random_nonzero(Rng& rng) const;

  u64 reduce(u128 x) const noexcept {
    const u64 x0 = static_cast<u64>(x);
    const u64 x1 = static_cast<u64>(x >> 64);
    // Under-estimates floor(x / p) by a small constant; corrected below.
    u128 q = static_cast<u128>(x1) * m1_ + ((static_cast<u128>(x1) * m0_) >> 64) +
             ((static_cast<u128>(x0) * m1_) >> 64);
    u128 r = x - q * p_;
    while (r >= p_) r -= p_;
    return static_cast<u64>(r);
  }

  // Number of products (p-1)^2 that can be summed in a u128 without overflow.
  std::size_t lazy_limit() const noexcept { return lazy_limit_; }

  friend bool operator==(const PrimeField& a, const PrimeField& b) noexcept { return a.p_ == b.p_; }

 private:
  u64 p_;
  u64 m0_ = 0;
  u64 m1_ = 0;
  std::size_t lazy_limit_ = 0;
};

// Accumulates a dot product with delayed reduction.
class LazyAccumulator {
 public:
  explicit LazyAccumulator(const PrimeField& field) : field_(&field), limit_(field.lazy_limit()) {}

  void add_product(Scalar a, Scalar b) noexcept {
    acc_ += static_cast<u128>(a.v) * b.v;
    if (++count_ == limit_) flush();
  }
  void add(Scalar a) noexcept { add_product(a, Scalar{1}); }

  Scalar value() const noexcept { return {field_->reduce(acc_)}; }

 private:
  void flush() noexcept {
    acc_ = field_->reduce(acc_);
    count_ = 1;
  }

  const PrimeField* field_;
  std::size_t limit_;
  u128 acc_ = 0;
  std::size_t count_ = 0;
};

Scalar dot(const PrimeField& field, const Vector& a, const Vector& b);

// Miller-Rabin with the deterministic 64-bit witness set followed by random
// bases until `rounds` rounds have been performed.
bool is_probable_prime(u64 n, Rng& rng, int rounds = 40);

// Samples a prime uniformly-by-rejection from [L, 2L] with
// L = max(n^(4+c), 2^20). Throws std::invalid_argument when L exceeds 2^62.
PrimeField sample_prime(std::size_t n, unsigned c, Rng& rng);

}  // namespace fnfdist
