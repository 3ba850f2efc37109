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

#include "fnfdist/poly.hpp"

#include <algorithm>

#include "fnfdist/errors.hpp"

namespace fnfdist {

Poly::Poly(Vector coeffs, std::optional<std::size_t> cap) : coeffs_(std::move(coeffs)), cap_(cap) {
  normalize();
}

Poly Poly::from_i64(const PrimeField& field, std::initializer_list<std::int64_t> coeffs,
                    std::optional<std::size_t> cap) {
  Vector v;
  v.reserve(coeffs.size());
  for (std::int64_t c : coeffs) v.push_back(field.from_i64(c));
  return Poly(std::move(v), cap);
}

void Poly::normalize() {
  if (cap_ && coeffs_.size() > *cap_ + 1) coeffs_.resize(*cap_ + 1);
  while (!coeffs_.empty() && coeffs_.back().v == 0) coeffs_.pop_back();
}

namespace {

std::optional<std::size_t> min_cap(std::optional<std::size_t> a, std::optional<std::size_t> b) {
  if (a && b) return std::min(*a, *b);
  return a ? a : b;
}

constexpr std::size_t kSchoolbookCutoff = 32;

void school(const PrimeField& field, const Scalar* a, std::size_t n, const Scalar* b, std::size_t m, Scalar* out) {
  const std::size_t limit = field.lazy_limit();
  for (std::size_t k = 0; k + 1 < n + m; ++k) {
    const std::size_t lo = k + 1 > m ? k + 1 - m : 0;
    const std::size_t hi = std::min(k, n - 1);
    u128 acc = 0;
    std::size_t cnt = 0;
    for (std::size_t i = lo; i <= hi; ++i) {
      acc += static_cast<u128>(a[i].v) * b[k - i].v;
      if (++cnt == limit) {
        acc = field.reduce(acc);
        cnt = 1;
      }
    }
    out[k] = {field.reduce(acc)};
  }
}

// out has 2n-1 entries.
void karatsuba(const PrimeField& field, const Scalar* a, const Scalar* b, std::size_t n, Scalar* out) {
  if (n < kSchoolbookCutoff) {
    school(field, a, n, b, n, out);
    return;
  }
  const std::size_t k = n / 2;
  const std::size_t k2 = n - k;
  std::fill(out, out + 2 * n - 1, Scalar{0});

  Vector z0(2 * k - 1), z2(2 * k2 - 1), z1(2 * k2 - 1);
  karatsuba(field, a, b, k, z0.data());
  karatsuba(field, a + k, b + k, k2, z2.data());

  Vector sa(k2), sb(k2);
  for (std::size_t i = 0; i < k2; ++i) {
    sa[i] = i < k ? field.add(a[i], a[k + i]) : a[k + i];
    sb[i] = i < k ? field.add(b[i], b[k + i]) : b[k + i];
  }
  karatsuba(field, sa.data(), sb.data(), k2, z1.data());
  for (std::size_t i = 0; i < z0.size(); ++i) z1[i] = field.sub(z1[i], z0[i]);
  for (std::size_t i = 0; i < z2.size(); ++i) z1[i] = field.sub(z1[i], z2[i]);

  for (std::size_t i = 0; i < z0.size(); ++i) out[i] = field.add(out[i], z0[i]);
  for (std::size_t i = 0; i < z1.size(); ++i) out[k + i] = field.add(out[k + i], z1[i]);
  for (std::size_t i = 0; i < z2.size(); ++i) out[2 * k + i] = field.add(out[2 * k + i], z2[i]);
}

// r_i = sum_{j<n} a_{i+j} b_j for i < n; a has 2n-1 entries.
void middle_direct(const PrimeField& field, const Scalar* a, const Scalar* b, std::size_t n, Scalar* out) {
  const std::size_t limit = field.lazy_limit();
  for (std::size_t i = 0; i < n; ++i) {
    u128 acc = 0;
    std::size_t cnt = 0;
    for (std::size_t j = 0; j < n; ++j) {
      acc += static_cast<u128>(a[i + j].v) * b[j].v;
      if (++cnt == limit) {
        acc = field.reduce(acc);
        cnt = 1;
      }
    }
    out[i] = {field.reduce(acc)};
  }
}

void middle_karatsuba(const PrimeField& field, const Scalar* a, const Scalar* b, std::size_t n, Scalar* out) {
  if (n < kSchoolbookCutoff) {
    middle_direct(field, a, b, n, out);
    return;
  }
  if (n % 2 == 1) {
    Vector ap(a, a + 2 * n - 1), bp(b, b + n);
    ap.resize(2 * n + 1);
    bp.resize(n + 1);
    Vector r(n + 1);
    middle_karatsuba(field, ap.data(), bp.data(), n + 1, r.data());
    std::copy_n(r.begin(), n, out);
    return;
  }
  // With blocks A_s = a[s*k, s*k + 2k - 1) and B_J = b[J*k, J*k + k):
  //   r_0 = MP(A_0, B_0) + MP(A_1, B_1),  r_1 = MP(A_1, B_0) + MP(A_2, B_1).
  const std::size_t k = n / 2;
  const std::size_t w = 2 * k - 1;
  const Scalar* a0 = a;
  const Scalar* a1 = a + k;
  const Scalar* a2 = a + 2 * k;
  Vector bsum(k), d01(w), d21(w);
  for (std::size_t i = 0; i < k; ++i) bsum[i] = field.add(b[i], b[k + i]);
  for (std::size_t i = 0; i < w; ++i) {
    d01[i] = field.sub(a0[i], a1[i]);
    d21[i] = field.sub(a2[i], a1[i]);
  }
  Vector beta(k), r0(k), r1(k);
  middle_karatsuba(field, a1, bsum.data(), k, beta.data());
  middle_karatsuba(field, d01.data(), b, k, r0.data());
  middle_karatsuba(field, d21.data(), b + k, k, r1.data());
  for (std::size_t i = 0; i < k; ++i) {
    out[i] = field.add(beta[i], r0[i]);
    out[k + i] = field.add(beta[i], r1[i]);
  }
}

}  // namespace

namespace kernels {

Vector multiply(const PrimeField& field, std::span<const Scalar> a, std::span<const Scalar> b) {
  if (a.empty() || b.empty()) return {};
  if (a.size() < b.size()) std::swap(a, b);
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  Vector out(n + m - 1, Scalar{0});
  if (m < kSchoolbookCutoff) {
    school(field, a.data(), n, b.data(), m, out.data());
    return out;
  }
  // Split the longer operand into m-sized chunks and run balanced Karatsuba.
  Vector chunk(m), part(2 * m - 1);
  for (std::size_t off = 0; off < n; off += m) {
    const std::size_t len = std::min(m, n - off);
    std::fill(chunk.begin(), chunk.end(), Scalar{0});
    std::copy_n(a.begin() + static_cast<std::ptrdiff_t>(off), len, chunk.begin());
    karatsuba(field, chunk.data(), b.data(), m, part.data());
    const std::size_t used = std::min(part.size(), out.size() - off);
    for (std::size_t i = 0; i < used; ++i) out[off + i] = field.add(out[off + i], part[i]);
  }
  return out;
}

Vector middle_product(const PrimeField& field, std::span<const Scalar> a, std::span<const Scalar> b,
                      std::size_t count) {
  const std::size_t n = std::max(b.size(), count);
  if (n == 0) return {};
  Vector ap(2 * n - 1, Scalar{0}), bp(n, Scalar{0});
  std::copy_n(a.begin(), std::min(a.size(), ap.size()), ap.begin());
  std::copy(b.begin(), b.end(), bp.begin());
  Vector r(n);
  middle_karatsuba(field, ap.data(), bp.data(), n, r.data());
  r.resize(count);
  return r;
}

}  // namespace kernels

Poly poly_add(const PrimeField& field, const Poly& f, const Poly& g) {
  Vector out(std::max(f.coeffs().size(), g.coeffs().size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = field.add(f.coeff(i), g.coeff(i));
  return Poly(std::move(out), min_cap(f.cap(), g.cap()));
}

Poly poly_sub(const PrimeField& field, const Poly& f, const Poly& g) {
  Vector out(std::max(f.coeffs().size(), g.coeffs().size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = field.sub(f.coeff(i), g.coeff(i));
  return Poly(std::move(out), min_cap(f.cap(), g.cap()));
}

Poly poly_mul(const PrimeField& field, const Poly& f, const Poly& g) {
  const auto cap = min_cap(f.cap(), g.cap());
  std::span<const Scalar> a(f.coeffs());
  std::span<const Scalar> b(g.coeffs());
  if (cap) {
    a = a.first(std::min(a.size(), *cap + 1));
    b = b.first(std::min(b.size(), *cap + 1));
  }
  return Poly(kernels::multiply(field, a, b), cap);
}

Poly poly_series_inv(const PrimeField& field, const Poly& f, std::size_t k) {
  if (f.coeff(0).v == 0) throw NotInvertibleSeries();
  const std::size_t target = k + 1;
  Vector g{field.inv(f.coeff(0))};
  const Scalar two = field.from_u64(2);
  std::size_t len = 1;
  while (len < target) {
    len = std::min(2 * len, target);
    std::span<const Scalar> fs(f.coeffs());
    fs = fs.first(std::min(fs.size(), len));
    Vector fg = kernels::multiply(field, fs, g);
    fg.resize(len, Scalar{0});
    for (auto& c : fg) c = field.neg(c);
    fg[0] = field.add(fg[0], two);
    Vector next = kernels::multiply(field, g, fg);
    next.resize(len, Scalar{0});
    g = std::move(next);
  }
  g.resize(target, Scalar{0});
  return Poly(std::move(g), k);
}

}  // namespace fnfdist
