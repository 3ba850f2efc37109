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


#include "fnfdist/updates.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <string>
#include <utility>

#if defined(__x86_64__) && defined(__GNUC__) && !defined(FNFDIST_NO_IFMA)
#include <immintrin.h>
#endif

#include "fnfdist/errors.hpp"
#include "fnfdist/poly.hpp"

namespace fnfdist {

namespace {

constexpr std::size_t kBatchedMiddleCutoff = 32;
constexpr std::size_t kCoordinateBlock = 16;

#if defined(__x86_64__) && defined(__GNUC__) && !defined(FNFDIST_NO_IFMA)
#define FNFDIST_IFMA 1

// Karatsuba leaves are cheap enough with 8-lane 52-bit multiply-adds that a
// larger leaf wins.
constexpr std::size_t kVectorCutoff = 128;

bool have_ifma() {
  static const bool ok = __builtin_cpu_supports("avx512f") && __builtin_cpu_supports("avx512ifma");
  return ok;
}

// out[i*oi] = sum_{j<m} a[i + j] * b[j] for i < m8 (a multiple of 8), every
// operand below 2^52. Low and high halves of the products are summed in
// separate 64-bit lanes, which cannot overflow for m < 2^12.
__attribute__((target("avx512f,avx512ifma"))) void middle_ifma(const Scalar* a, const Scalar* b, std::size_t m,
                                                                std::size_t m8, u128* out, std::size_t oi) {
  alignas(64) u64 lo[32], hi[32];
  for (std::size_t i0 = 0; i0 < m8; i0 += 32) {
    const std::size_t nv = std::min<std::size_t>(4, (m8 - i0) / 8);
    __m512i l0 = _mm512_setzero_si512(), l1 = l0, l2 = l0, l3 = l0;
    __m512i h0 = l0, h1 = l0, h2 = l0, h3 = l0;
    const Scalar* base = a + i0;
    for (std::size_t j = 0; j < m; ++j) {
      const __m512i y = _mm512_set1_epi64(static_cast<long long>(b[j].v));
      const Scalar* row = base + j;
      const __m512i x0 = _mm512_loadu_si512(row);
      l0 = _mm512_madd52lo_epu64(l0, x0, y);
      h0 = _mm512_madd52hi_epu64(h0, x0, y);
      if (nv > 1) {
        const __m512i x1 = _mm512_loadu_si512(row + 8);
        l1 = _mm512_madd52lo_epu64(l1, x1, y);
        h1 = _mm512_madd52hi_epu64(h1, x1, y);
      }
      if (nv > 2) {
        const __m512i x2 = _mm512_loadu_si512(row + 16);
        l2 = _mm512_madd52lo_epu64(l2, x2, y);
        h2 = _mm512_madd52hi_epu64(h2, x2, y);
      }
      if (nv > 3) {
        const __m512i x3 = _mm512_loadu_si512(row + 24);
        l3 = _mm512_madd52lo_epu64(l3, x3, y);
        h3 = _mm512_madd52hi_epu64(h3, x3, y);
      }
    }
    _mm512_store_si512(lo, l0);
    _mm512_store_si512(lo + 8, l1);
    _mm512_store_si512(lo + 16, l2);
    _mm512_store_si512(lo + 24, l3);
    _mm512_store_si512(hi, h0);
    _mm512_store_si512(hi + 8, h1);
    _mm512_store_si512(hi + 16, h2);
    _mm512_store_si512(hi + 24, h3);
    for (std::size_t t = 0; t < 8 * nv; ++t) out[(i0 + t) * oi] = lo[t] + (static_cast<u128>(hi[t]) << 52);
  }
}
#endif

// Leaf size of the Karatsuba recursion and whether leaves use middle_ifma.
struct MiddleKernel {
  std::size_t cutoff = kBatchedMiddleCutoff;
  bool vector = false;
};

// Middle products of w sequences against one shared b:
//   out[c*oc + i*oi] = sum_{j<m} a[c*as + i + j] * b[j],  i < m,
// each sequence holding 2m-1 entries. One Karatsuba split of b serves every
// sequence. Outputs are u128 and congruent to the true value mod p.
//
// With Lazy set nothing is reduced: the differences a0 - a1 get an offset of
// 2^l p at depth l, so they stay non-negative, and every partial result stays
// an exact integer below m 4^L p^2. The caller checks that bound against
// 2^127 (lazy_fits). Otherwise every output is kept in [0, p).
template <bool Lazy>
class BatchedMiddle {
 public:
  BatchedMiddle(const PrimeField& field, MiddleKernel kernel, Scalar* scratch, u128* wide)
      : field_(field), kernel_(kernel), scratch_(scratch), wide_(wide) {}

  void run(const Scalar* a, std::size_t as, const Scalar* b, std::size_t m, std::size_t w, u64 bound, u128* out,
           std::size_t oc, std::size_t oi) {
    if (m < kernel_.cutoff) {
      base(a, as, b, m, w, out, oc, oi);
      return;
    }
    if (m % 2 == 1) {
      // Peel the last b term and the last output.
      const std::size_t e = m - 1;
      run(a, as, b, e, w, bound, out, oc, oi);
      const u64 be = b[e].v;
      for (std::size_t c = 0; c < w; ++c) {
        const Scalar* ac = a + c * as;
        u128* o = out + c * oc;
        for (std::size_t i = 0; i < e; ++i) {
          const u128 t = o[i * oi] + static_cast<u128>(ac[i + e].v) * be;
          o[i * oi] = Lazy ? t : field_.reduce(t);
        }
        o[e * oi] = dot(ac + e, b, m);
      }
      return;
    }
    // Blocks A_s = a[s*k, s*k + 2k - 1), B_J = b[J*k, J*k + k):
    //   r_0 = MP(A_1, B_0 + B_1) + MP(A_0 - A_1, B_0)
    //   r_1 = MP(A_1, B_0 + B_1) + MP(A_2 - A_1, B_1)
    const std::size_t k = m / 2;
    const std::size_t span = 2 * k - 1;
    Scalar* const mark = scratch_;
    u128* const wide_mark = wide_;
    Scalar* bsum = take(k);
    Scalar* d01 = take(span * w);
    Scalar* d21 = take(span * w);
    u128* beta = take_wide(k * w);
    u128* r0 = take_wide(k * w);
    u128* r1 = take_wide(k * w);
    for (std::size_t i = 0; i < k; ++i) bsum[i] = Lazy ? Scalar{b[i].v + b[k + i].v} : field_.add(b[i], b[k + i]);
    for (std::size_t c = 0; c < w; ++c) {
      const Scalar* a0 = a + c * as;
      const Scalar* a1 = a0 + k;
      const Scalar* a2 = a0 + 2 * k;
      Scalar* x01 = d01 + c * span;
      Scalar* x21 = d21 + c * span;
      if constexpr (Lazy) {
        for (std::size_t i = 0; i < span; ++i) {
          x01[i].v = a0[i].v + bound - a1[i].v;
          x21[i].v = a2[i].v + bound - a1[i].v;
        }
      } else {
        for (std::size_t i = 0; i < span; ++i) {
          x01[i] = field_.sub(a0[i], a1[i]);
          x21[i] = field_.sub(a2[i], a1[i]);
        }
      }
    }
    const u64 next = Lazy ? 2 * bound : bound;
    run(a + k, as, bsum, k, w, next, beta, k, 1);
    run(d01, span, b, k, w, next, r0, k, 1);
    run(d21, span, b + k, k, w, next, r1, k, 1);
    for (std::size_t c = 0; c < w; ++c) {
      u128* o = out + c * oc;
      const u128* bc = beta + c * k;
      const u128* p0 = r0 + c * k;
      const u128* p1 = r1 + c * k;
      for (std::size_t i = 0; i < k; ++i) {
        o[i * oi] = combine(bc[i], p0[i]);
        o[(k + i) * oi] = combine(bc[i], p1[i]);
      }
    }
    scratch_ = mark;
    wide_ = wide_mark;
  }

  // Scratch entries run() needs for size m and w sequences: narrow, wide.
  static std::pair<std::size_t, std::size_t> scratch_size(std::size_t m, std::size_t w, std::size_t cutoff) {
    std::size_t narrow = 0, wide = 0;
    while (m >= cutoff) {
      if (m % 2 == 1) {
        --m;
        continue;
      }
      const std::size_t k = m / 2;
      narrow += k + 2 * (2 * k - 1) * w;
      wide += 3 * k * w;
      m = k;
    }
    return {narrow, wide};
  }

  // Bit bound on lazy operands for a top-level size m.
  static unsigned operand_bits(const PrimeField& field, std::size_t m, std::size_t cutoff) {
    unsigned depth = 0;
    for (std::size_t mm = m; mm >= cutoff;) {
      if (mm % 2 == 1) {
        --mm;
      } else {
        mm /= 2;
        ++depth;
      }
    }
    return static_cast<unsigned>(std::bit_width(field.modulus())) + depth;
  }

  // Whether the lazy path is exact for a top-level size m over `field`, with
  // `spare` bits left over for summing several outputs.
  static bool lazy_fits(const PrimeField& field, std::size_t m, std::size_t cutoff, unsigned spare) {
    const unsigned bits = operand_bits(field, m, cutoff);
    const unsigned mbits = static_cast<unsigned>(std::bit_width(m));
    return bits <= 63 && 2 * bits + mbits + spare <= 127;
  }

 private:
  Scalar* take(std::size_t count) {
    Scalar* p = scratch_;
    scratch_ += count;
    return p;
  }
  u128* take_wide(std::size_t count) {
    u128* p = wide_;
    wide_ += count;
    return p;
  }

  u128 combine(u128 x, u128 y) const {
    if constexpr (Lazy) {
      return x + y;
    } else {
      return field_.add({static_cast<u64>(x)}, {static_cast<u64>(y)}).v;
    }
  }

  u128 dot(const Scalar* a, const Scalar* b, std::size_t m) const {
    if constexpr (Lazy) {
      u128 acc = 0;
      for (std::size_t j = 0; j < m; ++j) acc += static_cast<u128>(a[j].v) * b[j].v;
      return acc;
    } else {
      const std::size_t limit = field_.lazy_limit();
      u128 acc = 0;
      std::size_t cnt = 0;
      for (std::size_t j = 0; j < m; ++j) {
        acc += static_cast<u128>(a[j].v) * b[j].v;
        if (++cnt == limit) {
          acc = field_.reduce(acc);
          cnt = 1;
        }
      }
      return field_.reduce(acc);
    }
  }

  void base(const Scalar* a, std::size_t as, const Scalar* b, std::size_t m, std::size_t w, u128* out,
            std::size_t oc, std::size_t oi) const {
    for (std::size_t c = 0; c < w; ++c) {
      const Scalar* ac = a + c * as;
      u128* o = out + c * oc;
      std::size_t i = 0;
#ifdef FNFDIST_IFMA
      if (Lazy && kernel_.vector && m >= 8) {
        i = m - m % 8;
        middle_ifma(ac, b, m, i, o, oi);
      }
#endif
      if constexpr (Lazy) {
        // Four outputs share each b load and run independent carry chains.
        for (; i + 4 <= m; i += 4) {
          u128 s0 = 0, s1 = 0, s2 = 0, s3 = 0;
          for (std::size_t j = 0; j < m; ++j) {
            const u64 bj = b[j].v;
            s0 += static_cast<u128>(ac[i + j].v) * bj;
            s1 += static_cast<u128>(ac[i + j + 1].v) * bj;
            s2 += static_cast<u128>(ac[i + j + 2].v) * bj;
            s3 += static_cast<u128>(ac[i + j + 3].v) * bj;
          }
          o[i * oi] = s0;
          o[(i + 1) * oi] = s1;
          o[(i + 2) * oi] = s2;
          o[(i + 3) * oi] = s3;
        }
      }
      for (; i < m; ++i) o[i * oi] = dot(ac + i, b, m);
    }
  }

  const PrimeField& field_;
  MiddleKernel kernel_;
  Scalar* scratch_;
  u128* wide_;
};

struct Divide {
  const PrimeField& field;
  const PerturbationContext& ctx;
  std::size_t n;
  std::size_t base_case;
  bool lazy;
  MiddleKernel kernel;
  Vector alpha_t;  // alpha_t[k*n + s] = (A^s a)_k
  Vector scratch;
  std::vector<u128> wide;
  std::vector<u128> corr;     // one middle product, row-major: corr[i*n + k]
  std::vector<u128> pending;  // unreduced corrections, pending[j*n + k]
  Iterates x;                 // starts as delta, finished in place
  Vector d;                   // d_l = b . X_l

  void direct(std::size_t p, std::size_t q) {
    const std::size_t limit = field.lazy_limit();
    for (std::size_t j = p; j <= q; ++j) {
      Vector& xj = x[j];
      const u128* pj = pending.data() + j * n;
      for (std::size_t k = 0; k < n; ++k) {
        u128 acc = field.reduce(pj[k] + xj[k].v);
        std::size_t cnt = 1;
        for (std::size_t l = p; l < j; ++l) {
          acc += static_cast<u128>(ctx.alpha[j - 1 - l][k].v) * d[l].v;
          if (++cnt == limit) {
            acc = field.reduce(acc);
            cnt = 1;
          }
        }
        xj[k] = {field.reduce(acc)};
      }
      d[j] = dot(field, ctx.b, xj);
    }
  }

  void solve(std::size_t p, std::size_t q) {
    if (q - p <= base_case) {
      direct(p, q);
      return;
    }
    const std::size_t m = p + (q - p) / 2;
    solve(p, m);
    // For j = m+1+i:  sum_{t=0}^{m-p} alpha_(i+t) d_(m-t). The right half is
    // never longer than the left, so a square middle product of size m-p+1
    // covers it and reads alpha rows 0 .. 2(m-p) <= q-p only.
    const std::size_t len = m - p + 1;
    const std::size_t count = q - m;
    Vector rev(len);
    for (std::size_t t = 0; t < len; ++t) rev[t] = d[m - t];
    // Blocks of coordinates keep the recursion's temporaries in cache.
    for (std::size_t c0 = 0; c0 < n; c0 += kCoordinateBlock) {
      const std::size_t w = std::min(kCoordinateBlock, n - c0);
      const Scalar* a = alpha_t.data() + c0 * n;
      u128* out = corr.data() + c0;
      if (lazy) {
        BatchedMiddle<true>(field, kernel, scratch.data(), wide.data())
            .run(a, n, rev.data(), len, w, field.modulus(), out, 1, n);
      } else {
        BatchedMiddle<false>(field, kernel, scratch.data(), wide.data())
            .run(a, n, rev.data(), len, w, field.modulus(), out, 1, n);
      }
    }
    // Each iterate collects at most one correction per level; the lazy check
    // reserved room for all of them.
    u128* dst = pending.data() + (m + 1) * n;
    for (std::size_t e = 0; e < count * n; ++e) dst[e] += corr[e];
    solve(m + 1, q);
  }
};

}  // namespace

Iterates perturbed_iterates(const PrimeField& field, const PerturbationContext& ctx, std::size_t base_case) {
  const std::size_t n = ctx.b.size();
  if (ctx.delta.size() != n || ctx.alpha.size() != n) {
    throw DimensionMismatch("perturbed_iterates: need n delta and alpha vectors");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (ctx.delta[i].size() != n || ctx.alpha[i].size() != n) {
      throw DimensionMismatch("perturbed_iterates: vector length differs from n");
    }
  }
  if (n == 0) return {};
  // The top split has the largest middle product: size ceil(n/2).
  const std::size_t top = (n + 1) / 2;
  const std::size_t w = std::min(kCoordinateBlock, n);
  const auto levels = static_cast<unsigned>(std::bit_width(std::bit_width(n)));
  MiddleKernel kernel;
#ifdef FNFDIST_IFMA
  if (have_ifma() && BatchedMiddle<true>::operand_bits(field, top, kVectorCutoff) <= 52 &&
      BatchedMiddle<true>::lazy_fits(field, top, kVectorCutoff, levels)) {
    kernel = {kVectorCutoff, true};
  }
#endif
  const auto scratch = BatchedMiddle<true>::scratch_size(top, w, kernel.cutoff);
  Divide dc{field,
            ctx,
            n,
            std::max<std::size_t>(base_case, 1),
            BatchedMiddle<true>::lazy_fits(field, top, kernel.cutoff, levels),
            kernel,
            Vector(n * n),
            Vector(scratch.first),
            std::vector<u128>(scratch.second),
            std::vector<u128>(top * n),
            std::vector<u128>(n * n),
            ctx.delta,
            Vector(n)};
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t k = 0; k < n; ++k) dc.alpha_t[k * n + s] = ctx.alpha[s][k];
  dc.solve(0, n - 1);
  return std::move(dc.x);
}

Rank1Result rank1_update_fnf(const PrimeField& field, const Matrix& a, const PowerOracle& oracle,
                             const PowerOracle& oracle_transposed, const Vector& col, const Vector& row, Rng& rng,
                             std::size_t max_attempts) {
  const std::size_t n = a.rows();
  if (!a.is_square() || oracle.order() != n || oracle_transposed.order() != n || col.size() != n ||
      row.size() != n) {
    throw DimensionMismatch("rank1_update_fnf: shape mismatch");
  }
  if (max_attempts == 0) max_attempts = default_fnf_attempts(n);

  Matrix updated = a;
  for (std::size_t i = 0; i < n; ++i) {
    if (col[i].v == 0) continue;
    for (std::size_t j = 0; j < n; ++j) updated(i, j) = field.add(updated(i, j), field.mul(col[i], row[j]));
  }
  const Matrix updated_t = transpose(updated);

  // The transpose is A^T + row col^T: the two vectors swap roles.
  const Iterates alpha = vector_iterates_fast(oracle, col);
  const Iterates alpha_t = vector_iterates_fast(oracle_transposed, row);

  Vector u(n), v(n);
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    for (auto& e : u) e = field.random(rng);
    for (auto& e : v) e = field.random(rng);
    const Iterates xs = perturbed_iterates(field, {vector_iterates_fast(oracle, u), alpha, row});
    const Iterates ys = perturbed_iterates(field, {vector_iterates_fast(oracle_transposed, v), alpha_t, col});
    auto form = fnf_from_iterates(field, updated, xs, ys);
    if (!form) continue;
    auto form_t = fnf_from_iterates(field, updated_t, ys, xs);
    if (!form_t) continue;
    return {std::move(*form), std::move(*form_t)};
  }
  throw GenericityFailure("rank1_update_fnf: no generic vector pair after " + std::to_string(max_attempts) +
                          " attempts");
}

PolyMatrix resolvent_block(const IndexList& rows, const IndexList& cols, const std::vector<Matrix>& powers) {
  PolyMatrix z(rows.size(), cols.size(), powers.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (rows[i] == cols[j]) z.coeff(0)(i, j) = Scalar{1};
  for (std::size_t k = 0; k < powers.size(); ++k) {
    if (powers[k].rows() != rows.size() || powers[k].cols() != cols.size()) {
      throw DimensionMismatch("resolvent_block: power block has the wrong shape");
    }
    z.coeff(k + 1) = powers[k];
  }
  return z;
}

namespace {

// X * diag(delta) as an f x f polynomial matrix, then M * (X D) for a given M.
PolyMatrix times_xd(const PrimeField& field, const PolyMatrix& m, const Vector& delta) {
  PolyMatrix out(m.rows(), m.cols(), m.cap());
  for (std::size_t k = 0; k < m.cap(); ++k) {
    const Matrix& src = m.coeff(k);
    Matrix& dst = out.coeff(k + 1);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) dst(i, j) = field.mul(src(i, j), delta[j]);
  }
  return out;
}

// (X D) * M
PolyMatrix xd_times(const PrimeField& field, const Vector& delta, const PolyMatrix& m) {
  PolyMatrix out(m.rows(), m.cols(), m.cap());
  for (std::size_t k = 0; k < m.cap(); ++k) {
    const Matrix& src = m.coeff(k);
    Matrix& dst = out.coeff(k + 1);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) dst(i, j) = field.mul(delta[i], src(i, j));
  }
  return out;
}

}  // namespace

ElementUpdateBatch batch_preprocess(const PrimeField& field, const std::vector<Matrix>& powers_cr,
                                    std::vector<ElementChange> changes, std::size_t h) {
  if (powers_cr.size() != h) throw DimensionMismatch("batch_preprocess: need h power blocks");
  std::set<std::pair<Index, Index>> seen;
  for (const auto& c : changes) {
    if (!seen.emplace(c.row, c.col).second) {
      throw DuplicatePosition("batch_preprocess: position (" + std::to_string(c.row) + ", " +
                              std::to_string(c.col) + ") appears twice");
    }
  }
  const std::size_t f = changes.size();
  ElementUpdateBatch batch;
  batch.h_ = h;
  batch.rows_.reserve(f);
  batch.cols_.reserve(f);
  batch.delta_.reserve(f);
  for (const auto& c : changes) {
    batch.rows_.push_back(c.row);
    batch.cols_.push_back(c.col);
    batch.delta_.push_back(field.sub(c.value, c.previous));
  }
  batch.changes_ = std::move(changes);
  batch.vzu_ = resolvent_block(batch.cols_, batch.rows_, powers_cr);

  // W = X D (V Z U) has no constant term, so (I - W)^(-1) = prod_j (I + W^(2^j))
  // over the j with 2^j <= h.
  PolyMatrix w = xd_times(field, batch.delta_, batch.vzu_);
  PolyMatrix p = PolyMatrix::identity(f, h);
  for (std::size_t step = 1; step <= h; step *= 2) {
    p = polymat_mul(field, p, polymat_add(field, PolyMatrix::identity(f, h), w), h);
    if (step * 2 <= h) w = polymat_mul(field, w, w, h);
  }
  batch.p_ = std::move(p);
  return batch;
}

std::vector<Matrix> batch_query(const PrimeField& field, const ElementUpdateBatch& batch, const IndexList& x,
                                const IndexList& y, const std::vector<Matrix>& powers_xr,
                                const std::vector<Matrix>& powers_cy, const std::vector<Matrix>& powers_xy) {
  const std::size_t h = batch.h();
  if (powers_xr.size() != h || powers_cy.size() != h || powers_xy.size() != h) {
    throw DimensionMismatch("batch_query: need h power blocks for every argument");
  }
  PolyMatrix result = resolvent_block(x, y, powers_xy);
  if (batch.size() > 0 && !x.empty() && !y.empty()) {
    const PolyMatrix zu = resolvent_block(x, batch.rows(), powers_xr);
    const PolyMatrix vz = resolvent_block(batch.cols(), y, powers_cy);
    const PolyMatrix pxd = times_xd(field, batch.P(), batch.delta());
    // Multiply through the smaller outer dimension first.
    const PolyMatrix corr = x.size() <= y.size()
                                ? polymat_mul(field, polymat_mul(field, zu, pxd, h), vz, h)
                                : polymat_mul(field, zu, polymat_mul(field, pxd, vz, h), h);
    result = polymat_add(field, result, corr);
  }
  std::vector<Matrix> out(result.coefficients().begin() + 1, result.coefficients().end());
  return out;
}

}  // namespace fnfdist
