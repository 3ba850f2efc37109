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

#include "fnfdist/polymatrix.hpp"

#include <algorithm>
#include <stdexcept>

#include "fnfdist/errors.hpp"

namespace fnfdist {

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, std::size_t cap)
    : rows_(rows), cols_(cols), coeffs_(cap + 1, Matrix(rows, cols)) {}

PolyMatrix::PolyMatrix(std::vector<Matrix> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw DimensionMismatch("PolyMatrix: need at least one coefficient matrix");
  rows_ = coeffs_.front().rows();
  cols_ = coeffs_.front().cols();
  for (const auto& c : coeffs_) {
    if (c.rows() != rows_ || c.cols() != cols_) throw DimensionMismatch("PolyMatrix: coefficient shapes differ");
  }
}

PolyMatrix PolyMatrix::identity(std::size_t n, std::size_t cap) {
  PolyMatrix p(n, n, cap);
  p.coeffs_[0] = Matrix::identity(n);
  return p;
}

Poly PolyMatrix::entry(std::size_t i, std::size_t j) const {
  Vector c(coeffs_.size());
  for (std::size_t k = 0; k < coeffs_.size(); ++k) c[k] = coeffs_[k](i, j);
  return Poly(std::move(c), cap());
}

void PolyMatrix::set_entry(std::size_t i, std::size_t j, const Poly& p) {
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k](i, j) = p.coeff(k);
}

PolyMatrix polymat_add(const PrimeField& field, const PolyMatrix& p, const PolyMatrix& q) {
  if (p.rows() != q.rows() || p.cols() != q.cols()) throw DimensionMismatch("polymat_add: shape mismatch");
  PolyMatrix r(p.rows(), p.cols(), std::min(p.cap(), q.cap()));
  for (std::size_t k = 0; k <= r.cap(); ++k) r.coeff(k) = mat_add(field, p.coeff(k), q.coeff(k));
  return r;
}

PolyMatrix polymat_sub(const PrimeField& field, const PolyMatrix& p, const PolyMatrix& q) {
  if (p.rows() != q.rows() || p.cols() != q.cols()) throw DimensionMismatch("polymat_sub: shape mismatch");
  PolyMatrix r(p.rows(), p.cols(), std::min(p.cap(), q.cap()));
  for (std::size_t k = 0; k <= r.cap(); ++k) r.coeff(k) = mat_sub(field, p.coeff(k), q.coeff(k));
  return r;
}

namespace {

bool is_zero(const Matrix& m) {
  return std::all_of(m.entries().begin(), m.entries().end(), [](Scalar s) { return s.v == 0; });
}

// Index of the highest nonzero coefficient matrix, or -1.
std::ptrdiff_t effective_degree(const PolyMatrix& p) {
  for (std::size_t k = p.cap() + 1; k-- > 0;) {
    if (!is_zero(p.coeff(k))) return static_cast<std::ptrdiff_t>(k);
  }
  return -1;
}

Scalar dot_mod(const PrimeField& field, const Scalar* x, const Scalar* y, std::size_t len) {
  if (len <= field.lazy_limit()) {
    u128 acc = 0;
    for (std::size_t l = 0; l < len; ++l) acc += static_cast<u128>(x[l].v) * y[l].v;
    return {field.reduce(acc)};
  }
  LazyAccumulator acc(field);
  for (std::size_t l = 0; l < len; ++l) acc.add_product(x[l], y[l]);
  return acc.value();
}

// Sum_t weights[t] * mats[t] with one reduction per entry (per lazy window).
Matrix combine(const PrimeField& field, const std::vector<Matrix>& mats, const Vector& weights, std::size_t rows,
               std::size_t cols) {
  std::vector<u128> acc(rows * cols, 0);
  const std::size_t limit = field.lazy_limit();
  std::size_t count = 0;
  for (std::size_t t = 0; t < mats.size(); ++t) {
    const u64 w = weights[t].v;
    if (w == 0) continue;
    const auto& e = mats[t].entries();
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += static_cast<u128>(w) * e[i].v;
    if (++count == limit) {
      for (auto& s : acc) s = field.reduce(s);
      count = 1;
    }
  }
  Vector out(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) out[i] = {field.reduce(acc[i])};
  return Matrix(rows, cols, std::move(out));
}

std::vector<Matrix> window_by_convolution(const PrimeField& field, const PolyMatrix& p, const PolyMatrix& q,
                                          std::size_t dp, std::size_t dq, std::size_t lo, std::size_t hi) {
  std::vector<Matrix> out;
  out.reserve(hi - lo + 1);
  for (std::size_t t = lo; t <= hi; ++t) {
    Matrix acc(p.rows(), q.cols());
    const std::size_t a_lo = t > dq ? t - dq : 0;
    const std::size_t a_hi = std::min(t, dp);
    for (std::size_t a = a_lo; a <= a_hi && a_lo <= a_hi; ++a) {
      if (is_zero(p.coeff(a)) || is_zero(q.coeff(t - a))) continue;
      acc = mat_add(field, acc, mat_mul(field, p.coeff(a), q.coeff(t - a)));
    }
    out.push_back(std::move(acc));
  }
  return out;
}

// powers[t][a] = t^a for the points t = 0 .. npts-1.
std::vector<Vector> point_powers(const PrimeField& field, std::size_t npts, std::size_t maxdeg) {
  std::vector<Vector> powers(npts, Vector(maxdeg + 1));
  for (std::size_t t = 0; t < npts; ++t) {
    const Scalar x = field.from_u64(t);
    Scalar acc = field.one();
    for (std::size_t a = 0; a <= maxdeg; ++a) {
      powers[t][a] = acc;
      acc = field.mul(acc, x);
    }
  }
  return powers;
}

// basis[d - lo][t] = coefficient of x^d in the Lagrange polynomial L_t on the
// points 0 .. npts-1, for d in [lo, hi]. L_t(x) = M(x) / ((x - t) w_t) with
// M(x) = prod_s (x - s) and w_t = prod_{s != t} (t - s).
std::vector<Vector> lagrange_rows(const PrimeField& field, std::size_t npts, std::size_t lo, std::size_t hi) {
  Vector master{field.one()};
  for (std::size_t s = 0; s < npts; ++s) {
    Vector next(master.size() + 1, Scalar{0});
    const Scalar ns = field.neg(field.from_u64(s));
    for (std::size_t i = 0; i < master.size(); ++i) {
      next[i + 1] = field.add(next[i + 1], master[i]);
      next[i] = field.add(next[i], field.mul(master[i], ns));
    }
    master = std::move(next);
  }
  Vector fact(npts);
  fact[0] = field.one();
  for (std::size_t i = 1; i < npts; ++i) fact[i] = field.mul(fact[i - 1], field.from_u64(i));

  std::vector<Vector> basis(hi - lo + 1, Vector(npts));
  Vector quotient(npts);
  for (std::size_t t = 0; t < npts; ++t) {
    // Synthetic division of master by (x - t).
    const Scalar xt = field.from_u64(t);
    Scalar carry = field.zero();
    for (std::size_t i = npts; i-- > 0;) {
      carry = field.add(master[i + 1], field.mul(carry, xt));
      quotient[i] = carry;
    }
    Scalar w = field.mul(fact[t], fact[npts - 1 - t]);
    if ((npts - 1 - t) % 2 == 1) w = field.neg(w);
    const Scalar winv = field.inv(w);
    for (std::size_t d = lo; d <= hi; ++d) {
      basis[d - lo][t] = d < npts ? field.mul(quotient[d], winv) : field.zero();
    }
  }
  return basis;
}

// Per-point factors of a product: row i of every left factor is one contiguous
// run left[i][t][l], and column j of every right factor likewise.
struct PointFactors {
  std::size_t npts, rows, inner, cols;
  std::vector<Scalar> left, right;

  PointFactors(std::size_t npts_, std::size_t rows_, std::size_t inner_, std::size_t cols_)
      : npts(npts_), rows(rows_), inner(inner_), cols(cols_), left(rows_ * npts_ * inner_),
        right(cols_ * npts_ * inner_) {}

  void set(std::size_t t, const Matrix& l, const Matrix& r) {
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t k = 0; k < inner; ++k) left[(i * npts + t) * inner + k] = l(i, k);
    for (std::size_t k = 0; k < inner; ++k)
      for (std::size_t j = 0; j < cols; ++j) right[(j * npts + t) * inner + k] = r(k, j);
  }

  // out[d] = sum_t weights[d][t] * left_t * right_t. A few rows at a time
  // against each column, so the point products never leave cache.
  std::vector<Matrix> combine_products(const PrimeField& field, const std::vector<Vector>& weights) const {
    constexpr std::size_t kRows = 4;
    std::vector<Matrix> out(weights.size(), Matrix(rows, cols));
    std::vector<Scalar> vals(kRows * npts);
    for (std::size_t i0 = 0; i0 < rows; i0 += kRows) {
      const std::size_t nr = std::min(kRows, rows - i0);
      for (std::size_t j = 0; j < cols; ++j) {
        const Scalar* y = right.data() + j * npts * inner;
        for (std::size_t r = 0; r < nr; ++r) {
          const Scalar* x = left.data() + (i0 + r) * npts * inner;
          for (std::size_t t = 0; t < npts; ++t)
            vals[r * npts + t] = dot_mod(field, x + t * inner, y + t * inner, inner);
        }
        for (std::size_t d = 0; d < weights.size(); ++d) {
          for (std::size_t r = 0; r < nr; ++r)
            out[d](i0 + r, j) = dot_mod(field, weights[d].data(), vals.data() + r * npts, npts);
        }
      }
    }
    return out;
  }
};

// Evaluate both factors at dp + dq + 1 points, multiply, interpolate.
std::vector<Matrix> window_by_evaluation(const PrimeField& field, const PolyMatrix& p, const PolyMatrix& q,
                                         std::size_t dp, std::size_t dq, std::size_t lo, std::size_t hi) {
  const std::size_t npts = dp + dq + 1;
  const auto powers = point_powers(field, npts, std::max(dp, dq));
  const std::vector<Matrix> pc(p.coefficients().begin(), p.coefficients().begin() + static_cast<std::ptrdiff_t>(dp + 1));
  const std::vector<Matrix> qc(q.coefficients().begin(), q.coefficients().begin() + static_cast<std::ptrdiff_t>(dq + 1));
  PointFactors f(npts, p.rows(), p.cols(), q.cols());
  for (std::size_t t = 0; t < npts; ++t) {
    const Vector wp(powers[t].begin(), powers[t].begin() + static_cast<std::ptrdiff_t>(dp + 1));
    const Vector wq(powers[t].begin(), powers[t].begin() + static_cast<std::ptrdiff_t>(dq + 1));
    f.set(t, combine(field, pc, wp, p.rows(), p.cols()), combine(field, qc, wq, q.rows(), q.cols()));
  }
  return f.combine_products(field, lagrange_rows(field, npts, lo, hi));
}

// Window inside [dq, dp]: every output coefficient sees all of q, so the
// window is a middle product. Transposing evaluate-multiply-interpolate for a
// (width) x (dq + 1) product needs only width + dq points:
//   out_a = sum_t t^a * (sum_k L[k][t] P_(lo-dq+k)) * Q~(t),
// with L the inverse Vandermonde matrix and Q~ the reversal of q.
std::vector<Matrix> window_by_transposition(const PrimeField& field, const PolyMatrix& p, const PolyMatrix& q,
                                            std::size_t dq, std::size_t lo, std::size_t hi) {
  const std::size_t width = hi - lo + 1;
  const std::size_t npts = width + dq;
  const auto powers = point_powers(field, npts, std::max(width - 1, dq));
  const auto inv_vandermonde = lagrange_rows(field, npts, 0, npts - 1);
  const std::vector<Matrix> zc(p.coefficients().begin() + static_cast<std::ptrdiff_t>(lo - dq),
                               p.coefficients().begin() + static_cast<std::ptrdiff_t>(hi + 1));
  std::vector<Matrix> qrev(q.coefficients().begin(), q.coefficients().begin() + static_cast<std::ptrdiff_t>(dq + 1));
  std::reverse(qrev.begin(), qrev.end());
  PointFactors f(npts, p.rows(), p.cols(), q.cols());
  Vector wz(npts);
  for (std::size_t t = 0; t < npts; ++t) {
    for (std::size_t k = 0; k < npts; ++k) wz[k] = inv_vandermonde[k][t];
    const Vector wq(powers[t].begin(), powers[t].begin() + static_cast<std::ptrdiff_t>(dq + 1));
    f.set(t, combine(field, zc, wz, p.rows(), p.cols()), combine(field, qrev, wq, q.rows(), q.cols()));
  }
  std::vector<Vector> weights(width, Vector(npts));
  for (std::size_t a = 0; a < width; ++a)
    for (std::size_t t = 0; t < npts; ++t) weights[a][t] = powers[t][a];
  return f.combine_products(field, weights);
}

}  // namespace

std::vector<Matrix> polymat_mul_window(const PrimeField& field, const PolyMatrix& p, const PolyMatrix& q,
                                       std::size_t lo, std::size_t hi, WindowRoute route) {
  if (p.cols() != q.rows()) throw DimensionMismatch("polymat_mul: inner dimensions differ");
  if (lo > hi) return {};
  const std::ptrdiff_t edp = effective_degree(p);
  const std::ptrdiff_t edq = effective_degree(q);
  if (edp < 0 || edq < 0 || lo > static_cast<std::size_t>(edp + edq)) {
    return std::vector<Matrix>(hi - lo + 1, Matrix(p.rows(), q.cols()));
  }
  const auto dp = static_cast<std::size_t>(edp);
  const auto dq = static_cast<std::size_t>(edq);
  const std::size_t top = std::min(hi, dp + dq);

  const double r = static_cast<double>(p.rows());
  const double in = static_cast<double>(p.cols());
  const double c = static_cast<double>(q.cols());
  double pairs = 0;
  for (std::size_t t = lo; t <= top; ++t) {
    const std::size_t a_lo = t > dq ? t - dq : 0;
    const std::size_t a_hi = std::min(t, dp);
    if (a_lo <= a_hi) pairs += static_cast<double>(a_hi - a_lo + 1);
  }
  const double conv_cost = pairs * r * in * c;
  // Preparing the factors, the point products, and recombining them.
  const double width = static_cast<double>(top - lo + 1);
  auto points_cost = [&](double npts, double terms_p, double terms_q) {
    return npts * (terms_p * r * in + terms_q * in * c + r * in * c + width * r * c) + npts * npts * 4;
  };
  const double dq1 = static_cast<double>(dq + 1);
  const double eval_pts = static_cast<double>(dp + dq + 1);
  const double eval_cost = points_cost(eval_pts, static_cast<double>(dp + 1), dq1);
  const bool middle = dq <= lo && top <= dp;
  const double trans_pts = width + static_cast<double>(dq);
  const double trans_cost = middle ? points_cost(trans_pts, trans_pts, dq1) : conv_cost + 1;
  const u64 p_mod = field.modulus();

  const bool can_trans = middle && static_cast<u64>(top - lo + 1 + dq) < p_mod;
  const bool can_eval = static_cast<u64>(dp + dq + 1) < p_mod;
  if (route == WindowRoute::cheapest) {
    if (can_trans && trans_cost < std::min(conv_cost, eval_cost)) {
      route = WindowRoute::transposition;
    } else if (can_eval && eval_cost < conv_cost) {
      route = WindowRoute::evaluation;
    } else {
      route = WindowRoute::convolution;
    }
  }
  std::vector<Matrix> out;
  switch (route) {
    case WindowRoute::transposition:
      if (!can_trans) throw std::invalid_argument("polymat_mul_window: transposition does not apply");
      out = window_by_transposition(field, p, q, dq, lo, top);
      break;
    case WindowRoute::evaluation:
      if (!can_eval) throw std::invalid_argument("polymat_mul_window: too few field elements for evaluation");
      out = window_by_evaluation(field, p, q, dp, dq, lo, top);
      break;
    default:
      out = window_by_convolution(field, p, q, dp, dq, lo, top);
  }
  out.resize(hi - lo + 1, Matrix(p.rows(), q.cols()));
  return out;
}

PolyMatrix polymat_mul(const PrimeField& field, const PolyMatrix& p, const PolyMatrix& q, std::size_t cap) {
  return PolyMatrix(polymat_mul_window(field, p, q, 0, cap));
}

}  // namespace fnfdist
