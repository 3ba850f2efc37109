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
#include <cmath>
#include <stdexcept>
#include <string>

#include "detail.hpp"
#include "fnfdist/errors.hpp"
#include "fnfdist/oracles.hpp"

namespace fnfdist {

namespace {

std::size_t ceil_pow(std::size_t n, double e) {
  const auto v = static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(n), e) - 1e-9));
  return std::clamp<std::size_t>(v, 1, std::max<std::size_t>(n, 1));
}

void add_bounded_edges(BoundedEdges& edges, const IndexList& from, const IndexList& to,
                       const std::vector<Matrix>& powers) {
  for (std::size_t i = 0; i < from.size(); ++i)
    for (std::size_t j = 0; j < to.size(); ++j) {
      if (from[i] == to[j]) continue;
      if (auto k = first_nonzero_power(powers, i, j)) edges[{from[i], to[j]}] = *k;
    }
}

}  // namespace

DynamicEdgeOracle::DynamicEdgeOracle(const PrimeField& field, Digraph graph, Rng& rng, OracleConfig config)
    : field_(field), config_(config), enc_(field, std::move(graph), rng) {
  const std::size_t n = enc_.order();
  if (n == 0) throw std::invalid_argument("DynamicEdgeOracle: empty vertex set");
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  h_ = ceil_pow(n, config.alpha);
  phase_len_ = ceil_pow(n, 1.0 - config.alpha);
  rebuild(rng);
  rebuilds_ = 0;
}

void DynamicEdgeOracle::rebuild(Rng& rng) {
  oracle_.emplace(detail::oracle_with_retries(field_, enc_, rng, config_));
  snapshot_ = enc_.matrix();
  hitting_ = sample_hitting_set(enc_.order(), h_, config_.gamma, rng);
  table_ = PowerTable(*oracle_, hitting_.vertices, h_);
  pending_.clear();
  batch_ = batch_preprocess(field_, std::vector<Matrix>(h_), {}, h_);
  powers_b_ = table_.select(hitting_.vertices, hitting_.vertices);
  updates_in_phase_ = 0;
  ++rebuilds_;
  refresh_h_edges();
}

void DynamicEdgeOracle::refresh_h_edges() {
  h_edges_.clear();
  add_bounded_edges(h_edges_, hitting_.vertices, hitting_.vertices, powers_b_);
}

void DynamicEdgeOracle::update(Index u, Index v, EdgeOp op, Rng& rng) {
  const std::size_t n = enc_.order();
  if (u >= n || v >= n) throw IndexOutOfRange("DynamicEdgeOracle::update: vertex out of range");
  // `change.previous` is the entry of the current B, not of the snapshot.
  const ElementChange change = enc_.apply_edge_change(u, v, op, rng);
  if (++updates_in_phase_ >= phase_len_) {
    rebuild(rng);
    return;
  }

  table_.extend(*oracle_, {u, v});
  const IndexList& hv = hitting_.vertices;
  const IndexList& rows = batch_.rows();
  const IndexList& cols = batch_.cols();
  const IndexList ul{u}, vl{v};

  // Powers of the current B bordered by u and v, via the pending batch.
  const auto b_hu = batch_query(field_, batch_, hv, ul, table_.select(hv, rows), table_.select(cols, ul),
                                table_.select(hv, ul));
  const auto b_vu = batch_query(field_, batch_, vl, ul, table_.select(vl, rows), table_.select(cols, ul),
                                table_.select(vl, ul));
  const auto b_vh = batch_query(field_, batch_, vl, hv, table_.select(vl, rows), table_.select(cols, hv),
                                table_.select(vl, hv));

  // One-element SMW step on the maintained H x H block.
  const ElementUpdateBatch single = batch_preprocess(field_, b_vu, {change}, h_);
  powers_b_ = batch_query(field_, single, hv, hv, b_hu, b_vh, powers_b_);
  refresh_h_edges();

  // Fold the change into the batch relative to the snapshot.
  pending_[{u, v}] = ElementChange{u, v, change.value, snapshot_(u, v)};
  std::vector<ElementChange> psi;
  IndexList new_rows, new_cols;
  for (const auto& [pos, c] : pending_) {
    psi.push_back(c);
    new_rows.push_back(c.row);
    new_cols.push_back(c.col);
  }
  batch_ = batch_preprocess(field_, table_.select(new_cols, new_rows), std::move(psi), h_);
}

Distance DynamicEdgeOracle::query(Index s, Index t) const {
  const std::size_t n = enc_.order();
  if (s >= n || t >= n) throw IndexOutOfRange("DynamicEdgeOracle::query: vertex out of range");
  if (s == t) return Distance(0);
  const BorderedPowers view(*oracle_, table_, {s, t});
  const IndexList& hv = hitting_.vertices;
  const IndexList& rows = batch_.rows();
  const IndexList& cols = batch_.cols();
  IndexList targets = hv;
  targets.push_back(t);
  const IndexList src{s}, dst{t};
  const auto from_s = batch_query(field_, batch_, src, targets, view.select(src, rows), view.select(cols, targets),
                                  view.select(src, targets));
  const auto into_t = batch_query(field_, batch_, hv, dst, view.select(hv, rows), view.select(cols, dst),
                                  view.select(hv, dst));
  BoundedEdges edges = h_edges_;
  add_bounded_edges(edges, src, targets, from_s);
  add_bounded_edges(edges, hv, dst, into_t);
  return bounded_graph_dijkstra(edges, s, t);
}

VertexUpdateOracle::VertexUpdateOracle(const PrimeField& field, Digraph graph, Rng& rng, OracleConfig config)
    : field_(field), config_(config), enc_(field, std::move(graph), rng) {
  if (enc_.order() == 0) throw std::invalid_argument("VertexUpdateOracle: empty vertex set");
  full_rebuild(rng);
}

void VertexUpdateOracle::full_rebuild(Rng& rng) {
  for (std::size_t attempt = 0;; ++attempt) {
    try {
      const Matrix a = enc_.matrix();
      const Matrix at = transpose(a);
      ++fnf_calls_;
      FrobeniusForm f = compute_fnf(field_, a, rng, config_.fnf_attempts);
      ++fnf_calls_;
      FrobeniusForm ft = compute_fnf(field_, at, rng, config_.fnf_attempts);
      oracle_.emplace(build_power_oracle(field_, a, std::move(f)));
      oracle_t_.emplace(build_power_oracle(field_, at, std::move(ft)));
      current_ = a;
      return;
    } catch (const GenericityFailure&) {
      if (attempt >= config_.encoding_retries) throw;
      enc_.resample(rng);
    }
  }
}

void VertexUpdateOracle::apply_rank1(const Vector& col, const Vector& row, Rng& rng) {
  const Matrix next = enc_.matrix();
  try {
    Rank1Result res = rank1_update_fnf(field_, current_, *oracle_, *oracle_t_, col, row, rng, config_.fnf_attempts);
    oracle_.emplace(build_power_oracle(field_, next, std::move(res.form)));
    oracle_t_.emplace(build_power_oracle(field_, transpose(next), std::move(res.form_transposed)));
    current_ = next;
  } catch (const GenericityFailure&) {
    // Fallback: FNF from scratch, resampling the encoding if that fails too.
    ++fallbacks_;
    full_rebuild(rng);
  }
}

void VertexUpdateOracle::update(Index v, const std::vector<Index>& out, const std::vector<Index>& in, Rng& rng) {
  const std::size_t n = enc_.order();
  if (v >= n) throw IndexOutOfRange("VertexUpdateOracle::update: vertex out of range");
  for (Index w : out)
    if (w >= n || w == v) throw std::invalid_argument("vertex update: bad out-neighbor " + std::to_string(w));
  for (Index w : in)
    if (w >= n || w == v) throw std::invalid_argument("vertex update: bad in-neighbor " + std::to_string(w));

  Vector e(n);
  e[v] = field_.one();

  // Row v: A += e_v (new_row - old_row)^T.
  enc_.replace_out_edges(v, out, rng);
  Vector diff(n);
  bool any = false;
  for (Index j = 0; j < n; ++j) {
    diff[j] = field_.sub(enc_.matrix()(v, j), current_(v, j));
    any |= diff[j].v != 0;
  }
  if (any) apply_rank1(e, diff, rng);

  // Column v: A += (new_col - old_col) e_v^T.
  enc_.replace_in_edges(v, in, rng);
  any = false;
  for (Index i = 0; i < n; ++i) {
    diff[i] = field_.sub(enc_.matrix()(i, v), current_(i, v));
    any |= diff[i].v != 0;
  }
  if (any) apply_rank1(diff, e, rng);
}

Distance VertexUpdateOracle::query(Index s, Index t) const {
  const std::size_t n = enc_.order();
  if (s >= n || t >= n) throw IndexOutOfRange("VertexUpdateOracle::query: vertex out of range");
  if (s == t) return Distance(0);
  const Vector cells = query_cell_powers(*oracle_, s, t, n - 1);
  for (std::size_t k = 0; k < cells.size(); ++k)
    if (cells[k].v != 0) return Distance(k + 1);
  return Distance::unreachable();
}

}  // namespace fnfdist
