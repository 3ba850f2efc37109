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
#include <set>
#include <stdexcept>
#include <string>

#include "fnfdist/errors.hpp"
#include "detail.hpp"
#include "fnfdist/oracles.hpp"

namespace fnfdist {

namespace detail {

// compute_fnf on the encoding, resampling x and y when the matrix looks
// non-generic.
PowerOracle oracle_with_retries(const PrimeField& field, GraphEncoding& enc, Rng& rng, const OracleConfig& config,
                                std::size_t* fnf_calls) {
  for (std::size_t attempt = 0;; ++attempt) {
    try {
      if (fnf_calls) ++*fnf_calls;
      FrobeniusForm form = compute_fnf(field, enc.matrix(), rng, config.fnf_attempts);
      return build_power_oracle(field, enc.matrix(), std::move(form));
    } catch (const GenericityFailure&) {
      if (attempt >= config.encoding_retries) throw;
      enc.resample(rng);
    }
  }
}

}  // namespace detail

namespace {

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

void add_bounded_edges(BoundedEdges& edges, const IndexList& from, const IndexList& to,
                       const std::vector<Matrix>& powers) {
  for (std::size_t i = 0; i < from.size(); ++i)
    for (std::size_t j = 0; j < to.size(); ++j) {
      if (from[i] == to[j]) continue;
      if (auto k = first_nonzero_power(powers, i, j)) edges[{from[i], to[j]}] = *k;
    }
}

}  // namespace

MultiFailureDSO::MultiFailureDSO(const PrimeField& field, Digraph graph, Rng& rng, OracleConfig config)
    : field_(field), config_(config), enc_(field, std::move(graph), rng) {
  if (enc_.order() == 0) throw std::invalid_argument("MultiFailureDSO: empty vertex set");
  oracle_.emplace(detail::oracle_with_retries(field_, enc_, rng, config_));
  update({}, rng);
}

void MultiFailureDSO::update(const EdgeSet& failed, Rng& rng) {
  const Digraph& g = enc_.graph();
  const std::size_t n = g.order();
  for (const auto& e : failed) {
    if (!g.has_edge(e.first, e.second)) {
      throw EdgeAbsent("failed edge " + std::to_string(e.first) + " -> " + std::to_string(e.second) +
                       " is not in the graph");
    }
  }
  const std::size_t f = failed.size();
  const std::size_t h = std::clamp<std::size_t>(f == 0 ? n : ceil_div(n, f), 1, n);

  std::vector<ElementChange> psi;
  IndexList rows, cols;
  std::set<Index> k_ids;
  for (const auto& e : failed) {
    psi.push_back({e.first, e.second, field_.zero(), enc_.matrix()(e.first, e.second)});
    rows.push_back(e.first);
    cols.push_back(e.second);
    k_ids.insert(e.first);
    k_ids.insert(e.second);
  }
  HittingSet hs = sample_hitting_set(n, h, config_.gamma, rng);
  k_ids.insert(hs.vertices.begin(), hs.vertices.end());

  PowerTable table(*oracle_, IndexList(k_ids.begin(), k_ids.end()), h);
  ElementUpdateBatch batch = batch_preprocess(field_, table.select(cols, rows), std::move(psi), h);
  const IndexList& hv = hs.vertices;
  std::vector<Matrix> powers_b =
      batch_query(field_, batch, hv, hv, table.select(hv, rows), table.select(cols, hv), table.select(hv, hv));

  BoundedEdges edges;
  add_bounded_edges(edges, hv, hv, powers_b);

  failed_ = failed;
  hitting_ = std::move(hs);
  table_ = std::move(table);
  batch_ = std::move(batch);
  powers_b_ = std::move(powers_b);
  h_edges_ = std::move(edges);
}

Distance MultiFailureDSO::query(Index s, Index t) const {
  const std::size_t n = enc_.order();
  if (s >= n || t >= n) throw IndexOutOfRange("MultiFailureDSO::query: vertex out of range");
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

std::uint64_t MultiFailureDSO::truncated_1f_query(Edge failed, Index s, Index t, std::size_t h) const {
  const std::size_t n = enc_.order();
  if (s >= n || t >= n) throw IndexOutOfRange("truncated_1f_query: vertex out of range");
  if (h < 1 || h > n) throw IndexOutOfRange("truncated_1f_query: h must lie in [1, n]");
  const auto [u, v] = failed;
  if (!enc_.graph().has_edge(u, v)) throw EdgeAbsent("truncated_1f_query: failed edge is not in the graph");
  if (s == t) return 0;
  // Rows {s, v} and columns {u, t} cover every block the single-change batch
  // needs.
  const auto p = query_submatrix_powers(*oracle_, {s, v}, {u, t}, h);
  auto block = [&](std::size_t i, std::size_t j) {
    std::vector<Matrix> out;
    for (const auto& m : p) out.push_back(Matrix(1, 1, Vector{m(i, j)}));
    return out;
  };
  const ElementUpdateBatch batch =
      batch_preprocess(field_, block(1, 0), {{u, v, field_.zero(), enc_.matrix()(u, v)}}, h);
  const auto b = batch_query(field_, batch, {s}, {t}, block(0, 0), block(1, 1), block(0, 1));
  return first_nonzero_power(b, 0, 0).value_or(h);
}

DistanceSensitivityOracle::DistanceSensitivityOracle(const Digraph& graph, Rng& rng, Options options)
    : graph_(graph), options_(options) {
  if (graph.order() == 0) throw std::invalid_argument("DistanceSensitivityOracle: empty vertex set");
  const unsigned w = graph.weighted() ? graph.max_weight() : 1;
  auto [expanded, emap] = expand_weights(graph, w);
  expand_ = emap;
  Digraph reduced = std::move(expanded);
  if (options.vertex_failures) {
    auto [split, smap] = split_vertices(reduced);
    split_ = smap;
    reduced = std::move(split);
  }
  const PrimeField field =
      options.modulus != 0 ? PrimeField(options.modulus) : sample_prime(reduced.order(), options.c, rng);
  inner_.emplace(field, std::move(reduced), rng, options.config);
}

Index DistanceSensitivityOracle::source(Index s) const {
  const Index v = expand_.vertex(s, 1);
  return split_ ? split_->in(v) : v;
}

Index DistanceSensitivityOracle::target(Index t) const {
  const Index v = expand_.vertex(t, 1);
  return split_ ? split_->out(v) : v;
}

void DistanceSensitivityOracle::update(const EdgeSet& failed_edges, const VertexSet& failed_vertices, Rng& rng) {
  if (!failed_vertices.empty() && !split_) {
    throw std::invalid_argument("vertex failures need an oracle built with vertex_failures enabled");
  }
  EdgeSet mapped;
  for (const auto& [u, v] : failed_edges) {
    if (!graph_.has_edge(u, v)) {
      throw EdgeAbsent("failed edge " + std::to_string(u) + " -> " + std::to_string(v) + " is not in the graph");
    }
    Edge e = expand_.edge(u, v, graph_.weight(u, v));
    if (split_) e = split_->edge(e.first, e.second);
    mapped.insert(e);
  }
  for (Index v : failed_vertices) {
    if (v >= graph_.order()) throw IndexOutOfRange("failed vertex out of range");
    // Every path through v leaves it from v^1.
    mapped.insert(split_->vertex_edge(expand_.vertex(v, 1)));
  }
  inner_->update(mapped, rng);
  failed_vertices_ = failed_vertices;
}

Distance DistanceSensitivityOracle::query(Index s, Index t) const {
  if (s >= graph_.order() || t >= graph_.order()) throw IndexOutOfRange("query vertex out of range");
  if (failed_vertices_.count(s) || failed_vertices_.count(t)) return Distance::unreachable();
  if (s == t) return Distance(0);
  const Distance d = inner_->query(source(s), target(t));
  return split_ ? split_->back(d) : d;
}

}  // namespace fnfdist
