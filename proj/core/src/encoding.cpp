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


#include "fnfdist/encoding.hpp"

#include <set>
#include <stdexcept>
#include <string>

#include "fnfdist/errors.hpp"

namespace fnfdist {

GraphEncoding::GraphEncoding(const PrimeField& field, Digraph graph, Rng& rng)
    : field_(field), graph_(std::move(graph)) {
  if (graph_.weighted() && graph_.max_weight() > 1) {
    throw std::invalid_argument("GraphEncoding: expand weighted graphs before encoding");
  }
  resample(rng);
}

void GraphEncoding::set_entry(Index u, Index v) { a_(u, v) = field_.mul(x_(u, v), y_[v]); }

void GraphEncoding::resample(Rng& rng) {
  const std::size_t n = graph_.order();
  x_ = Matrix(n, n);
  y_.assign(n, Scalar{0});
  a_ = Matrix(n, n);
  for (Index v = 0; v < n; ++v) x_(v, v) = field_.random_nonzero(rng);
  for (const auto& [e, c] : graph_.edges()) x_(e.first, e.second) = field_.random_nonzero(rng);
  for (Index v = 0; v < n; ++v) y_[v] = field_.random_nonzero(rng);
  for (Index v = 0; v < n; ++v) set_entry(v, v);
  for (const auto& [e, c] : graph_.edges()) set_entry(e.first, e.second);
}

ElementChange GraphEncoding::apply_edge_change(Index u, Index v, EdgeOp op, Rng& rng) {
  if (u == v) throw std::invalid_argument("edge change on a self-loop at " + std::to_string(u));
  const Scalar previous = a_(u, v);
  if (op == EdgeOp::insert) {
    graph_.add_edge(u, v);
    x_(u, v) = field_.random_nonzero(rng);
    set_entry(u, v);
  } else {
    graph_.remove_edge(u, v);
    x_(u, v) = Scalar{0};
    a_(u, v) = Scalar{0};
  }
  return {u, v, a_(u, v), previous};
}

void GraphEncoding::replace_out_edges(Index v, const std::vector<Index>& targets, Rng& rng) {
  const std::set<Index> keep(targets.begin(), targets.end());
  if (keep.count(v)) throw std::invalid_argument("vertex update contains a self-loop at " + std::to_string(v));
  for (Index w : graph_.out_neighbors(v)) {
    if (keep.count(w)) continue;
    graph_.remove_edge(v, w);
    x_(v, w) = Scalar{0};
    a_(v, w) = Scalar{0};
  }
  for (Index w : keep) {
    if (graph_.has_edge(v, w)) continue;
    graph_.add_edge(v, w);
    x_(v, w) = field_.random_nonzero(rng);
    set_entry(v, w);
  }
}

void GraphEncoding::replace_in_edges(Index v, const std::vector<Index>& sources, Rng& rng) {
  const std::set<Index> keep(sources.begin(), sources.end());
  if (keep.count(v)) throw std::invalid_argument("vertex update contains a self-loop at " + std::to_string(v));
  for (Index w : graph_.in_neighbors(v)) {
    if (keep.count(w)) continue;
    graph_.remove_edge(w, v);
    x_(w, v) = Scalar{0};
    a_(w, v) = Scalar{0};
  }
  for (Index w : keep) {
    if (graph_.has_edge(w, v)) continue;
    graph_.add_edge(w, v);
    x_(w, v) = field_.random_nonzero(rng);
    set_entry(w, v);
  }
}

}  // namespace fnfdist
