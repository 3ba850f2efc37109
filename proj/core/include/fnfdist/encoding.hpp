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
#include <vector>

#include "fnfdist/field.hpp"
#include "fnfdist/graph.hpp"
#include "fnfdist/matrix.hpp"
#include "fnfdist/updates.hpp"

namespace fnfdist {

enum class EdgeOp { insert, remove };

// Random weighted adjacency matrix of an unweighted digraph:
// A_{u,v} = x_{u,v} * y_v on the diagonal and on edges, 0 elsewhere. All x and
// y values are uniform nonzero field elements.
class GraphEncoding {
 public:
  // Throws std::invalid_argument for weighted graphs (expand them first).
  GraphEncoding(const PrimeField& field, Digraph graph, Rng& rng);

  const PrimeField& field() const noexcept { return field_; }
  const Digraph& graph() const noexcept { return graph_; }
  const Matrix& matrix() const noexcept { return a_; }
  std::size_t order() const noexcept { return graph_.order(); }
  // 0 off the support.
  Scalar x(Index u, Index v) const { return x_(u, v); }
  Scalar y(Index v) const { return y_[v]; }

  // Fresh draws for every x and y; the graph is unchanged.
  void resample(Rng& rng);

  // Inserting samples a fresh x_{u,v}. Throws EdgeAlreadyPresent / EdgeAbsent
  // and std::invalid_argument for u == v.
  ElementChange apply_edge_change(Index u, Index v, EdgeOp op, Rng& rng);

  // Replace every edge leaving (entering) v. Edges kept from the old set keep
  // their x value; new ones are sampled. Self-loops are rejected.
  void replace_out_edges(Index v, const std::vector<Index>& targets, Rng& rng);
  void replace_in_edges(Index v, const std::vector<Index>& sources, Rng& rng);

 private:
  void set_entry(Index u, Index v);
  PrimeField field_;
  Digraph graph_;
  Matrix x_;
  Vector y_;
  Matrix a_;
};

}  // namespace fnfdist
