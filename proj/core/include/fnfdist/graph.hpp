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
#include <iosfwd>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fnfdist/matrix.hpp"

namespace fnfdist {

using Edge = std::pair<Index, Index>;
using EdgeSet = std::set<Edge>;
using VertexSet = std::set<Index>;

// Shortest-path length, or the distinguished unreachable value.
class Distance {
 public:
  constexpr Distance() = default;
  constexpr explicit Distance(std::uint64_t d) : d_(d) {}
  static constexpr Distance unreachable() { return Distance(); }

  constexpr bool reachable() const noexcept { return d_ != kInf; }
  constexpr std::uint64_t value() const noexcept { return d_; }

  friend constexpr bool operator==(Distance a, Distance b) noexcept { return a.d_ == b.d_; }
  friend constexpr bool operator<(Distance a, Distance b) noexcept { return a.d_ < b.d_; }
  std::string str() const { return reachable() ? std::to_string(d_) : "INF"; }
  friend std::ostream& operator<<(std::ostream& os, Distance d);

 private:
  static constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t d_ = kInf;
};

// Directed graph on vertices 0..n-1 without self-loops. Unweighted graphs
// report weight 1 on every edge.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(std::size_t n, bool weighted = false) : n_(n), weighted_(weighted) {}

  std::size_t order() const noexcept { return n_; }
  std::size_t size() const noexcept { return edges_.size(); }
  bool weighted() const noexcept { return weighted_; }
  // Largest weight present (1 when unweighted or empty).
  unsigned max_weight() const noexcept;

  // Throws IndexOutOfRange, std::invalid_argument for self-loops or weight 0,
  // EdgeAlreadyPresent when uv exists.
  void add_edge(Index u, Index v, unsigned weight = 1);
  // Throws EdgeAbsent.
  void remove_edge(Index u, Index v);
  bool has_edge(Index u, Index v) const { return edges_.count({u, v}) != 0; }
  unsigned weight(Index u, Index v) const;

  const std::map<Edge, unsigned>& edges() const noexcept { return edges_; }
  std::vector<Index> out_neighbors(Index u) const;
  std::vector<Index> in_neighbors(Index v) const;
  std::vector<std::vector<std::pair<Index, unsigned>>> adjacency() const;

  friend bool operator==(const Digraph& a, const Digraph& b) noexcept {
    return a.n_ == b.n_ && a.weighted_ == b.weighted_ && a.edges_ == b.edges_;
  }

 private:
  void check_vertex(Index v) const;
  std::size_t n_ = 0;
  bool weighted_ = false;
  std::map<Edge, unsigned> edges_;
};

// Edge-list text: "n m [W]" then m lines "u v [w]", 1-based vertices. The
// third header field marks a weighted graph. Lines starting with '#' and blank
// lines are skipped on input. Throws ParseError.
Digraph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Digraph& g);

// Exact distances on G - F by breadth-first search (every edge counts as one
// hop) or Dijkstra (edge weights). Failed s or t gives unreachable unless
// s == t is still intact.
Distance bfs_oracle(const Digraph& g, const EdgeSet& failed_edges, const VertexSet& failed_vertices, Index s,
                    Index t);
Distance dijkstra_oracle(const Digraph& g, const EdgeSet& failed_edges, const VertexSet& failed_vertices, Index s,
                         Index t);

// v^c (c = 1..W) of the weight expansion is vertex v*W + c-1.
struct WeightExpandMap {
  std::size_t n = 0;
  unsigned w = 1;
  Index vertex(Index v, unsigned c = 1) const { return v * w + (c - 1); }
  // Original endpoints of edge uv of weight c map to u^1 -> v^c.
  Edge edge(Index u, Index v, unsigned c) const { return {vertex(u, 1), vertex(v, c)}; }
};

// Unweighted graph on n*W vertices with chains v^W -> ... -> v^1 and an edge
// u^1 -> v^c for every edge uv of weight c. delta_G(u, v) = delta_G'(u^1, v^1).
// Throws WeightOutOfRange if a weight exceeds W.
std::pair<Digraph, WeightExpandMap> expand_weights(const Digraph& g, unsigned max_weight);

// v_in = 2v, v_out = 2v + 1.
struct VertexSplitMap {
  std::size_t n = 0;
  Index in(Index v) const { return 2 * v; }
  Index out(Index v) const { return 2 * v + 1; }
  Edge edge(Index u, Index v) const { return {out(u), in(v)}; }
  Edge vertex_edge(Index v) const { return {in(v), out(v)}; }
  // delta_G(s, t) from delta_G'(s_in, t_out).
  Distance back(Distance split) const {
    return split.reachable() ? Distance((split.value() - 1) / 2) : split;
  }
};

// v_in -> v_out for every vertex and u_out -> v_in for every edge uv.
std::pair<Digraph, VertexSplitMap> split_vertices(const Digraph& g);

// Deterministic random digraph: every ordered pair u != v is an edge with
// probability `density`; weights uniform in [1, W] when W > 1.
Digraph random_digraph(std::size_t n, double density, unsigned max_weight, Rng& rng);

}  // namespace fnfdist
