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


#include "fnfdist/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "fnfdist/errors.hpp"

namespace fnfdist {

std::ostream& operator<<(std::ostream& os, Distance d) { return os << d.str(); }

void Digraph::check_vertex(Index v) const {
  if (v >= n_) throw IndexOutOfRange("vertex " + std::to_string(v) + " out of range for n = " + std::to_string(n_));
}

unsigned Digraph::max_weight() const noexcept {
  unsigned w = 1;
  for (const auto& [e, c] : edges_) w = std::max(w, c);
  return w;
}

void Digraph::add_edge(Index u, Index v, unsigned weight) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
  if (weight == 0) throw WeightOutOfRange("edge weights must be positive");
  if (!weighted_ && weight != 1) throw WeightOutOfRange("unweighted graph takes weight 1 only");
  if (!edges_.emplace(Edge{u, v}, weight).second) {
    throw EdgeAlreadyPresent("edge " + std::to_string(u) + " -> " + std::to_string(v) + " already present");
  }
}

void Digraph::remove_edge(Index u, Index v) {
  if (edges_.erase({u, v}) == 0) {
    throw EdgeAbsent("edge " + std::to_string(u) + " -> " + std::to_string(v) + " is not present");
  }
}

unsigned Digraph::weight(Index u, Index v) const {
  auto it = edges_.find({u, v});
  if (it == edges_.end()) throw EdgeAbsent("edge " + std::to_string(u) + " -> " + std::to_string(v) + " is not present");
  return it->second;
}

std::vector<Index> Digraph::out_neighbors(Index u) const {
  std::vector<Index> out;
  for (auto it = edges_.lower_bound({u, 0}); it != edges_.end() && it->first.first == u; ++it)
    out.push_back(it->first.second);
  return out;
}

std::vector<Index> Digraph::in_neighbors(Index v) const {
  std::vector<Index> in;
  for (const auto& [e, c] : edges_)
    if (e.second == v) in.push_back(e.first);
  return in;
}

std::vector<std::vector<std::pair<Index, unsigned>>> Digraph::adjacency() const {
  std::vector<std::vector<std::pair<Index, unsigned>>> adj(n_);
  for (const auto& [e, c] : edges_) adj[e.first].emplace_back(e.second, c);
  return adj;
}

namespace {

bool next_content_line(std::istream& in, std::string& line, std::size_t& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

std::vector<long long> parse_ints(const std::string& line, std::size_t lineno) {
  std::istringstream ss(line);
  std::vector<long long> out;
  std::string tok;
  while (ss >> tok) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ParseError(lineno, "expected an integer, got '" + tok + "'");
    }
  }
  return out;
}

}  // namespace

Digraph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!next_content_line(in, line, lineno)) throw ParseError(lineno, "missing header 'n m [W]'");
  const auto header = parse_ints(line, lineno);
  if (header.size() < 2 || header.size() > 3 || header[0] < 0 || header[1] < 0) {
    throw ParseError(lineno, "header must be 'n m [W]' with non-negative n, m");
  }
  const bool weighted = header.size() == 3;
  const long long max_w = weighted ? header[2] : 1;
  if (max_w < 1) throw ParseError(lineno, "W must be at least 1");
  Digraph g(static_cast<std::size_t>(header[0]), weighted);
  for (long long e = 0; e < header[1]; ++e) {
    if (!next_content_line(in, line, lineno)) throw ParseError(lineno, "expected " + std::to_string(header[1]) + " edges");
    const auto f = parse_ints(line, lineno);
    if (f.size() != (weighted ? 3u : 2u)) throw ParseError(lineno, weighted ? "expected 'u v w'" : "expected 'u v'");
    if (f[0] < 1 || f[1] < 1 || f[0] > header[0] || f[1] > header[0]) throw ParseError(lineno, "vertex out of range");
    if (f[0] == f[1]) throw ParseError(lineno, "self-loops are not allowed");
    const long long w = weighted ? f[2] : 1;
    if (w < 1 || w > max_w) throw ParseError(lineno, "weight out of range [1, W]");
    try {
      g.add_edge(static_cast<Index>(f[0] - 1), static_cast<Index>(f[1] - 1), static_cast<unsigned>(w));
    } catch (const EdgeAlreadyPresent&) {
      throw ParseError(lineno, "duplicate edge");
    }
  }
  if (next_content_line(in, line, lineno)) throw ParseError(lineno, "trailing content after the edge list");
  return g;
}

void write_edge_list(std::ostream& out, const Digraph& g) {
  out << g.order() << ' ' << g.size();
  if (g.weighted()) out << ' ' << g.max_weight();
  out << '\n';
  for (const auto& [e, c] : g.edges()) {
    out << e.first + 1 << ' ' << e.second + 1;
    if (g.weighted()) out << ' ' << c;
    out << '\n';
  }
}

namespace {

Distance shortest(const Digraph& g, const EdgeSet& failed_edges, const VertexSet& failed_vertices, Index s, Index t,
                  bool use_weights) {
  const std::size_t n = g.order();
  if (s >= n || t >= n) throw IndexOutOfRange("shortest path endpoint out of range");
  if (failed_vertices.count(s) || failed_vertices.count(t)) return Distance::unreachable();
  if (s == t) return Distance(0);
  const auto adj = g.adjacency();
  constexpr std::uint64_t inf = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> dist(n, inf);
  using Item = std::pair<std::uint64_t, Index>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[s] = 0;
  pq.emplace(0, s);
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d != dist[u]) continue;
    if (u == t) return Distance(d);
    for (auto [v, w] : adj[u]) {
      if (failed_vertices.count(v) || failed_edges.count({u, v})) continue;
      const std::uint64_t nd = d + (use_weights ? w : 1);
      if (nd < dist[v]) {
        dist[v] = nd;
        pq.emplace(nd, v);
      }
    }
  }
  return Distance::unreachable();
}

}  // namespace

Distance bfs_oracle(const Digraph& g, const EdgeSet& failed_edges, const VertexSet& failed_vertices, Index s,
                    Index t) {
  return shortest(g, failed_edges, failed_vertices, s, t, false);
}

Distance dijkstra_oracle(const Digraph& g, const EdgeSet& failed_edges, const VertexSet& failed_vertices, Index s,
                         Index t) {
  return shortest(g, failed_edges, failed_vertices, s, t, true);
}

std::pair<Digraph, WeightExpandMap> expand_weights(const Digraph& g, unsigned max_weight) {
  if (max_weight < 1) throw WeightOutOfRange("W must be at least 1");
  WeightExpandMap map{g.order(), max_weight};
  Digraph out(g.order() * max_weight);
  for (Index v = 0; v < g.order(); ++v)
    for (unsigned c = 2; c <= max_weight; ++c) out.add_edge(map.vertex(v, c), map.vertex(v, c - 1));
  for (const auto& [e, c] : g.edges()) {
    if (c > max_weight) {
      throw WeightOutOfRange("edge weight " + std::to_string(c) + " exceeds W = " + std::to_string(max_weight));
    }
    const Edge m = map.edge(e.first, e.second, c);
    out.add_edge(m.first, m.second);
  }
  return {std::move(out), map};
}

std::pair<Digraph, VertexSplitMap> split_vertices(const Digraph& g) {
  VertexSplitMap map{g.order()};
  Digraph out(2 * g.order());
  for (Index v = 0; v < g.order(); ++v) out.add_edge(map.in(v), map.out(v));
  for (const auto& [e, c] : g.edges()) {
    const Edge m = map.edge(e.first, e.second);
    out.add_edge(m.first, m.second);
  }
  return {std::move(out), map};
}

Digraph random_digraph(std::size_t n, double density, unsigned max_weight, Rng& rng) {
  if (density < 0.0 || density > 1.0) throw std::invalid_argument("density must lie in [0, 1]");
  if (max_weight < 1) throw WeightOutOfRange("W must be at least 1");
  Digraph g(n, max_weight > 1);
  // Compare against the top 53 bits so the stream is identical on every
  // standard library (distribution objects are implementation-defined).
  const auto threshold = static_cast<std::uint64_t>(density * static_cast<double>(1ULL << 53));
  for (Index u = 0; u < n; ++u)
    for (Index v = 0; v < n; ++v) {
      if (u == v) continue;
      const std::uint64_t draw = rng() >> 11;
      const bool take = density >= 1.0 || draw < threshold;
      const unsigned w = max_weight > 1 ? static_cast<unsigned>(rng() % max_weight) + 1 : 1;
      if (take) g.add_edge(u, v, w);
    }
  return g;
}

}  // namespace fnfdist
