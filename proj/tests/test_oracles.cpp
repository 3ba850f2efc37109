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
#include <random>

#include "doctest.h"
#include "fnfdist/errors.hpp"
#include "fnfdist/oracles.hpp"
#include "support/oracles.hpp"

using namespace fnfdist;
using namespace fnfdist::testing;

namespace {

EdgeSet random_failures(const Digraph& g, std::size_t f, Rng& rng) {
  std::vector<Edge> all;
  for (const auto& [e, w] : g.edges()) all.push_back(e);
  std::shuffle(all.begin(), all.end(), rng);
  if (all.size() > f) all.resize(f);
  return EdgeSet(all.begin(), all.end());
}

void check_all_pairs(const DistanceSensitivityOracle& dso, const Digraph& g, const EdgeSet& fe,
                     const VertexSet& fv, std::size_t stride = 1) {
  for (Index s = 0; s < g.order(); s += stride)
    for (Index t = 0; t < g.order(); ++t) {
      const Distance want = g.weighted() ? dijkstra_oracle(g, fe, fv, s, t) : bfs_oracle(g, fe, fv, s, t);
      INFO("s=" << s << " t=" << t);
      REQUIRE(dso.query(s, t) == want);
    }
}

}  // namespace

TEST_CASE("hitting set sizes") {
  Rng r(1);
  const HittingSet all = sample_hitting_set(50, 1, 4.0, r);
  CHECK(all.vertices.size() == 50);
  CHECK(hitting_set_target(1000, 100, 4.0) == 277);
  const HittingSet some = sample_hitting_set(1000, 100, 4.0, r);
  CHECK(some.vertices.size() <= 277);
  CHECK(std::is_sorted(some.vertices.begin(), some.vertices.end()));
  CHECK(std::adjacent_find(some.vertices.begin(), some.vertices.end()) == some.vertices.end());
  CHECK_THROWS(sample_hitting_set(10, 0, 4.0, r));
  CHECK_THROWS(sample_hitting_set(10, 11, 4.0, r));
}

TEST_CASE("hitting set hits long shortest paths") {
  // Every BFS path with at least h vertices should contain a sampled vertex.
  Rng r(2);
  const std::size_t n = 300, h = 30;
  Digraph path(n);
  for (Index v = 0; v + 1 < n; ++v) path.add_edge(v, v + 1);
  int misses = 0;
  for (int it = 0; it < 20; ++it) {
    const HittingSet hs = sample_hitting_set(n, h, 4.0, r);
    std::vector<bool> in(n);
    for (Index v : hs.vertices) in[v] = true;
    for (Index s = 0; s + h <= n; ++s) {
      bool hit = false;
      for (Index v = s; v < s + h; ++v) hit = hit || in[v];
      misses += !hit;
    }
  }
  CHECK(misses == 0);
}

TEST_CASE("bounded dijkstra matches floyd-warshall") {
  Rng r(3);
  for (int it = 0; it < 20; ++it) {
    const std::size_t n = 1 + r() % 12;
    std::vector<std::vector<long long>> d(n, std::vector<long long>(n, -1));
    BoundedEdges edges;
    for (Index u = 0; u < n; ++u)
      for (Index v = 0; v < n; ++v)
        if (u != v && r() % 3 == 0) {
          const std::uint64_t w = 1 + r() % 9;
          edges[{u, v}] = w;
          d[u][v] = static_cast<long long>(w);
        }
    const auto fw = floyd_warshall(d);
    for (Index s = 0; s < n; ++s)
      for (Index t = 0; t < n; ++t) {
        const Distance got = bounded_graph_dijkstra(edges, s, t);
        if (fw[s][t] < 0) {
          REQUIRE(!got.reachable());
        } else {
          REQUIRE(got == Distance(static_cast<std::uint64_t>(fw[s][t])));
        }
      }
  }
}

TEST_CASE("power table and bordered powers agree with naive powers") {
  Rng r(4);
  const std::size_t n = 20, h = 6;
  const PrimeField f = sample_prime(n, 1, r);
  const GraphEncoding enc(f, random_digraph(n, 0.2, 1, r), r);
  const PowerOracle oracle = build_power_oracle(f, enc.matrix(), compute_fnf(f, enc.matrix(), r));
  const auto naive = naive_powers(f, enc.matrix(), h);
  PowerTable table(oracle, {7, 2, 2, 11}, h);
  CHECK(table.ids() == IndexList{2, 7, 11});
  table.extend(oracle, {5, 7});
  CHECK(table.contains(5));
  const IndexList rows{11, 5}, cols{2, 7, 5};
  const auto sel = table.select(rows, cols);
  for (std::size_t k = 0; k < h; ++k) CHECK(sel[k] == sub_matrix(naive[k], rows, cols));
  const BorderedPowers view(oracle, table, {0, 19});
  const IndexList r2{0, 2}, c2{19, 11, 0};
  const auto sel2 = view.select(r2, c2);
  for (std::size_t k = 0; k < h; ++k) CHECK(sel2[k] == sub_matrix(naive[k], r2, c2));
}

TEST_CASE("truncated single-failure query") {
  Rng r(5);
  const std::size_t n = 25;
  const PrimeField f = sample_prime(n, 1, r);
  const Digraph g = random_digraph(n, 0.12, 1, r);
  const MultiFailureDSO dso(f, g, r);
  for (int it = 0; it < 15; ++it) {
    const EdgeSet fe = random_failures(g, 1, r);
    const Edge e = *fe.begin();
    for (std::size_t h : {std::size_t{1}, std::size_t{3}, n}) {
      for (Index s = 0; s < n; s += 3)
        for (Index t = 0; t < n; ++t) {
          const Distance d = bfs_oracle(g, fe, {}, s, t);
          const std::uint64_t want = d.reachable() ? std::min<std::uint64_t>(d.value(), h) : h;
          REQUIRE(dso.truncated_1f_query(e, s, t, h) == want);
        }
    }
  }
}

TEST_CASE("dso hand cases") {
  Rng r(6);
  Digraph cyc(3);
  cyc.add_edge(0, 1);
  cyc.add_edge(1, 2);
  cyc.add_edge(2, 0);
  DistanceSensitivityOracle dso(cyc, r);
  dso.update({{1, 2}}, {}, r);
  CHECK(dso.query(0, 2) == Distance::unreachable());
  CHECK(dso.query(0, 1) == Distance(1));
  dso.update({}, {}, r);
  CHECK(dso.query(0, 2) == Distance(2));
  dso.update({}, {1}, r);
  CHECK(dso.query(0, 2) == Distance::unreachable());
  CHECK(dso.query(2, 0) == Distance(1));
  CHECK(dso.query(1, 1) == Distance::unreachable());
  CHECK(dso.query(0, 0) == Distance(0));
  CHECK_THROWS_AS(dso.update({{0, 2}}, {}, r), EdgeAbsent);

  Digraph path(5);
  for (Index v = 0; v + 1 < 5; ++v) path.add_edge(v, v + 1);
  DistanceSensitivityOracle p(path, r);
  CHECK(p.query(0, 4) == Distance(4));
  p.update({{2, 3}}, {}, r);
  CHECK(p.query(0, 4) == Distance::unreachable());
  CHECK(p.query(0, 2) == Distance(2));

  DistanceSensitivityOracle empty(Digraph(4), r);
  CHECK(empty.query(0, 3) == Distance::unreachable());
  CHECK(empty.query(2, 2) == Distance(0));

  Digraph full(6);
  for (Index u = 0; u < 6; ++u)
    for (Index v = 0; v < 6; ++v)
      if (u != v) full.add_edge(u, v);
  DistanceSensitivityOracle k6(full, r);
  k6.update({{0, 5}}, {}, r);
  CHECK(k6.query(0, 5) == Distance(2));
  CHECK(k6.query(5, 0) == Distance(1));
}

TEST_CASE("dso update is idempotent") {
  Rng r(7);
  const Digraph g = random_digraph(20, 0.15, 1, r);
  DistanceSensitivityOracle dso(g, r, {1, false, {}});
  const EdgeSet fe = random_failures(g, 3, r);
  dso.update(fe, {}, r);
  std::vector<Distance> first;
  for (Index s = 0; s < 20; ++s)
    for (Index t = 0; t < 20; ++t) first.push_back(dso.query(s, t));
  dso.update(fe, {}, r);
  std::size_t k = 0;
  for (Index s = 0; s < 20; ++s)
    for (Index t = 0; t < 20; ++t) REQUIRE(dso.query(s, t) == first[k++]);
}

TEST_CASE("dso agrees with BFS on random graphs and failure sets") {
  Rng r(8);
  for (int it = 0; it < 6; ++it) {
    const std::size_t n = 10 + r() % 51;
    const Digraph g = random_digraph(n, 3.0 / static_cast<double>(n), 1, r);
    DistanceSensitivityOracle dso(g, r, {1, false, {}});
    for (std::size_t f : {std::size_t{0}, std::size_t{1}, std::size_t{4}, n / 3}) {
      const EdgeSet fe = random_failures(g, f, r);
      dso.update(fe, {}, r);
      check_all_pairs(dso, g, fe, {}, n > 30 ? 3 : 1);
    }
  }
}

TEST_CASE("dso with weights and vertex failures") {
  Rng r(9);
  for (int it = 0; it < 3; ++it) {
    const std::size_t n = 12 + r() % 10;
    const Digraph g = random_digraph(n, 2.5 / static_cast<double>(n), 3, r);
    DistanceSensitivityOracle dso(g, r);
    const EdgeSet fe = random_failures(g, 2, r);
    const VertexSet fv{static_cast<Index>(r() % n)};
    dso.update(fe, fv, r);
    check_all_pairs(dso, g, fe, fv);
  }
}

TEST_CASE("dynamic edge oracle") {
  Rng r(10);
  const std::size_t n = 50;
  const PrimeField f = sample_prime(n, 1, r);
  Digraph g = random_digraph(n, 0.05, 1, r);
  DynamicEdgeOracle dyn(f, g, r);
  CHECK(dyn.phase_length() == 8);

  // insert then delete restores every answer
  Index u = 0, v = 1;
  while (g.has_edge(u, v)) ++v;
  std::vector<Distance> before;
  for (Index t = 0; t < n; ++t) before.push_back(dyn.query(u, t));
  dyn.update(u, v, EdgeOp::insert, r);
  CHECK(dyn.query(u, v) == Distance(1));
  dyn.update(u, v, EdgeOp::remove, r);
  for (Index t = 0; t < n; ++t) REQUIRE(dyn.query(u, t) == before[t]);

  for (int step = 0; step < 100; ++step) {
    const Index a = r() % n;
    Index b = r() % n;
    if (a == b) b = (b + 1) % n;
    const EdgeOp op = g.has_edge(a, b) ? EdgeOp::remove : EdgeOp::insert;
    dyn.update(a, b, op, r);
    if (op == EdgeOp::insert) {
      g.add_edge(a, b);
    } else {
      g.remove_edge(a, b);
    }
    REQUIRE(dyn.encoding().graph() == g);
    if (step % 10 == 9) {
      const IndexList& hv = dyn.hitting_set().vertices;
      const auto naive = naive_powers(f, dyn.encoding().matrix(), dyn.maintained_powers().size());
      for (std::size_t k = 0; k < naive.size(); ++k) REQUIRE(dyn.maintained_powers()[k] == sub_matrix(naive[k], hv, hv));
      for (Index s = 0; s < n; s += 7)
        for (Index t = 0; t < n; ++t) REQUIRE(dyn.query(s, t) == bfs_oracle(g, {}, {}, s, t));
    }
  }
  CHECK(dyn.rebuilds() >= 12);
  CHECK_THROWS_AS(dyn.update(0, 0, EdgeOp::insert, r), std::invalid_argument);
}

TEST_CASE("vertex update oracle") {
  Rng r(11);
  const std::size_t n = 30;
  const PrimeField f = sample_prime(n, 1, r);
  Digraph g = random_digraph(n, 0.1, 1, r);
  VertexUpdateOracle vx(f, g, r);
  CHECK(vx.fnf_calls() == 2);
  const Vector cp = vx.form().charpoly;
  CHECK(cp == charpoly_brute(f, vx.encoding().matrix()));

  // re-applying the current neighborhoods leaves A unchanged
  vx.update(4, g.out_neighbors(4), g.in_neighbors(4), r);
  CHECK(vx.form().charpoly == cp);
  CHECK(vx.fnf_calls() == 2);

  vx.update(4, {}, {}, r);
  for (Index w : g.out_neighbors(4)) g.remove_edge(4, w);
  for (Index w : g.in_neighbors(4)) g.remove_edge(w, 4);
  for (Index t = 0; t < n; ++t)
    if (t != 4) {
      CHECK(vx.query(4, t) == Distance::unreachable());
      CHECK(vx.query(t, 4) == Distance::unreachable());
    }

  for (int step = 0; step < 50; ++step) {
    const Index v = r() % n;
    std::vector<Index> out, in;
    for (Index w = 0; w < n; ++w) {
      if (w == v) continue;
      if (r() % 8 == 0) out.push_back(w);
      if (r() % 8 == 0) in.push_back(w);
    }
    vx.update(v, out, in, r);
    for (Index w : g.out_neighbors(v)) g.remove_edge(v, w);
    for (Index w : g.in_neighbors(v)) g.remove_edge(w, v);
    for (Index w : out) g.add_edge(v, w);
    for (Index w : in) g.add_edge(w, v);
    REQUIRE(vx.encoding().graph() == g);
    REQUIRE(is_valid_form(f, vx.encoding().matrix(), vx.form()));
    if (step % 10 == 0) {
      for (Index s = 0; s < n; s += 5)
        for (Index t = 0; t < n; ++t) REQUIRE(vx.query(s, t) == bfs_oracle(g, {}, {}, s, t));
    }
  }
  CHECK(vx.fnf_calls() == 2 + 2 * vx.fallbacks());
  CHECK_THROWS_AS(vx.update(0, {0}, {}, r), std::invalid_argument);
}
