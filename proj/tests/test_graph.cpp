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


#include <random>
#include <sstream>

#include "doctest.h"
#include "fnfdist/encoding.hpp"
#include "fnfdist/errors.hpp"
#include "fnfdist/frobenius.hpp"
#include "fnfdist/graph.hpp"
#include "support/oracles.hpp"

using namespace fnfdist;
using namespace fnfdist::testing;

namespace {

// Hand-written breadth-first search, independent of the library's oracle.
std::vector<std::optional<std::size_t>> bfs_all(const Digraph& g, Index s) {
  std::vector<std::optional<std::size_t>> d(g.order());
  std::vector<Index> frontier{s};
  d[s] = 0;
  while (!frontier.empty()) {
    std::vector<Index> next;
    for (Index u : frontier)
      for (Index v : g.out_neighbors(u))
        if (!d[v]) {
          d[v] = *d[u] + 1;
          next.push_back(v);
        }
    frontier = std::move(next);
  }
  return d;
}

}  // namespace

TEST_CASE("digraph basics and errors") {
  Digraph g(3);
  g.add_edge(0, 1);
  CHECK(g.has_edge(0, 1));
  CHECK_THROWS_AS(g.add_edge(0, 1), EdgeAlreadyPresent);
  CHECK_THROWS_AS(g.add_edge(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(0, 3), IndexOutOfRange);
  CHECK_THROWS_AS(g.remove_edge(1, 0), EdgeAbsent);
  CHECK_THROWS_AS(g.add_edge(1, 2, 2), WeightOutOfRange);
}

TEST_CASE("edge-list round trip and parse errors") {
  Rng r(1);
  for (unsigned w : {1u, 3u}) {
    const Digraph g = random_digraph(12, 0.3, w, r);
    std::ostringstream out;
    write_edge_list(out, g);
    std::istringstream in(out.str());
    const Digraph back = read_edge_list(in);
    CHECK(back == g);
    std::ostringstream again;
    write_edge_list(again, back);
    CHECK(again.str() == out.str());
  }
  auto parse = [](const std::string& s) {
    std::istringstream in(s);
    return read_edge_list(in);
  };
  CHECK(parse("# comment\n3 1\n1 2\n").has_edge(0, 1));
  CHECK_THROWS_AS(parse("3 2\n1 2\n"), ParseError);
  CHECK_THROWS_AS(parse("3 1\n1 1\n"), ParseError);
  CHECK_THROWS_AS(parse("3 1\n1 x\n"), ParseError);
  CHECK_THROWS_AS(parse("3 1 2\n1 2 3\n"), ParseError);
  try {
    parse("2 1\n\n1 5\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("random_digraph extremes and determinism") {
  Rng a(5), b(5);
  CHECK(random_digraph(7, 0.0, 1, a).size() == 0);
  CHECK(random_digraph(7, 1.0, 1, a).size() == 42);
  Rng c(9), d(9);
  CHECK(random_digraph(20, 0.2, 3, c) == random_digraph(20, 0.2, 3, d));
}

TEST_CASE("bfs and dijkstra oracles") {
  Digraph g(3);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  CHECK(bfs_oracle(g, {}, {}, 0, 0) == Distance(0));
  CHECK(bfs_oracle(g, {}, {}, 0, 2) == Distance(2));
  CHECK(bfs_oracle(g, {}, {}, 2, 0) == Distance::unreachable());
  CHECK(bfs_oracle(g, {{1, 2}}, {}, 0, 2) == Distance::unreachable());
  CHECK(bfs_oracle(g, {}, {1}, 0, 2) == Distance::unreachable());
  Digraph w(3, true);
  w.add_edge(0, 1, 2);
  w.add_edge(1, 2, 2);
  w.add_edge(0, 2, 5);
  CHECK(dijkstra_oracle(w, {}, {}, 0, 2) == Distance(4));
  CHECK(dijkstra_oracle(w, {{0, 1}}, {}, 0, 2) == Distance(5));
  CHECK(Distance::unreachable().str() == "INF");
}

TEST_CASE("weight expansion preserves distances") {
  Digraph one(2, true);
  one.add_edge(0, 1, 3);
  auto [g1, m1] = expand_weights(one, 3);
  CHECK(bfs_oracle(g1, {}, {}, m1.vertex(0), m1.vertex(1)) == Distance(3));

  Rng r(2);
  const Digraph unit = random_digraph(8, 0.3, 1, r);
  auto [same, ms] = expand_weights(unit, 1);
  CHECK(same.size() == unit.size());
  CHECK(same.order() == unit.order());

  std::uniform_int_distribution<unsigned> dw(1, 4);
  for (int it = 0; it < 10; ++it) {
    const unsigned w = dw(r);
    const Digraph g = random_digraph(20, 0.15, w, r);
    auto [e, m] = expand_weights(g, w);
    for (Index s = 0; s < g.order(); ++s)
      for (Index t = 0; t < g.order(); ++t)
        REQUIRE(dijkstra_oracle(g, {}, {}, s, t) == bfs_oracle(e, {}, {}, m.vertex(s), m.vertex(t)));
  }
  Digraph heavy(2, true);
  heavy.add_edge(0, 1, 5);
  CHECK_THROWS_AS(expand_weights(heavy, 3), WeightOutOfRange);
}

TEST_CASE("vertex splitting and composition") {
  Digraph e(2);
  e.add_edge(0, 1);
  auto [s1, m1] = split_vertices(e);
  CHECK(bfs_oracle(s1, {}, {}, m1.in(0), m1.out(1)) == Distance(3));
  CHECK(m1.back(Distance(3)) == Distance(1));
  CHECK(m1.back(bfs_oracle(s1, {}, {}, m1.in(0), m1.out(0))) == Distance(0));

  Rng r(3);
  for (int it = 0; it < 10; ++it) {
    const Digraph g = random_digraph(30, 0.08, 1, r);
    auto [sg, m] = split_vertices(g);
    VertexSet fv;
    EdgeSet fe;
    for (int k = 0; k < 3; ++k) {
      const Index v = r() % 30;
      fv.insert(v);
      fe.insert(m.vertex_edge(v));
    }
    for (Index s = 0; s < 30; ++s)
      for (Index t = 0; t < 30; ++t) {
        if (fv.count(s) || fv.count(t)) continue;
        REQUIRE(bfs_oracle(g, {}, fv, s, t) == m.back(bfs_oracle(sg, fe, {}, m.in(s), m.out(t))));
      }
  }
  // Expand, then split; fail original vertex v as the split edge of v^1.
  for (int it = 0; it < 5; ++it) {
    const Digraph g = random_digraph(12, 0.2, 3, r);
    auto [eg, em] = expand_weights(g, 3);
    auto [sg, sm] = split_vertices(eg);
    const Index v = r() % 12;
    const EdgeSet fe{sm.vertex_edge(em.vertex(v))};
    for (Index s = 0; s < 12; ++s)
      for (Index t = 0; t < 12; ++t) {
        if (s == v || t == v) continue;
        const Distance d = sm.back(bfs_oracle(sg, fe, {}, sm.in(em.vertex(s)), sm.out(em.vertex(t))));
        REQUIRE(d == dijkstra_oracle(g, {}, {v}, s, t));
      }
  }
}

TEST_CASE("encoding support and edge changes") {
  const PrimeField f(kBigPrime);
  Rng r(4);
  {
    const GraphEncoding one(f, Digraph(1), r);
    CHECK(one.matrix()(0, 0).v != 0);
  }
  const Digraph g = random_digraph(10, 0.3, 1, r);
  GraphEncoding enc(f, g, r);
  for (Index u = 0; u < 10; ++u)
    for (Index v = 0; v < 10; ++v) {
      const bool support = u == v || g.has_edge(u, v);
      REQUIRE((enc.matrix()(u, v).v != 0) == support);
      if (support) REQUIRE(enc.matrix()(u, v) == f.mul(enc.x(u, v), enc.y(v)));
    }
  Index u = 0, v = 1;
  while (g.has_edge(u, v)) ++v;
  const ElementChange ins = enc.apply_edge_change(u, v, EdgeOp::insert, r);
  CHECK(ins.previous == f.zero());
  CHECK(enc.matrix()(u, v).v != 0);
  CHECK_THROWS_AS(enc.apply_edge_change(u, v, EdgeOp::insert, r), EdgeAlreadyPresent);
  const ElementChange del = enc.apply_edge_change(u, v, EdgeOp::remove, r);
  CHECK(del.value == f.zero());
  CHECK(enc.matrix()(u, v) == f.zero());
  CHECK(enc.graph() == g);
  CHECK_THROWS_AS(enc.apply_edge_change(u, v, EdgeOp::remove, r), EdgeAbsent);
}

TEST_CASE("minimal nonzero power equals BFS distance") {
  Rng r(5);
  std::uniform_int_distribution<std::size_t> dn(2, 40);
  for (int it = 0; it < 20; ++it) {
    const std::size_t n = dn(r);
    const PrimeField f = sample_prime(n, 1, r);
    const Digraph g = random_digraph(n, 2.0 / static_cast<double>(n), 1, r);
    const GraphEncoding enc(f, g, r);
    const auto mk = min_nonzero_power(f, enc.matrix(), n - 1);
    for (Index s = 0; s < n; ++s) {
      const auto d = bfs_all(g, s);
      for (Index t = 0; t < n; ++t) REQUIRE(mk[s][t] == d[t]);
    }
  }
}

TEST_CASE("encodings are generic and stay coherent under mutation") {
  Rng r(6);
  const std::size_t n = 16;
  const PrimeField f = sample_prime(n, 1, r);
  int ok = 0;
  for (int it = 0; it < 40; ++it) {
    const GraphEncoding enc(f, random_digraph(n, 0.15, 1, r), r);
    try {
      const FrobeniusForm form = compute_fnf(f, enc.matrix(), r);
      ok += is_valid_form(f, enc.matrix(), form);
    } catch (const GenericityFailure&) {
    }
  }
  CHECK(ok >= 39);

  GraphEncoding enc(f, random_digraph(n, 0.15, 1, r), r);
  for (int step = 0; step < 20; ++step) {
    const Index u = r() % n, v = r() % n;
    if (u == v) continue;
    enc.apply_edge_change(u, v, enc.graph().has_edge(u, v) ? EdgeOp::remove : EdgeOp::insert, r);
    const auto mk = min_nonzero_power(f, enc.matrix(), n - 1);
    for (Index s = 0; s < n; ++s) {
      const auto d = bfs_all(enc.graph(), s);
      for (Index t = 0; t < n; ++t) REQUIRE(mk[s][t] == d[t]);
    }
  }
}
