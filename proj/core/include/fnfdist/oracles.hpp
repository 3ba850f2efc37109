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
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "fnfdist/encoding.hpp"
#include "fnfdist/frobenius.hpp"
#include "fnfdist/graph.hpp"
#include "fnfdist/updates.hpp"

namespace fnfdist {

struct OracleConfig {
  double gamma = 4.0;  // hitting-set oversampling
  double alpha = 0.5;  // dynamic oracle: phases of ceil(n^(1-alpha)) updates, h = ceil(n^alpha)
  std::size_t encoding_retries = 3;
  std::size_t fnf_attempts = 0;  // 0 = default_fnf_attempts(n)
};

struct HittingSet {
  std::size_t h = 1;
  double gamma = 4.0;
  IndexList vertices;  // sorted, distinct
};

// ceil(gamma * (n / h) * ln n)
std::size_t hitting_set_target(std::size_t n, std::size_t h, double gamma);

// All of V when the target reaches n; otherwise `target` uniform draws with
// replacement, deduplicated.
HittingSet sample_hitting_set(std::size_t n, std::size_t h, double gamma, Rng& rng);

// Arcs of the auxiliary graph on H + {s, t}, weighted by bounded distances.
using BoundedEdges = std::map<Edge, std::uint64_t>;

Distance bounded_graph_dijkstra(const BoundedEdges& edges, Index s, Index t);

// Smallest k in [1, powers.size()] with powers[k-1](i, j) != 0.
std::optional<std::uint64_t> first_nonzero_power(const std::vector<Matrix>& powers, std::size_t i, std::size_t j);

// (A^k)_{K,K} for k = 1..h over a growing index list K.
class PowerTable {
 public:
  PowerTable() = default;
  PowerTable(const PowerOracle& oracle, IndexList ids, std::size_t h);

  std::size_t h() const noexcept { return h_; }
  const IndexList& ids() const noexcept { return ids_; }
  bool contains(Index v) const { return pos_.count(v) != 0; }
  std::size_t position(Index v) const;
  const std::vector<Matrix>& powers() const noexcept { return powers_; }

  // Appends the ids not yet present, with two submatrix power queries for the
  // new rows and columns.
  void extend(const PowerOracle& oracle, const IndexList& more);

  // Throws IndexOutOfRange for ids outside the table.
  std::vector<Matrix> select(const IndexList& rows, const IndexList& cols) const;

 private:
  std::size_t h_ = 0;
  IndexList ids_;
  std::unordered_map<Index, std::size_t> pos_;
  std::vector<Matrix> powers_;
};

// Read-only view of a PowerTable bordered by a few extra ids. The base table
// is not copied or modified.
class BorderedPowers {
 public:
  BorderedPowers(const PowerOracle& oracle, const PowerTable& base, const IndexList& extra);
  std::vector<Matrix> select(const IndexList& rows, const IndexList& cols) const;

 private:
  const PowerTable& base_;
  IndexList extra_;
  std::unordered_map<Index, std::size_t> extra_pos_;
  IndexList all_;  // base ids followed by extra ids
  std::vector<Matrix> extra_rows_;  // extra x all
  std::vector<Matrix> extra_cols_;  // base x extra
};

// Distance sensitivity oracle for edge failures in an unweighted digraph.
// Each update() replaces the previous failure set.
class MultiFailureDSO {
 public:
  // Throws GenericityFailure when every encoding attempt fails.
  MultiFailureDSO(const PrimeField& field, Digraph graph, Rng& rng, OracleConfig config = {});

  // Throws EdgeAbsent for failures outside the graph.
  void update(const EdgeSet& failed, Rng& rng);
  Distance query(Index s, Index t) const;
  // min(delta_{G - f}(s, t), h) against the preprocessed graph.
  std::uint64_t truncated_1f_query(Edge failed, Index s, Index t, std::size_t h) const;

  const GraphEncoding& encoding() const noexcept { return enc_; }
  const PowerOracle& oracle() const noexcept { return *oracle_; }
  const HittingSet& hitting_set() const noexcept { return hitting_; }
  const EdgeSet& failed() const noexcept { return failed_; }
  std::size_t h() const noexcept { return hitting_.h; }
  // (B^k)_{H,H}, B the matrix with the failures applied.
  const std::vector<Matrix>& powers_b() const noexcept { return powers_b_; }

 private:
  PrimeField field_;
  OracleConfig config_;
  GraphEncoding enc_;
  std::optional<PowerOracle> oracle_;
  EdgeSet failed_;
  HittingSet hitting_;
  PowerTable table_;
  ElementUpdateBatch batch_;
  std::vector<Matrix> powers_b_;
  BoundedEdges h_edges_;
};

// Failure queries on weighted digraphs and with vertex failures, by weight
// expansion and vertex splitting in front of a MultiFailureDSO.
class DistanceSensitivityOracle {
 public:
  struct Options {
    unsigned c = 1;
    bool vertex_failures = true;
    OracleConfig config;
    u64 modulus = 0;  // fixed prime for tests; 0 samples one
  };

  // Samples the field for the reduced graph's order from `rng`.
  DistanceSensitivityOracle(const Digraph& graph, Rng& rng, Options options);
  DistanceSensitivityOracle(const Digraph& graph, Rng& rng) : DistanceSensitivityOracle(graph, rng, Options{}) {}

  // Vertex failures need Options::vertex_failures.
  void update(const EdgeSet& failed_edges, const VertexSet& failed_vertices, Rng& rng);
  Distance query(Index s, Index t) const;

  const Digraph& graph() const noexcept { return graph_; }
  const MultiFailureDSO& inner() const noexcept { return *inner_; }
  std::size_t reduced_order() const noexcept { return inner_->encoding().order(); }

 private:
  Index source(Index s) const;
  Index target(Index t) const;

  Digraph graph_;
  Options options_;
  WeightExpandMap expand_;
  std::optional<VertexSplitMap> split_;
  std::optional<MultiFailureDSO> inner_;
  VertexSet failed_vertices_;
};

// Fully dynamic distances under edge insertions and deletions, rebuilt every
// ceil(n^(1-alpha)) updates (amortized).
class DynamicEdgeOracle {
 public:
  DynamicEdgeOracle(const PrimeField& field, Digraph graph, Rng& rng, OracleConfig config = {});

  void update(Index u, Index v, EdgeOp op, Rng& rng);
  Distance query(Index s, Index t) const;

  const GraphEncoding& encoding() const noexcept { return enc_; }
  const HittingSet& hitting_set() const noexcept { return hitting_; }
  std::size_t phase_length() const noexcept { return phase_len_; }
  std::size_t pending() const noexcept { return pending_.size(); }
  std::size_t rebuilds() const noexcept { return rebuilds_; }
  // (B^k)_{H,H} for the current matrix B, maintained across updates.
  const std::vector<Matrix>& maintained_powers() const noexcept { return powers_b_; }

 private:
  void rebuild(Rng& rng);
  void refresh_h_edges();

  PrimeField field_;
  OracleConfig config_;
  GraphEncoding enc_;
  std::size_t h_ = 1;
  std::size_t phase_len_ = 1;
  std::size_t updates_in_phase_ = 0;
  std::size_t rebuilds_ = 0;
  Matrix snapshot_;
  std::optional<PowerOracle> oracle_;
  HittingSet hitting_;
  PowerTable table_;
  std::map<Edge, ElementChange> pending_;
  ElementUpdateBatch batch_;
  std::vector<Matrix> powers_b_;
  BoundedEdges h_edges_;
};

// Distances under vertex updates: each update is at most two rank-1 changes
// of the encoding, applied to the Frobenius forms of A and A^T.
class VertexUpdateOracle {
 public:
  VertexUpdateOracle(const PrimeField& field, Digraph graph, Rng& rng, OracleConfig config = {});

  // Replaces all edges leaving and entering v.
  void update(Index v, const std::vector<Index>& out, const std::vector<Index>& in, Rng& rng);
  Distance query(Index s, Index t) const;

  const GraphEncoding& encoding() const noexcept { return enc_; }
  const FrobeniusForm& form() const noexcept { return oracle_->form(); }
  const FrobeniusForm& form_transposed() const noexcept { return oracle_t_->form(); }
  // compute_fnf calls so far: 2 after construction, +2 per fallback.
  std::size_t fnf_calls() const noexcept { return fnf_calls_; }
  std::size_t fallbacks() const noexcept { return fallbacks_; }

 private:
  void apply_rank1(const Vector& col, const Vector& row, Rng& rng);
  void full_rebuild(Rng& rng);

  PrimeField field_;
  OracleConfig config_;
  GraphEncoding enc_;
  Matrix current_;
  std::optional<PowerOracle> oracle_;
  std::optional<PowerOracle> oracle_t_;
  std::size_t fnf_calls_ = 0;
  std::size_t fallbacks_ = 0;
};

}  // namespace fnfdist
