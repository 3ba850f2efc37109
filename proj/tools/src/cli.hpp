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
#include <stdexcept>
#include <string>
#include <vector>

#include "fnfdist/graph.hpp"

namespace fnfdist::cli {

enum class OracleKind { dso, dyn_edge, vx };
enum class OutputFormat { text, json, csv };

OracleKind parse_oracle_kind(const std::string& s);
OutputFormat parse_output_format(const std::string& s);

struct RunConfig {
  std::uint64_t seed = 0;
  OracleKind oracle = OracleKind::dso;
  std::size_t n = 32;
  double density = 0.1;
  unsigned W = 1;
  unsigned c = 1;
  double gamma = 4.0;
  double alpha = 0.5;
  std::string graph_path;
  std::string script_path;
  OutputFormat format = OutputFormat::text;
  std::uint64_t modulus = 0;  // test only: force a (small) prime
};

// Throws std::invalid_argument naming the offending knob.
void validate(const RunConfig& config);

struct Command {
  enum class Kind { insert, remove, fail, vertex, query };
  Kind kind = Kind::query;
  std::size_t line = 0;
  // 0-based; a, b are the edge endpoints, the query pair or (a) the updated vertex.
  Index a = 0;
  Index b = 0;
  EdgeSet edges;
  VertexSet vertices;
  std::vector<Index> out;
  std::vector<Index> in;
};

// Script lines (vertices 1-based, '#' starts a comment):
//   E+ u v | E- u v | F u1 v1 u2 v2 ... [| w1 w2 ...] | VX v | out: ... | in: ... | Q s t
// Throws ParseError carrying the line number.
std::vector<Command> parse_script(std::istream& in);

// Runtime failure of a script command; what() names the command index and line.
class CommandError : public std::runtime_error {
 public:
  CommandError(std::size_t index, std::size_t line, const std::string& what);
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

struct QueryResult {
  std::size_t index = 0;  // command index, 0-based
  Index s = 0;
  Index t = 0;
  Distance distance;
};

// Replays the script through the configured oracle.
std::vector<QueryResult> replay(const RunConfig& config, const Digraph& graph, const std::vector<Command>& script);

// Same replay against BFS / Dijkstra on the explicitly maintained graph.
std::vector<QueryResult> replay_reference(const RunConfig& config, const Digraph& graph,
                                          const std::vector<Command>& script);

void write_results(std::ostream& out, const std::vector<QueryResult>& results, OutputFormat format);

// Subcommands. Each returns the process exit code.
int cmd_gen(const RunConfig& config, std::ostream& out);
int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);

struct BenchRow {
  std::string operation;
  std::size_t n = 0;
  std::size_t h = 0;
  std::size_t f = 0;
  double wall_ms = 0.0;
  bool agree = true;
  double baseline_ms = 0.0;  // naive counterpart on the same input

  double speedup() const { return wall_ms > 0.0 ? baseline_ms / wall_ms : 0.0; }
};

// One row per kernel: wall_ms times the fast path, baseline_ms the naive one.
BenchRow bench_submatrix_powers(std::size_t n, std::uint64_t seed);
BenchRow bench_perturbed_iterates(std::size_t n, std::uint64_t seed);
BenchRow bench_dso_update(std::size_t n, std::size_t f, std::uint64_t seed);

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

struct BenchPlan {
  std::vector<std::size_t> sizes{64, 128, 256};
  std::vector<std::string> operations{"submatrix", "perturbed", "dso"};
  std::size_t failures = 4;
};

int cmd_bench(const RunConfig& config, const BenchPlan& plan, std::ostream& out, std::ostream& err);

}  // namespace fnfdist::cli
