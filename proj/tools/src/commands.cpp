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


#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "cli.hpp"
#include "fnfdist/errors.hpp"
#include "fnfdist/oracles.hpp"
#include "json.hpp"

namespace fnfdist::cli {

OracleKind parse_oracle_kind(const std::string& s) {
  if (s == "dso") return OracleKind::dso;
  if (s == "dyn-edge") return OracleKind::dyn_edge;
  if (s == "vx") return OracleKind::vx;
  throw std::invalid_argument("unknown oracle '" + s + "' (dso | dyn-edge | vx)");
}

OutputFormat parse_output_format(const std::string& s) {
  if (s == "text") return OutputFormat::text;
  if (s == "json") return OutputFormat::json;
  if (s == "csv") return OutputFormat::csv;
  throw std::invalid_argument("unknown format '" + s + "' (text | json | csv)");
}

void validate(const RunConfig& config) {
  if (config.n == 0) throw std::invalid_argument("--n must be positive");
  if (!(config.density >= 0.0 && config.density <= 1.0)) throw std::invalid_argument("--density must lie in [0, 1]");
  if (config.W == 0) throw std::invalid_argument("--W must be positive");
  if (config.c == 0) throw std::invalid_argument("--c must be positive");
  if (!(config.gamma > 0.0)) throw std::invalid_argument("--gamma must be positive");
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) throw std::invalid_argument("--alpha must lie in (0, 1)");
}

namespace {

const char* kind_name(Command::Kind k) {
  switch (k) {
    case Command::Kind::insert: return "E+";
    case Command::Kind::remove: return "E-";
    case Command::Kind::fail: return "F";
    case Command::Kind::vertex: return "VX";
    case Command::Kind::query: return "Q";
  }
  return "?";
}

const char* oracle_name(OracleKind k) {
  switch (k) {
    case OracleKind::dso: return "dso";
    case OracleKind::dyn_edge: return "dyn-edge";
    case OracleKind::vx: return "vx";
  }
  return "?";
}

bool supported(OracleKind oracle, Command::Kind k) {
  if (k == Command::Kind::query) return true;
  switch (oracle) {
    case OracleKind::dso: return k == Command::Kind::fail;
    case OracleKind::dyn_edge: return k == Command::Kind::insert || k == Command::Kind::remove;
    case OracleKind::vx: return k != Command::Kind::fail;
  }
  return false;
}

// Checks that do not depend on the graph's evolving state, so both replays
// reject the same commands.
void check_command(const RunConfig& config, std::size_t n, std::size_t index, const Command& c) {
  auto fail = [&](const std::string& msg) { throw CommandError(index, c.line, msg); };
  if (!supported(config.oracle, c.kind)) {
    fail(std::string(kind_name(c.kind)) + " is not supported by oracle " + oracle_name(config.oracle));
  }
  auto in_range = [&](Index v) {
    if (v >= n) fail("vertex " + std::to_string(v + 1) + " out of range 1.." + std::to_string(n));
  };
  in_range(c.a);
  in_range(c.b);
  for (const auto& [u, v] : c.edges) {
    in_range(u);
    in_range(v);
  }
  for (Index v : c.vertices) in_range(v);
  for (Index v : c.out) in_range(v);
  for (Index v : c.in) in_range(v);
}

class Driver {
 public:
  virtual ~Driver() = default;
  virtual void apply(const Command& c, Rng& rng) = 0;
  virtual Distance query(Index s, Index t) const = 0;
};

// Adjacency after replacing all edges at v.
void replace_vertex(Digraph& g, Index v, const std::vector<Index>& out, const std::vector<Index>& in) {
  for (Index w : g.out_neighbors(v)) g.remove_edge(v, w);
  for (Index w : g.in_neighbors(v)) g.remove_edge(w, v);
  for (Index w : std::set<Index>(out.begin(), out.end())) {
    if (w == v) throw std::invalid_argument("vertex update: self-loop");
    g.add_edge(v, w);
  }
  for (Index w : std::set<Index>(in.begin(), in.end())) {
    if (w == v) throw std::invalid_argument("vertex update: self-loop");
    g.add_edge(w, v);
  }
}

class ReferenceDriver final : public Driver {
 public:
  explicit ReferenceDriver(Digraph g) : g_(std::move(g)) {}

  void apply(const Command& c, Rng&) override {
    switch (c.kind) {
      case Command::Kind::insert:
        g_.add_edge(c.a, c.b);
        break;
      case Command::Kind::remove:
        g_.remove_edge(c.a, c.b);
        break;
      case Command::Kind::fail:
        for (const auto& [u, v] : c.edges)
          if (!g_.has_edge(u, v)) throw EdgeAbsent("failed edge is not in the graph");
        failed_edges_ = c.edges;
        failed_vertices_ = c.vertices;
        break;
      case Command::Kind::vertex:
        replace_vertex(g_, c.a, c.out, c.in);
        break;
      case Command::Kind::query:
        break;
    }
  }

  Distance query(Index s, Index t) const override {
    return g_.weighted() ? dijkstra_oracle(g_, failed_edges_, failed_vertices_, s, t)
                         : bfs_oracle(g_, failed_edges_, failed_vertices_, s, t);
  }

 private:
  Digraph g_;
  EdgeSet failed_edges_;
  VertexSet failed_vertices_;
};

OracleConfig oracle_config(const RunConfig& config) {
  OracleConfig oc;
  oc.gamma = config.gamma;
  oc.alpha = config.alpha;
  return oc;
}

PrimeField field_for(const RunConfig& config, std::size_t n, Rng& rng) {
  return config.modulus != 0 ? PrimeField(config.modulus) : sample_prime(n, config.c, rng);
}

class DsoDriver final : public Driver {
 public:
  DsoDriver(const RunConfig& config, const Digraph& g, bool vertex_failures, Rng& rng) {
    DistanceSensitivityOracle::Options opt;
    opt.c = config.c;
    opt.vertex_failures = vertex_failures;
    opt.config = oracle_config(config);
    opt.modulus = config.modulus;
    dso_.emplace(g, rng, opt);
  }
  void apply(const Command& c, Rng& rng) override {
    if (c.kind == Command::Kind::fail) dso_->update(c.edges, c.vertices, rng);
  }
  Distance query(Index s, Index t) const override { return dso_->query(s, t); }

 private:
  std::optional<DistanceSensitivityOracle> dso_;
};

class DynEdgeDriver final : public Driver {
 public:
  DynEdgeDriver(const RunConfig& config, const Digraph& g, Rng& rng)
      : oracle_(field_for(config, g.order(), rng), g, rng, oracle_config(config)) {}
  void apply(const Command& c, Rng& rng) override {
    if (c.kind == Command::Kind::insert) oracle_.update(c.a, c.b, EdgeOp::insert, rng);
    if (c.kind == Command::Kind::remove) oracle_.update(c.a, c.b, EdgeOp::remove, rng);
  }
  Distance query(Index s, Index t) const override { return oracle_.query(s, t); }

 private:
  DynamicEdgeOracle oracle_;
};

class VertexDriver final : public Driver {
 public:
  VertexDriver(const RunConfig& config, const Digraph& g, Rng& rng)
      : oracle_(field_for(config, g.order(), rng), g, rng, oracle_config(config)) {}
  void apply(const Command& c, Rng& rng) override {
    const Digraph& g = oracle_.encoding().graph();
    switch (c.kind) {
      case Command::Kind::vertex:
        oracle_.update(c.a, c.out, c.in, rng);
        break;
      case Command::Kind::insert: {
        if (g.has_edge(c.a, c.b)) throw EdgeAlreadyPresent("edge already present");
        auto out = g.out_neighbors(c.a);
        out.push_back(c.b);
        oracle_.update(c.a, out, g.in_neighbors(c.a), rng);
        break;
      }
      case Command::Kind::remove: {
        if (!g.has_edge(c.a, c.b)) throw EdgeAbsent("edge not present");
        auto out = g.out_neighbors(c.a);
        std::erase(out, c.b);
        oracle_.update(c.a, out, g.in_neighbors(c.a), rng);
        break;
      }
      default:
        break;
    }
  }
  Distance query(Index s, Index t) const override { return oracle_.query(s, t); }

 private:
  VertexUpdateOracle oracle_;
};

std::vector<QueryResult> drive(const RunConfig& config, const Digraph& graph, const std::vector<Command>& script,
                               bool reference) {
  validate(config);
  for (std::size_t i = 0; i < script.size(); ++i) check_command(config, graph.order(), i, script[i]);
  if (config.oracle != OracleKind::dso && graph.weighted() && graph.max_weight() > 1) {
    throw std::invalid_argument(std::string("oracle ") + oracle_name(config.oracle) + " needs an unweighted graph");
  }
  Rng rng(config.seed);
  std::unique_ptr<Driver> driver;
  if (reference) {
    driver = std::make_unique<ReferenceDriver>(graph);
  } else {
    switch (config.oracle) {
      case OracleKind::dso: {
        bool vertex_failures = false;
        for (const auto& c : script) vertex_failures = vertex_failures || !c.vertices.empty();
        driver = std::make_unique<DsoDriver>(config, graph, vertex_failures, rng);
        break;
      }
      case OracleKind::dyn_edge:
        driver = std::make_unique<DynEdgeDriver>(config, graph, rng);
        break;
      case OracleKind::vx:
        driver = std::make_unique<VertexDriver>(config, graph, rng);
        break;
    }
  }
  std::vector<QueryResult> results;
  for (std::size_t i = 0; i < script.size(); ++i) {
    const Command& c = script[i];
    try {
      if (c.kind == Command::Kind::query) {
        results.push_back({i, c.a, c.b, driver->query(c.a, c.b)});
      } else {
        driver->apply(c, rng);
      }
    } catch (const CommandError&) {
      throw;
    } catch (const std::exception& e) {
      throw CommandError(i, c.line, e.what());
    }
  }
  return results;
}

Digraph load_graph(const RunConfig& config) {
  if (config.graph_path.empty()) throw std::invalid_argument("--graph is required");
  std::ifstream in(config.graph_path);
  if (!in) throw std::runtime_error("cannot open graph file " + config.graph_path);
  return read_edge_list(in);
}

std::vector<Command> load_script(const RunConfig& config) {
  if (config.script_path.empty()) throw std::invalid_argument("--script is required");
  std::ifstream in(config.script_path);
  if (!in) throw std::runtime_error("cannot open script file " + config.script_path);
  return parse_script(in);
}

template <class Body>
int guarded(std::ostream& err, Body body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const CommandError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace

std::vector<QueryResult> replay(const RunConfig& config, const Digraph& graph, const std::vector<Command>& script) {
  return drive(config, graph, script, false);
}

std::vector<QueryResult> replay_reference(const RunConfig& config, const Digraph& graph,
                                          const std::vector<Command>& script) {
  return drive(config, graph, script, true);
}

void write_results(std::ostream& out, const std::vector<QueryResult>& results, OutputFormat format) {
  if (format == OutputFormat::csv) out << "index,s,t,distance\n";
  for (const auto& r : results) {
    switch (format) {
      case OutputFormat::text:
        out << "Q " << r.s + 1 << ' ' << r.t + 1 << " -> " << r.distance << '\n';
        break;
      case OutputFormat::csv:
        out << r.index << ',' << r.s + 1 << ',' << r.t + 1 << ',' << r.distance << '\n';
        break;
      case OutputFormat::json: {
        nlohmann::json j{{"index", r.index}, {"s", r.s + 1}, {"t", r.t + 1}, {"distance", nullptr}};
        if (r.distance.reachable()) j["distance"] = r.distance.value();
        out << j.dump() << '\n';
        break;
      }
    }
  }
}

int cmd_gen(const RunConfig& config, std::ostream& out) {
  validate(config);
  Rng rng(config.seed);
  write_edge_list(out, random_digraph(config.n, config.density, config.W, rng));
  return out ? 0 : 1;
}

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Digraph g = load_graph(config);
    const auto script = load_script(config);
    write_results(out, replay(config, g, script), config.format);
    return 0;
  });
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Digraph g = load_graph(config);
    const auto script = load_script(config);
    const auto expect = replay_reference(config, g, script);
    const auto got = replay(config, g, script);
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < got.size(); ++i) {
      if (got[i].distance == expect[i].distance) continue;
      ++mismatches;
      out << "mismatch seed=" << config.seed << " command=" << got[i].index
          << " line=" << script[got[i].index].line << ": Q " << got[i].s + 1 << ' ' << got[i].t + 1
          << " oracle=" << got[i].distance << " reference=" << expect[i].distance << '\n';
    }
    out << mismatches << " mismatches / " << got.size() << " queries\n";
    return mismatches == 0 ? 0 : 1;
  });
}

}  // namespace fnfdist::cli
