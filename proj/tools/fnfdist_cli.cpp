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
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cli.hpp"

namespace {

using fnfdist::cli::RunConfig;

struct Flags {
  RunConfig config;
  std::string oracle = "dso";
  std::string format = "text";
  std::string output;
};

void add_common(CLI::App* app, Flags& flags) {
  app->add_option("--seed", flags.config.seed, "PRNG seed (required)")->required();
  app->add_option("--n", flags.config.n, "vertex count")->capture_default_str();
  app->add_option("--density", flags.config.density, "edge probability")->capture_default_str();
  app->add_option("--W", flags.config.W, "maximum edge weight")->capture_default_str();
  app->add_option("--c", flags.config.c, "field size exponent, p >= n^(4+c)")->capture_default_str();
  app->add_option("--gamma", flags.config.gamma, "hitting-set oversampling")->capture_default_str();
  app->add_option("--alpha", flags.config.alpha, "dynamic oracle phase exponent")->capture_default_str();
  app->add_option("--oracle", flags.oracle, "dso | dyn-edge | vx")->capture_default_str();
  app->add_option("--graph", flags.config.graph_path, "edge-list file");
  app->add_option("--script", flags.config.script_path, "update/query script");
  app->add_option("--format", flags.format, "text | json | csv")->capture_default_str();
  app->add_option("-o,--output", flags.output, "write to this file instead of stdout");
  // Forces the field modulus; lets smoke tests provoke Monte Carlo errors.
  app->add_option("--test-modulus", flags.config.modulus)->group("");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Algebraic distance oracles over prime fields"};
  app.require_subcommand(1);
  Flags flags;
  fnfdist::cli::BenchPlan plan;

  auto* gen = app.add_subcommand("gen", "write a seeded random digraph as an edge list");
  auto* run = app.add_subcommand("run", "replay a script through an oracle");
  auto* verify = app.add_subcommand("verify", "replay a script and compare with BFS / Dijkstra");
  auto* bench = app.add_subcommand("bench", "time fast kernels against naive ones, CSV out");
  for (auto* sub : {gen, run, verify, bench}) add_common(sub, flags);
  bench->add_option("--sizes", plan.sizes, "n grid")->delimiter(',');
  bench->add_option("--ops", plan.operations, "submatrix, perturbed, dso")->delimiter(',');
  bench->add_option("--f", plan.failures, "failures per dso update")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    flags.config.oracle = fnfdist::cli::parse_oracle_kind(flags.oracle);
    flags.config.format = fnfdist::cli::parse_output_format(flags.format);
    fnfdist::cli::validate(flags.config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  std::ofstream file;
  if (!flags.output.empty()) {
    file.open(flags.output);
    if (!file) {
      std::cerr << "error: cannot write " << flags.output << '\n';
      return 1;
    }
  }
  std::ostream& out = flags.output.empty() ? std::cout : file;

  if (*gen) return fnfdist::cli::cmd_gen(flags.config, out);
  if (*run) return fnfdist::cli::cmd_run(flags.config, out, std::cerr);
  if (*verify) return fnfdist::cli::cmd_verify(flags.config, out, std::cerr);
  return fnfdist::cli::cmd_bench(flags.config, plan, out, std::cerr);
}
