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
#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <vector>

#include "cli.hpp"
#include "fnfdist/frobenius.hpp"
#include "fnfdist/oracles.hpp"
#include "fnfdist/updates.hpp"

namespace fnfdist::cli {

namespace {

// Median wall time of a few runs; the first run also pays for page faults.
template <class F>
double time_ms(F&& body, int runs = 3) {
  std::vector<double> t;
  for (int r = 0; r < runs; ++r) {
    const auto start = std::chrono::steady_clock::now();
    body();
    const std::chrono::duration<double, std::milli> d = std::chrono::steady_clock::now() - start;
    t.push_back(d.count());
  }
  std::nth_element(t.begin(), t.begin() + runs / 2, t.end());
  return t[runs / 2];
}

Vector random_vector(const PrimeField& f, std::size_t n, Rng& rng) {
  Vector v(n);
  for (auto& x : v) x = f.random(rng);
  return v;
}

}  // namespace

BenchRow bench_submatrix_powers(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  const PrimeField f = sample_prime(n, 1, rng);
  const Matrix a = Matrix::random(f, n, n, rng);
  const PowerOracle oracle = build_power_oracle(f, a, compute_fnf(f, a, rng));
  const auto h = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  IndexList all(n);
  for (Index i = 0; i < n; ++i) all[i] = i;

  std::vector<Matrix> fast;
  const double fast_ms = time_ms([&] { fast = query_submatrix_powers(oracle, all, all, h); });
  std::vector<Matrix> naive;
  const double naive_ms = time_ms([&] {
    naive.assign(1, a);
    for (std::size_t k = 1; k < h; ++k) naive.push_back(mat_mul(f, naive.back(), a));
  });
  const bool agree = fast == naive;
  return {"submatrix_powers", n, h, 0, fast_ms, agree, naive_ms};
}

BenchRow bench_perturbed_iterates(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  const PrimeField f = sample_prime(n, 1, rng);
  const Matrix a = Matrix::random(f, n, n, rng);
  const Vector col = random_vector(f, n, rng), row = random_vector(f, n, rng), u = random_vector(f, n, rng);
  const PerturbationContext ctx{naive_iterates(f, a, u, n), naive_iterates(f, a, col, n), row};

  Iterates fast;
  const double fast_ms = time_ms([&] { fast = perturbed_iterates(f, ctx); });
  Iterates naive;
  const double naive_ms = time_ms([&] {
    Matrix b = a;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) b(i, j) = f.add(b(i, j), f.mul(col[i], row[j]));
    naive = naive_iterates(f, b, u, n);
  });
  const bool agree = fast == naive;
  return {"perturbed_iterates", n, n, 1, fast_ms, agree, naive_ms};
}

BenchRow bench_dso_update(std::size_t n, std::size_t f, std::uint64_t seed) {
  Rng rng(seed);
  const PrimeField field = sample_prime(n, 1, rng);
  const Digraph g = random_digraph(n, std::min(1.0, 4.0 / static_cast<double>(n)), 1, rng);
  MultiFailureDSO dso(field, g, rng);

  std::vector<Edge> all;
  for (const auto& [e, w] : g.edges()) all.push_back(e);
  std::shuffle(all.begin(), all.end(), rng);
  if (all.size() > f) all.resize(f);
  const EdgeSet failed(all.begin(), all.end());

  const double update_ms = time_ms([&] { dso.update(failed, rng); });
  std::optional<MultiFailureDSO> fresh;
  const double rebuild_ms = time_ms([&] {
    fresh.emplace(field, g, rng);
    fresh->update(failed, rng);
  });

  bool agree = true;
  for (int q = 0; q < 32; ++q) {
    const Index s = rng() % n, t = rng() % n;
    const Distance want = bfs_oracle(g, failed, {}, s, t);
    agree = agree && dso.query(s, t) == want && fresh->query(s, t) == want;
  }
  return {"dso_update", n, dso.h(), failed.size(), update_ms, agree, rebuild_ms};
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "operation,n,h,f,wall_ms,agree,baseline_ms,speedup\n";
  for (const auto& r : rows) {
    out << r.operation << ',' << r.n << ',' << r.h << ',' << r.f << ',' << std::fixed << std::setprecision(3)
        << r.wall_ms << ',' << (r.agree ? "true" : "false") << ',' << r.baseline_ms << ',' << std::setprecision(2)
        << r.speedup() << '\n';
  }
}

int cmd_bench(const RunConfig& config, const BenchPlan& plan, std::ostream& out, std::ostream& err) {
  try {
    std::vector<BenchRow> rows;
    for (std::size_t n : plan.sizes) {
      if (n == 0) throw std::invalid_argument("bench sizes must be positive");
      for (const auto& op : plan.operations) {
        BenchRow row;
        if (op == "submatrix") {
          row = bench_submatrix_powers(n, config.seed);
        } else if (op == "perturbed") {
          row = bench_perturbed_iterates(n, config.seed);
        } else if (op == "dso") {
          row = bench_dso_update(n, plan.failures, config.seed);
        } else {
          throw std::invalid_argument("unknown bench operation '" + op + "' (submatrix | perturbed | dso)");
        }
        rows.push_back(row);
      }
    }
    write_bench_csv(out, rows);
    const bool ok = std::all_of(rows.begin(), rows.end(), [](const BenchRow& r) { return r.agree; });
    if (!ok) err << "bench: agreement check failed\n";
    return ok ? 0 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace fnfdist::cli
