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


#include <benchmark/benchmark.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fnfdist/frobenius.hpp"
#include "fnfdist/oracles.hpp"
#include "fnfdist/poly.hpp"
#include "fnfdist/updates.hpp"

using namespace fnfdist;

namespace {

Vector random_vector(const PrimeField& f, std::size_t n, Rng& rng) {
  Vector v(n);
  for (auto& x : v) x = f.random(rng);
  return v;
}

void BM_FieldMul(benchmark::State& state) {
  Rng rng(1);
  const PrimeField f = sample_prime(512, 1, rng);
  const Vector a = random_vector(f, 4096, rng), b = random_vector(f, 4096, rng);
  for (auto _ : state) {
    Scalar acc = f.zero();
    for (std::size_t i = 0; i < a.size(); ++i) acc = f.add(acc, f.mul(a[i], b[i]));
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(a.size()));
}
BENCHMARK(BM_FieldMul);

void BM_PolyMultiply(benchmark::State& state) {
  Rng rng(2);
  const auto n = static_cast<std::size_t>(state.range(0));
  const PrimeField f = sample_prime(512, 1, rng);
  const Vector a = random_vector(f, n, rng), b = random_vector(f, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::multiply(f, a, b));
}
BENCHMARK(BM_PolyMultiply)->RangeMultiplier(4)->Range(64, 4096);

void BM_MiddleProduct(benchmark::State& state) {
  Rng rng(3);
  const auto n = static_cast<std::size_t>(state.range(0));
  const PrimeField f = sample_prime(512, 1, rng);
  const Vector a = random_vector(f, 2 * n, rng), b = random_vector(f, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::middle_product(f, a, b, n));
}
BENCHMARK(BM_MiddleProduct)->RangeMultiplier(4)->Range(64, 4096);

void BM_SubmatrixPowers(benchmark::State& state) {
  Rng rng(4);
  const auto n = static_cast<std::size_t>(state.range(0));
  const PrimeField f = sample_prime(n, 1, rng);
  const Matrix a = Matrix::random(f, n, n, rng);
  const PowerOracle oracle = build_power_oracle(f, a, compute_fnf(f, a, rng));
  const auto h = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  IndexList all(n);
  std::iota(all.begin(), all.end(), Index{0});
  for (auto _ : state) benchmark::DoNotOptimize(query_submatrix_powers(oracle, all, all, h));
}
BENCHMARK(BM_SubmatrixPowers)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_PerturbedIterates(benchmark::State& state) {
  Rng rng(5);
  const auto n = static_cast<std::size_t>(state.range(0));
  const PrimeField f = sample_prime(n, 1, rng);
  const Matrix a = Matrix::random(f, n, n, rng);
  const Vector col = random_vector(f, n, rng), row = random_vector(f, n, rng), u = random_vector(f, n, rng);
  const PerturbationContext ctx{naive_iterates(f, a, u, n), naive_iterates(f, a, col, n), row};
  for (auto _ : state) benchmark::DoNotOptimize(perturbed_iterates(f, ctx));
}
BENCHMARK(BM_PerturbedIterates)->Arg(64)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_DsoUpdate(benchmark::State& state) {
  Rng rng(6);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto failures = static_cast<std::size_t>(state.range(1));
  const PrimeField f = sample_prime(n, 1, rng);
  const Digraph g = random_digraph(n, std::min(1.0, 4.0 / static_cast<double>(n)), 1, rng);
  MultiFailureDSO dso(f, g, rng);
  std::vector<Edge> all;
  for (const auto& [e, w] : g.edges()) all.push_back(e);
  std::shuffle(all.begin(), all.end(), rng);
  if (all.size() > failures) all.resize(failures);
  const EdgeSet failed(all.begin(), all.end());
  for (auto _ : state) dso.update(failed, rng);
}
BENCHMARK(BM_DsoUpdate)->Args({64, 4})->Args({128, 8})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
