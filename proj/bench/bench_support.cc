// Copyright 2026 The EvalAdvisor Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial horizontal scan vs. OpenMP tid-list kernel on synthetic
// transaction databases. Args: transactions, candidates.

#include <benchmark/benchmark.h>

#include <random>
#include <set>
#include <vector>

#include "evaladvisor/support_kernel.h"

using namespace evaladvisor;

namespace {

constexpr std::uint32_t kUniverse = 200;

struct Workload {
  std::vector<DenseSet> transactions;
  std::vector<DenseSet> candidates;
};

DenseSet Draw(std::mt19937_64 &rng, std::size_t size) {
  // Skewed towards low indices so supports are not all zero.
  std::uniform_int_distribution<DenseItem> uni(0, kUniverse - 1);
  std::set<DenseItem> s;
  while (s.size() < size) s.insert(uni(rng) % (1 + uni(rng)));
  return {s.begin(), s.end()};
}

Workload Make(std::int64_t n_tx, std::int64_t n_cand) {
  std::mt19937_64 rng(42);
  Workload w;
  for (std::int64_t i = 0; i < n_tx; ++i) w.transactions.push_back(Draw(rng, 8 + i % 9));
  for (std::int64_t i = 0; i < n_cand; ++i) w.candidates.push_back(Draw(rng, 2 + i % 2));
  return w;
}

void BM_Serial(benchmark::State &state) {
  Workload w = Make(state.range(0), state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(CountSupportSerial(w.transactions, w.candidates));
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

void BM_Parallel(benchmark::State &state) {
  Workload w = Make(state.range(0), state.range(1));
  TidsetIndex index(w.transactions, kUniverse);
  for (auto _ : state) {
    benchmark::DoNotOptimize(CountSupportParallel(index, w.candidates));
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
  state.counters["threads"] = KernelThreads();
}

}  // namespace

BENCHMARK(BM_Serial)->Args({1000, 2000})->Args({20000, 2000})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Parallel)->Args({1000, 2000})->Args({20000, 2000})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
