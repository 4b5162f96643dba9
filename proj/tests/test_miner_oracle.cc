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

// The miner against a brute-force enumerator that works from the raw
// generator data (term indices and parent links), not from the library's
// vocabulary or store.

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>
#include <set>
#include <tuple>

#include "doctest.h"
#include "evaladvisor/rule_miner.h"
#include "oracle.h"
#include "support.h"

using namespace evaladvisor;
using namespace testing_support;

TEST_CASE("extract_rules equals brute force on 200 random corpora") {
  const auto start = std::chrono::steady_clock::now();
  int discrepancies = 0;
  std::size_t total_rules = 0;
  for (int round = 0; round < 200; ++round) {
    std::mt19937_64 rng(1000 + round);
    World w = Materialize(RandomWorld(rng));
    OracleConfig oc = RandomOracleConfig(rng);
    MiningConfig config;
    config.min_coverage = oc.min_coverage;
    config.min_accuracy = Rational(oc.acc_num, oc.acc_den);
    config.max_itemset_size = oc.max_size;

    auto expected = BruteForceRules(w.raw, oc);
    auto expected_sets = BruteForceItemsets(w.raw, oc);
    total_rules += expected.size();
    for (KernelMode mode : {KernelMode::kSerial, KernelMode::kParallel}) {
      RuleMiner miner(*w.store, mode);
      auto got = RuleKeys(*w.vocab, miner.ExtractRules(config));
      auto got_sets = ItemsetKeys(*w.vocab, miner.FrequentItemsets(config));
      if (got != expected || got_sets != expected_sets) {
        ++discrepancies;
        MESSAGE("round " << round << " mode " << static_cast<int>(mode) << ": expected "
                         << expected.size() << " rules, got " << got.size());
      }
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  MESSAGE("rules compared: " << total_rules << ", seconds: " << seconds);
  CHECK(discrepancies == 0);
  CHECK(total_rules > 200);  // the generator actually produces rules
  CHECK(seconds < 60.0);
}
