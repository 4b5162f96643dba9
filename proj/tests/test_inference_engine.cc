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

#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "evaladvisor/error.h"
#include "evaladvisor/inference_engine.h"
#include "support.h"

using namespace evaladvisor;
using namespace testing_support;

namespace {

// Naive fixpoint: fire every rule whose antecedent is present until nothing
// changes. `rounds` bounds the number of sweeps (-1 = unbounded).
ItemSet NaiveFixpoint(const ItemSet &input, const std::vector<Rule> &rules, int rounds = -1) {
  std::set<Item> have(input.begin(), input.end());
  for (int r = 0; rounds < 0 || r < rounds; ++r) {
    std::set<Item> next = have;
    for (const auto &rule : rules) {
      bool all = true;
      for (const auto &a : rule.antecedent) all = all && have.count(a);
      if (all) next.insert(rule.consequent);
    }
    if (next == have) break;
    have = std::move(next);
  }
  return {have.begin(), have.end()};
}

std::set<std::string> Labels(const Vocabulary &v, const Closure &c, const ItemSet &exclude) {
  std::set<std::string> out;
  for (const auto &d : c.derivations()) {
    if (!Contains(exclude, d.item)) out.insert(std::string(v.label(d.item.term)));
  }
  return out;
}

}  // namespace

TEST_CASE("vertical scalability closure") {
  EvidenceStore store = LoadStore("seed");
  KnowledgeBase kb = BuildKb(store);
  const auto &v = store.vocabulary();
  Item vs = It(v, "ServiceFeature", "Vertical Scalability");
  Item sc = It(v, "ServiceFeature", "Scalability");
  Item types = It(v, "Environment", "different types of Cloud resource");
  Item varying = It(v, "Manipulation", "varying Cloud resource with the same amount of workload");
  Item speedup = It(v, "Metric", "speedup over a baseline");

  Closure c = ComputeClosure({vs}, kb);
  CHECK(Labels(v, c, v.ExpandItem(vs)) ==
        std::set<std::string>{"different types of Cloud resource",
                              "varying Cloud resource with the same amount of workload",
                              "speedup over a baseline"});
  REQUIRE(c.Find(vs));
  CHECK(c.Find(vs)->chain.empty());
  CHECK(c.Find(types)->depth() == 1);
  CHECK(c.Find(sc)->depth() == 1);
  REQUIRE(c.Find(varying));
  CHECK(c.Find(varying)->depth() == 2);
  CHECK(kb.Find(c.Find(varying)->chain.front())->origin == RuleOrigin::kBridge);
  CHECK(c.Find(speedup)->depth() == 2);
  CHECK(c.Find(speedup)->confidence == Rational(5, 6));

  Closure shallow = ComputeClosure({vs}, kb, 1);
  CHECK(shallow.items() == MakeItemSet({vs, sc, types}));
  CHECK(shallow.items() == NaiveFixpoint({vs}, kb.rules(), 1));
}

TEST_CASE("closure edge cases") {
  EvidenceStore store = LoadStore("seed");
  KnowledgeBase kb = BuildKb(store);
  const auto &v = store.vocabulary();
  Item bench = It(v, "Benchmark", "TPC-W");
  CHECK(ComputeClosure({bench}, kb).items() == ItemSet{bench});
  CHECK_THROWS_AS(ComputeClosure({}, kb), Error);
  CHECK_THROWS_AS(ComputeClosure({bench}, kb, 0), Error);
  KnowledgeBase empty(store.vocabulary_ptr(), {});
  CHECK(ComputeClosure({bench}, empty).items() == ItemSet{bench});
}

TEST_CASE("applicable rules") {
  EvidenceStore store = LoadStore("seed");
  KnowledgeBase kb = BuildKb(store);
  const auto &v = store.vocabulary();
  Item hs = It(v, "ServiceFeature", "Horizontal Scalability");
  Item sc = It(v, "ServiceFeature", "Scalability");
  Item amount = It(v, "Environment", "different amount of Cloud resource");

  auto hs_rules = ApplicableRules({hs}, kb);
  bool found = false;
  for (const auto &a : hs_rules) found = found || a.rule->consequent == amount;
  CHECK(found);
  for (std::size_t i = 1; i < hs_rules.size(); ++i) {
    CHECK(hs_rules[i - 1].enablement_depth <= hs_rules[i].enablement_depth);
  }

  for (const auto &a : ApplicableRules({sc}, kb)) {
    for (const auto &ant : a.rule->antecedent) {
      CHECK(ant.term != It(v, "ServiceFeature", "Vertical Scalability").term);
      CHECK(ant.term != hs.term);
    }
  }
  KnowledgeBase empty(store.vocabulary_ptr(), {});
  CHECK(ApplicableRules({hs}, empty).empty());
}

TEST_CASE("closure against naive fixpoint and depth-1 oracle on random KBs") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 150; ++round) {
    World w = Materialize(RandomWorld(rng));
    MiningConfig config;
    config.min_coverage = 2;
    config.min_accuracy = Rational(1, 2);
    KnowledgeBase kb = KnowledgeBase::Merge(w.vocab, RuleMiner(*w.store).ExtractRules(config),
                                            MaterializeBridgeRules(*w.store), {});
    const int unbounded = static_cast<int>(kb.rules().size()) + 1;
    for (int q = 0; q < 5; ++q) {
      ItemSet input = w.ItemsOf(RandomTerms(rng, w.raw, 3));
      CHECK(ComputeClosure(input, kb, 1).items() == NaiveFixpoint(input, kb.rules(), 1));
      Closure full = ComputeClosure(input, kb, unbounded);
      CHECK(full.items() == NaiveFixpoint(input, kb.rules()));
      for (const auto &d : full.derivations()) {
        ItemSet derived;
        CHECK(ReplayChain(input, d.chain, kb, &derived));
        if (!d.chain.empty()) CHECK(Contains(derived, d.item));
        std::set<std::string> unique(d.chain.begin(), d.chain.end());
        CHECK(unique.size() == d.chain.size());
      }
    }
  }
}
