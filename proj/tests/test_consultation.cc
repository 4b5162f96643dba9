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

#include <random>
#include <set>

#include "doctest.h"
#include "evaladvisor/consultation.h"
#include "evaladvisor/error.h"
#include "support.h"

using namespace evaladvisor;
using namespace testing_support;

namespace {

Enquiry Ask(const Vocabulary &v, const std::vector<std::string> &features) {
  Enquiry e;
  for (const auto &f : features) e.items.push_back(It(v, "ServiceFeature", f));
  Canonicalize(e.items);
  return e;
}

std::set<std::string> Suggested(const Vocabulary &v, const SuggestionReport &r, StepAttribute a) {
  std::set<std::string> out;
  auto it = r.suggestions.find(a);
  if (it == r.suggestions.end()) return out;
  for (const auto &d : it->second) out.insert(std::string(v.label(d.item.term)));
  return out;
}

ErrorCode CodeOf(const std::function<void()> &fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::kInvalidInput;
}

}  // namespace

TEST_CASE("application cases") {
  EvidenceStore store = LoadStore("seed");
  KnowledgeBase kb = BuildKb(store);
  const auto &v = store.vocabulary();

  SuggestionReport el = Suggest(store, kb, Ask(v, {"Elasticity"}), 0);
  CHECK(Suggested(v, el, StepAttribute::kMetric).count("VM Boosting Latency"));
  CHECK(Suggested(v, el, StepAttribute::kManipulation).count("Workloads rise and fall repeatedly"));
  for (const auto &[attribute, list] : el.suggestions) {
    for (const auto &d : list) {
      CHECK(d.depth() == 1);
      CHECK(kb.Find(d.chain.front())->origin == RuleOrigin::kCurated);
    }
  }

  SuggestionReport var = Suggest(store, kb, Ask(v, {"Variability"}), 0);
  CHECK(Suggested(v, var, StepAttribute::kMetric) == std::set<std::string>{"Standard Deviation with Average Value"});
  CHECK(Suggested(v, var, StepAttribute::kManipulation) ==
        std::set<std::string>{"Repeat experiment at different time"});

  // Requested attributes filter the groups.
  Enquiry metrics_only = Ask(v, {"Variability"});
  metrics_only.requested_attributes = std::vector<StepAttribute>{StepAttribute::kMetric};
  SuggestionReport filtered = Suggest(store, kb, metrics_only, 0);
  CHECK(filtered.suggestions.size() == 1);
  CHECK(filtered.suggestions.count(StepAttribute::kMetric));
}

TEST_CASE("sibling features get one group each") {
  EvidenceStore store = LoadStore("seed");
  KnowledgeBase kb = BuildKb(store);
  const auto &v = store.vocabulary();
  SuggestionReport r = Suggest(store, kb, Ask(v, {"Storage", "Cost"}), 0);
  REQUIRE(r.feature_groups.size() == 2);
  std::set<std::string> features;
  for (const auto &g : r.feature_groups) {
    features.insert(std::string(v.label(g.feature.term)));
    // Each group's cases carry that feature.
    for (const auto &id : g.supporting_cases) {
      CHECK(store.Matches(store.Get(id), {g.feature}));
    }
    CHECK_FALSE(g.supporting_cases.empty());
  }
  CHECK(features == std::set<std::string>{"Storage", "Cost"});

  json j = ReportToJson(v, kb, r);
  CHECK(j["feature_groups"].size() == 2);
  CHECK(j["feature_groups"][0].contains("suggestions"));
}

TEST_CASE("empty knowledge and invalid enquiries") {
  auto v = SeedVocab();
  EvidenceStore empty_store(v);
  KnowledgeBase empty_kb(v, {});
  Enquiry e = Ask(*v, {"Elasticity"});
  CHECK(CodeOf([&] { Suggest(empty_store, empty_kb, e, 0); }) == ErrorCode::kEmptyKnowledge);
  CHECK(CodeOf([&] { Suggest(empty_store, empty_kb, Enquiry{}, 0); }) == ErrorCode::kInvalidInput);

  // Rules alone are enough to answer.
  KnowledgeBase curated(v, SeedCurated(*v));
  SuggestionReport r = Suggest(empty_store, curated, e, 0);
  CHECK(Suggested(*v, r, StepAttribute::kMetric).count("VM Boosting Latency"));
  CHECK(r.cases.results.empty());
}

TEST_CASE("reports are reproducible") {
  EvidenceStore store = LoadStore("seed");
  KnowledgeBase kb = BuildKb(store);
  const auto &v = store.vocabulary();
  Enquiry e = Ask(v, {"Horizontal Scalability"});
  SuggestionReport a = Suggest(store, kb, e, 1000);
  SuggestionReport b = Suggest(store, kb, e, 2000);
  CHECK(a.id == b.id);
  CHECK(a.id.rfind("rep-", 0) == 0);
  json ja = ReportToJson(v, kb, a), jb = ReportToJson(v, kb, b);
  CHECK(ja["generated_at"] != jb["generated_at"]);
  ja.erase("generated_at");
  jb.erase("generated_at");
  CHECK(ja == jb);
  CHECK(ja["kb_fingerprint"] == kb.fingerprint());

  SuggestionReport other = Suggest(store, kb, Ask(v, {"Vertical Scalability"}), 1000);
  CHECK(other.id != a.id);
}

TEST_CASE("every suggestion is reachable from the enquiry") {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 100; ++round) {
    World w = Materialize(RandomWorld(rng));
    MiningConfig config;
    config.min_coverage = 2;
    config.min_accuracy = Rational(1, 2);
    KnowledgeBase kb = KnowledgeBase::Merge(w.vocab, RuleMiner(*w.store).ExtractRules(config),
                                            MaterializeBridgeRules(*w.store), {});
    Enquiry e;
    e.items = w.ItemsOf(RandomTerms(rng, w.raw, 2));
    if (w.store->active_count() == 0 && kb.Count(RuleOrigin::kMined) == 0) {
      CHECK(CodeOf([&] { Suggest(*w.store, kb, e, 0); }) == ErrorCode::kEmptyKnowledge);
      continue;
    }
    SuggestionReport r = Suggest(*w.store, kb, e, 0);
    ItemSet restated = w.vocab->ExpandItems(r.enquiry.items);
    for (const auto &[attribute, list] : r.suggestions) {
      for (const auto &d : list) {
        CHECK(d.item.attribute == attribute);
        CHECK_FALSE(Contains(restated, d.item));
        ItemSet derived;
        CHECK(ReplayChain(r.enquiry.items, d.chain, kb, &derived));
        CHECK(Contains(derived, d.item));
        // Confidence is the product of the chain's accuracies.
        Rational product(1, 1);
        for (const auto &id : d.chain) product = product * kb.Find(id)->accuracy;
        CHECK(d.confidence == product);
      }
    }
  }
}

TEST_CASE("feedback JSON") {
  Feedback f = FeedbackFromJson({{"report_id", "rep-1"}, {"verdict", "not-helpful"}, {"note", "meh"}});
  CHECK(f.verdict == Verdict::kNotHelpful);
  CHECK(f.note == "meh");
  json j = FeedbackToJson(f);
  CHECK(j["verdict"] == "not-helpful");
  CHECK(FeedbackFromJson(j).report_id == "rep-1");
  CHECK(CodeOf([] { FeedbackFromJson({{"report_id", "x"}, {"verdict", "great"}}); }) == ErrorCode::kInvalidInput);
  CHECK(CodeOf([] { FeedbackFromJson({{"verdict", "helpful"}}); }) == ErrorCode::kInvalidInput);
  CHECK(CodeOf([] { FeedbackFromJson(json::array()); }) == ErrorCode::kInvalidInput);
}
