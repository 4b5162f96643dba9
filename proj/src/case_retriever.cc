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

#include "evaladvisor/case_retriever.h"

#include <algorithm>
#include <map>
#include <set>

#include "evaladvisor/error.h"
#include "evaladvisor/util.h"

namespace evaladvisor {

using nlohmann::json;

std::string_view ModeName(RetrievalMode mode) {
  switch (mode) {
    case RetrievalMode::kPrecise:
      return "precise";
    case RetrievalMode::kHeuristic:
      return "heuristic";
    case RetrievalMode::kFuzzy:
      return "fuzzy";
    case RetrievalMode::kAuto:
      return "auto";
  }
  return "auto";
}

RetrievalMode ParseMode(std::string_view text) {
  std::string n = NormalizeText(text);
  if (n == "precise") return RetrievalMode::kPrecise;
  if (n == "heuristic") return RetrievalMode::kHeuristic;
  if (n == "fuzzy") return RetrievalMode::kFuzzy;
  if (n == "auto") return RetrievalMode::kAuto;
  Fail(ErrorCode::kInvalidInput, "unknown retrieval mode '" + std::string(text) + "'");
}

void Enquiry::Validate() const {
  if (items.empty()) Fail(ErrorCode::kInvalidInput, "enquiry has no items");
  if (requested_attributes && requested_attributes->empty()) {
    Fail(ErrorCode::kInvalidInput, "requested attribute list is empty");
  }
}

bool Enquiry::Wants(StepAttribute attribute) const {
  if (!requested_attributes) return true;
  return std::find(requested_attributes->begin(), requested_attributes->end(), attribute) !=
         requested_attributes->end();
}

json EnquiryToJson(const Vocabulary &vocab, const Enquiry &enquiry) {
  json j = {{"items", ItemsToJson(vocab, enquiry.items)}, {"mode", ModeName(enquiry.mode)}};
  if (enquiry.requested_attributes) {
    json attrs = json::array();
    for (auto a : *enquiry.requested_attributes) attrs.push_back(AttributeName(a));
    j["attributes"] = attrs;
  } else {
    j["attributes"] = nullptr;
  }
  return j;
}

Enquiry EnquiryFromJson(const Vocabulary &vocab, const json &j) {
  if (!j.is_object()) Fail(ErrorCode::kInvalidInput, "enquiry must be a JSON object");
  Enquiry enquiry;
  enquiry.items = ItemsFromJson(vocab, j.value("items", json::array()));
  for (auto &item : enquiry.items) item.original.reset();
  if (j.contains("mode") && !j["mode"].is_null()) {
    if (!j["mode"].is_string()) Fail(ErrorCode::kInvalidInput, "mode must be a string");
    enquiry.mode = ParseMode(j["mode"].get<std::string>());
  }
  for (const char *key : {"attributes", "requested_attributes"}) {
    if (!j.contains(key) || j[key].is_null()) continue;
    if (!j[key].is_array()) Fail(ErrorCode::kInvalidInput, "attributes must be an array");
    std::vector<StepAttribute> attrs;
    for (const auto &a : j[key]) {
      if (!a.is_string()) Fail(ErrorCode::kInvalidInput, "attribute names must be strings");
      auto parsed = ParseAttribute(a.get<std::string>());
      if (std::find(attrs.begin(), attrs.end(), parsed) == attrs.end()) attrs.push_back(parsed);
    }
    std::sort(attrs.begin(), attrs.end());
    enquiry.requested_attributes = std::move(attrs);
  }
  enquiry.Validate();
  return enquiry;
}

json ResultToJson(const Vocabulary &vocab, const RetrievalResult &r) {
  return {{"record", r.record->id},
          {"study", r.record->provenance.study},
          {"year", r.record->provenance.year},
          {"mode", ModeName(r.mode_used)},
          {"matched_items", ItemsToJson(vocab, r.matched_items)},
          {"rules_applied", r.rules_applied},
          {"dropped_items", ItemsToJson(vocab, r.dropped_items)},
          {"score", {{"num", r.score.num()}, {"den", r.score.den()}}}};
}

json OutcomeToJson(const Vocabulary &vocab, const RetrievalOutcome &outcome) {
  json results = json::array();
  for (const auto &r : outcome.results) results.push_back(ResultToJson(vocab, r));
  json trace = json::array();
  for (const auto &t : outcome.trace) {
    json e = {{"mode", ModeName(t.mode)}};
    if (t.count) {
      e["count"] = *t.count;
    } else {
      e["count"] = nullptr;
      e["skipped"] = t.skipped;
    }
    trace.push_back(e);
  }
  return {{"results", results}, {"mode_trace", trace}};
}

// --- CaseRetriever -----------------------------------------------------------

CaseRetriever::CaseRetriever(const EvidenceStore &store, const KnowledgeBase &kb,
                             int max_depth)
    : store_(store), kb_(kb), max_depth_(max_depth) {}

std::vector<RetrievalResult> CaseRetriever::PreciseOn(const ItemSet &items) const {
  std::vector<RetrievalResult> out;
  for (const ExperimentRecord *record : store_.QueryByItems(items)) {
    RetrievalResult r;
    r.record = record;
    r.mode_used = RetrievalMode::kPrecise;
    r.matched_items = items;
    r.score = Rational::Integer(1);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<RetrievalResult> CaseRetriever::HeuristicOn(const ItemSet &items) const {
  std::vector<ApplicableRule> applicable = ApplicableRules(items, kb_, max_depth_);
  const ItemSet restated = store_.vocabulary().ExpandItems(items);
  ItemSet consequents;
  for (const auto &a : applicable) {
    if (!Contains(restated, a.rule->consequent)) consequents.push_back(a.rule->consequent);
  }
  Canonicalize(consequents);
  if (consequents.empty()) return {};

  std::set<const ExperimentRecord *> precise;
  for (const auto *r : store_.QueryByItems(items)) precise.insert(r);

  std::vector<RetrievalResult> out;
  for (const ExperimentRecord *record : store_.ActiveRecords()) {
    if (precise.count(record)) continue;
    ItemSet matched;
    for (const Item &c : consequents) {
      if (store_.Matches(*record, {c})) matched.push_back(c);
    }
    if (matched.empty()) continue;
    RetrievalResult r;
    r.record = record;
    r.mode_used = RetrievalMode::kHeuristic;
    Rational best_accuracy = Rational::Integer(0);
    for (const auto &a : applicable) {
      if (!Contains(matched, a.rule->consequent)) continue;
      r.rules_applied.push_back(a.rule->id);
      best_accuracy = std::max(best_accuracy, a.rule->accuracy);
    }
    r.score = Rational(static_cast<std::int64_t>(matched.size()),
                       static_cast<std::int64_t>(consequents.size())) *
              best_accuracy;
    r.matched_items = std::move(matched);
    out.push_back(std::move(r));
  }
  std::stable_sort(out.begin(), out.end(), [](const RetrievalResult &a, const RetrievalResult &b) {
    return a.score > b.score;
  });
  return out;
}

std::vector<RetrievalResult> CaseRetriever::Precise(const Enquiry &enquiry) const {
  enquiry.Validate();
  return PreciseOn(enquiry.items);
}

std::vector<RetrievalResult> CaseRetriever::Heuristic(const Enquiry &enquiry) const {
  enquiry.Validate();
  return HeuristicOn(enquiry.items);
}

std::vector<RetrievalResult> CaseRetriever::Fuzzy(const Enquiry &enquiry) const {
  enquiry.Validate();
  const ItemSet &items = enquiry.items;
  if (items.size() < 2) {
    Fail(ErrorCode::kInvalidInput, "fuzzy retrieval needs at least two enquiry items");
  }
  const auto n = static_cast<std::int64_t>(items.size());
  std::vector<std::vector<RetrievalResult>> per_subset(items.size());
  std::vector<std::string> errors(items.size());

#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t drop = 0; drop < n; ++drop) {
    try {
      ItemSet subset;
      for (std::int64_t i = 0; i < n; ++i) {
        if (i != drop) subset.push_back(items[i]);
      }
      Rational penalty(n - 1, n);
      auto precise = PreciseOn(subset);
      auto heuristic = HeuristicOn(subset);
      auto &out = per_subset[drop];
      for (auto *part : {&precise, &heuristic}) {
        for (auto &r : *part) {
          r.mode_used = RetrievalMode::kFuzzy;
          r.dropped_items = {items[drop]};
          r.score = r.score * penalty;
          out.push_back(std::move(r));
        }
      }
    } catch (const std::exception &e) {
      errors[drop] = e.what();
    }
  }
  for (const auto &e : errors) {
    if (!e.empty()) Fail(ErrorCode::kInvalidInput, e);
  }

  // Highest score per record; earlier subsets win ties.
  std::map<const ExperimentRecord *, RetrievalResult> best;
  for (auto &subset : per_subset) {
    for (auto &r : subset) {
      auto it = best.find(r.record);
      if (it == best.end()) {
        best.emplace(r.record, std::move(r));
      } else if (r.score > it->second.score) {
        it->second = std::move(r);
      }
    }
  }
  std::vector<RetrievalResult> out;
  for (const ExperimentRecord *record : store_.ActiveRecords()) {
    auto it = best.find(record);
    if (it != best.end()) out.push_back(std::move(it->second));
  }
  std::stable_sort(out.begin(), out.end(), [](const RetrievalResult &a, const RetrievalResult &b) {
    return a.score > b.score;
  });
  return out;
}

RetrievalOutcome CaseRetriever::Retrieve(const Enquiry &enquiry) const {
  enquiry.Validate();
  RetrievalOutcome outcome;
  auto record = [&](RetrievalMode mode, std::vector<RetrievalResult> results) {
    outcome.trace.push_back({mode, static_cast<std::int64_t>(results.size()), {}});
    outcome.results = std::move(results);
  };
  switch (enquiry.mode) {
    case RetrievalMode::kPrecise:
      record(RetrievalMode::kPrecise, Precise(enquiry));
      return outcome;
    case RetrievalMode::kHeuristic:
      record(RetrievalMode::kHeuristic, Heuristic(enquiry));
      return outcome;
    case RetrievalMode::kFuzzy:
      record(RetrievalMode::kFuzzy, Fuzzy(enquiry));
      return outcome;
    case RetrievalMode::kAuto:
      break;
  }
  record(RetrievalMode::kPrecise, Precise(enquiry));
  if (!outcome.results.empty()) return outcome;
  record(RetrievalMode::kHeuristic, Heuristic(enquiry));
  if (!outcome.results.empty()) return outcome;
  if (enquiry.items.size() < 2) {
    outcome.trace.push_back({RetrievalMode::kFuzzy, std::nullopt, "singleton"});
    return outcome;
  }
  record(RetrievalMode::kFuzzy, Fuzzy(enquiry));
  return outcome;
}

}  // namespace evaladvisor
