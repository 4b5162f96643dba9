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

#include "evaladvisor/consultation.h"

#include <algorithm>

#include "evaladvisor/error.h"
#include "evaladvisor/util.h"

namespace evaladvisor {

using nlohmann::json;

namespace {

std::map<StepAttribute, std::vector<Derivation>> Group(const Closure &closure,
                                                       const ItemSet &restated,
                                                       const Enquiry &enquiry) {
  std::map<StepAttribute, std::vector<Derivation>> groups;
  for (const auto &d : closure.derivations()) {
    if (d.chain.empty() || Contains(restated, d.item)) continue;
    if (!enquiry.Wants(d.item.attribute)) continue;
    groups[d.item.attribute].push_back(d);
  }
  for (auto &[attribute, list] : groups) {
    std::stable_sort(list.begin(), list.end(), [](const Derivation &a, const Derivation &b) {
      if (a.confidence != b.confidence) return a.confidence > b.confidence;
      return a.depth() < b.depth();
    });
  }
  return groups;
}

json Body(const Vocabulary &vocab, const KnowledgeBase &kb, const SuggestionReport &report) {
  json suggestions = json::object();
  for (const auto &[attribute, list] : report.suggestions) {
    json entries = json::array();
    for (const auto &d : list) {
      json chain = json::array();
      for (const auto &id : d.chain) {
        const Rule *rule = kb.Find(id);
        chain.push_back({{"rule", id},
                         {"origin", rule ? OriginName(rule->origin) : "unknown"},
                         {"antecedent", rule ? ItemsToJson(vocab, rule->antecedent) : json()},
                         {"consequent", rule ? ItemToJson(vocab, rule->consequent) : json()},
                         {"coverage", rule ? rule->coverage : 0},
                         {"accuracy", rule ? json{{"num", rule->accuracy.num()},
                                                  {"den", rule->accuracy.den()}}
                                           : json()}});
      }
      entries.push_back({{"item", ItemToJson(vocab, d.item)},
                         {"derivation", {{"chain", d.chain}, {"depth", d.depth()}, {"rules", chain}}},
                         {"confidence", {{"num", d.confidence.num()}, {"den", d.confidence.den()}}}});
    }
    suggestions[std::string(AttributeName(attribute))] = entries;
  }
  json groups = json::array();
  for (const auto &g : report.feature_groups) {
    json by_attr = json::object();
    for (const auto &[attribute, items] : g.suggestions) {
      json list = json::array();
      for (const auto &item : items) list.push_back(vocab.label(item.term));
      by_attr[std::string(AttributeName(attribute))] = list;
    }
    groups.push_back({{"feature", ItemToJson(vocab, g.feature)},
                      {"suggestions", by_attr},
                      {"supporting_cases", g.supporting_cases}});
  }
  json cases = OutcomeToJson(vocab, report.cases);
  return {{"enquiry", EnquiryToJson(vocab, report.enquiry)},
          {"suggestions", suggestions},
          {"feature_groups", groups},
          {"supporting_cases", cases["results"]},
          {"mode_trace", cases["mode_trace"]},
          {"kb_fingerprint", report.kb_fingerprint}};
}

}  // namespace

SuggestionReport Suggest(const EvidenceStore &store, const KnowledgeBase &kb,
                         const Enquiry &enquiry, std::int64_t now, int max_depth) {
  enquiry.Validate();
  // Bridge rules only restate the vocabulary; they are not knowledge.
  const bool no_rules = kb.Count(RuleOrigin::kMined) + kb.Count(RuleOrigin::kCurated) == 0;
  if (no_rules && store.active_count() == 0) {
    Fail(ErrorCode::kEmptyKnowledge, "no rules and no experiment records are available");
  }
  const Vocabulary &vocab = store.vocabulary();

  SuggestionReport report;
  report.enquiry = enquiry;
  for (auto &item : report.enquiry.items) item.original.reset();
  report.generated_at = now;
  report.kb_fingerprint = kb.fingerprint();

  Closure closure = ComputeClosure(report.enquiry.items, kb, max_depth);
  report.suggestions = Group(closure, vocab.ExpandItems(report.enquiry.items), enquiry);

  CaseRetriever retriever(store, kb, max_depth);
  for (const Item &feature : report.enquiry.items) {
    FeatureGroup group;
    group.feature = feature;
    Enquiry single{{feature}, RetrievalMode::kPrecise, enquiry.requested_attributes};
    Closure own = ComputeClosure(single.items, kb, max_depth);
    for (auto &[attribute, list] : Group(own, vocab.ExpandItem(feature), single)) {
      for (const auto &d : list) group.suggestions[attribute].push_back(d.item);
    }
    for (const auto &r : retriever.Precise(single)) group.supporting_cases.push_back(r.record->id);
    report.feature_groups.push_back(std::move(group));
  }
  report.cases = retriever.Retrieve(report.enquiry);
  report.id = "rep-" + Fingerprint(Body(vocab, kb, report).dump(), 16);
  return report;
}

json ReportToJson(const Vocabulary &vocab, const KnowledgeBase &kb,
                  const SuggestionReport &report) {
  json j = Body(vocab, kb, report);
  j["report_id"] = report.id;
  j["generated_at"] = FormatTimestamp(report.generated_at);
  return j;
}

json FeedbackToJson(const Feedback &f) {
  return {{"id", f.id},
          {"report_id", f.report_id},
          {"verdict", f.verdict == Verdict::kHelpful ? "helpful" : "not-helpful"},
          {"note", f.note},
          {"submitted_at", FormatTimestamp(f.submitted_at)}};
}

Feedback FeedbackFromJson(const json &j) {
  if (!j.is_object()) Fail(ErrorCode::kInvalidInput, "feedback must be a JSON object");
  Feedback f;
  try {
    f.report_id = j.at("report_id").get<std::string>();
    std::string verdict = NormalizeText(j.at("verdict").get<std::string>());
    if (verdict == "helpful") {
      f.verdict = Verdict::kHelpful;
    } else if (verdict == "not-helpful" || verdict == "not helpful" || verdict == "not_helpful") {
      f.verdict = Verdict::kNotHelpful;
    } else {
      Fail(ErrorCode::kInvalidInput, "verdict must be helpful or not-helpful");
    }
    f.note = j.value("note", std::string());
    f.id = j.value("id", std::string());
    if (j.contains("submitted_at") && j["submitted_at"].is_string()) {
      f.submitted_at = ParseTimestamp(j["submitted_at"].get<std::string>());
    }
  } catch (const json::exception &e) {
    Fail(ErrorCode::kInvalidInput, std::string("bad feedback: ") + e.what());
  }
  return f;
}

}  // namespace evaladvisor
