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

#ifndef EVALADVISOR_CASE_RETRIEVER_H_
#define EVALADVISOR_CASE_RETRIEVER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evaladvisor/evidence_store.h"
#include "evaladvisor/inference_engine.h"
#include "evaladvisor/rational.h"
#include "evaladvisor/rule_miner.h"
#include "json.hpp"

namespace evaladvisor {

enum class RetrievalMode { kPrecise, kHeuristic, kFuzzy, kAuto };

std::string_view ModeName(RetrievalMode mode);
RetrievalMode ParseMode(std::string_view text);

struct Enquiry {
  ItemSet items;
  RetrievalMode mode = RetrievalMode::kAuto;
  std::optional<std::vector<StepAttribute>> requested_attributes;

  // Throws Error(kInvalidInput) for empty items or an empty attribute list.
  void Validate() const;
  bool Wants(StepAttribute attribute) const;
};

nlohmann::json EnquiryToJson(const Vocabulary &vocab, const Enquiry &enquiry);
// {"items": [...], "mode": "auto", "attributes": ["Metric", ...]}
Enquiry EnquiryFromJson(const Vocabulary &vocab, const nlohmann::json &j);

struct RetrievalResult {
  const ExperimentRecord *record = nullptr;
  RetrievalMode mode_used = RetrievalMode::kPrecise;
  ItemSet matched_items;
  std::vector<std::string> rules_applied;
  ItemSet dropped_items;
  Rational score = Rational::Integer(1);
};

struct ModeTraceEntry {
  RetrievalMode mode = RetrievalMode::kPrecise;
  std::optional<std::int64_t> count;  // empty when the stage was skipped
  std::string skipped;
};

struct RetrievalOutcome {
  std::vector<RetrievalResult> results;
  std::vector<ModeTraceEntry> trace;
};

nlohmann::json ResultToJson(const Vocabulary &vocab, const RetrievalResult &result);
nlohmann::json OutcomeToJson(const Vocabulary &vocab, const RetrievalOutcome &outcome);

// RETRIEVE step of the case-based reasoning cycle over a store/KB snapshot.
//
//   Precise   records containing every enquiry item (hierarchy-aware)
//   Heuristic records containing a consequent of an applicable rule, where
//             consequents that merely restate the enquiry (its items and
//             their taxonomy ancestors) are left out
//   Fuzzy     Precise + Heuristic on each leave-one-out subset of the enquiry
class CaseRetriever {
 public:
  CaseRetriever(const EvidenceStore &store, const KnowledgeBase &kb,
                int max_depth = kDefaultMaxDepth);

  std::vector<RetrievalResult> Precise(const Enquiry &enquiry) const;
  std::vector<RetrievalResult> Heuristic(const Enquiry &enquiry) const;
  // Throws Error(kInvalidInput) for a single-item enquiry.
  std::vector<RetrievalResult> Fuzzy(const Enquiry &enquiry) const;

  // Explicit modes delegate; Auto escalates Precise -> Heuristic -> Fuzzy
  // while results are empty.
  RetrievalOutcome Retrieve(const Enquiry &enquiry) const;

 private:
  std::vector<RetrievalResult> PreciseOn(const ItemSet &items) const;
  std::vector<RetrievalResult> HeuristicOn(const ItemSet &items) const;

  const EvidenceStore &store_;
  const KnowledgeBase &kb_;
  int max_depth_;
};

}  // namespace evaladvisor

#endif  // EVALADVISOR_CASE_RETRIEVER_H_
