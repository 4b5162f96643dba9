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

#ifndef EVALADVISOR_CONSULTATION_H_
#define EVALADVISOR_CONSULTATION_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "evaladvisor/case_retriever.h"
#include "evaladvisor/evidence_store.h"
#include "evaladvisor/inference_engine.h"
#include "evaladvisor/rule_miner.h"
#include "json.hpp"

namespace evaladvisor {

// Suggestions derived from one enquiry item on its own. Lets a multi-feature
// enquiry (e.g. Storage and Cost for sibling experiments) be read feature by
// feature.
struct FeatureGroup {
  Item feature;
  std::map<StepAttribute, std::vector<Item>> suggestions;
  std::vector<std::string> supporting_cases;
};

struct SuggestionReport {
  std::string id;  // hash of the report body without id and timestamp
  Enquiry enquiry;
  std::map<StepAttribute, std::vector<Derivation>> suggestions;
  std::vector<FeatureGroup> feature_groups;
  RetrievalOutcome cases;
  std::int64_t generated_at = 0;
  std::string kb_fingerprint;
};

// Forward-chains the enquiry, keeps derived items that say something new
// (not an enquiry item or a taxonomy generalization of one), filters them to
// the requested attributes and attaches retrieved cases as support.
//
// Throws Error(kEmptyKnowledge) when the KB has no rules and the store has no
// active records.
SuggestionReport Suggest(const EvidenceStore &store, const KnowledgeBase &kb,
                         const Enquiry &enquiry, std::int64_t now,
                         int max_depth = kDefaultMaxDepth);

nlohmann::json ReportToJson(const Vocabulary &vocab, const KnowledgeBase &kb,
                            const SuggestionReport &report);

enum class Verdict { kHelpful, kNotHelpful };

struct Feedback {
  std::string id;
  std::string report_id;
  Verdict verdict = Verdict::kHelpful;
  std::string note;
  std::int64_t submitted_at = 0;
};

nlohmann::json FeedbackToJson(const Feedback &feedback);
Feedback FeedbackFromJson(const nlohmann::json &j);

}  // namespace evaladvisor

#endif  // EVALADVISOR_CONSULTATION_H_
