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

// Advisor owns one data directory:
//
//   vocab.json     controlled vocabulary (required)
//   corpus.json    base corpus, loaded read-only at startup (optional)
//   records.log    append-only JSON lines: imported, retained and
//                  superseding records added after the base corpus
//   kb.json        knowledge base (mined + bridge + curated rules)
//   reports.log    ids of issued suggestion reports
//   feedback.log   append-only JSON lines of feedback
//
// Readers take an immutable Snapshot; writers are serialized on one mutex,
// build a modified copy, persist it and swap it in.

#ifndef EVALADVISOR_ADVISOR_H_
#define EVALADVISOR_ADVISOR_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "evaladvisor/case_retriever.h"
#include "evaladvisor/consultation.h"
#include "evaladvisor/evidence_store.h"
#include "evaladvisor/rule_miner.h"
#include "evaladvisor/taxonomy.h"
#include "json.hpp"

namespace evaladvisor {

struct AdvisorOptions {
  std::filesystem::path data_dir = "data";
  MatchPolicy policy = MatchPolicy::kHierarchical;
  int max_depth = kDefaultMaxDepth;
  KernelMode kernel = KernelMode::kParallel;
  std::function<std::int64_t()> clock = nullptr;  // defaults to wall clock
};

struct Snapshot {
  std::shared_ptr<const Vocabulary> vocab;
  std::shared_ptr<const EvidenceStore> store;
  std::shared_ptr<const KnowledgeBase> kb;
};

struct MineSummary {
  std::size_t rules = 0;
  std::size_t mined = 0;
  std::size_t bridge = 0;
  std::size_t curated = 0;
  std::string kb_fingerprint;

  nlohmann::json ToJson() const;
};

class Advisor {
 public:
  // Loads the data directory. Throws Error(kNotFound) without vocab.json and
  // Error(kFormat) for unreadable files.
  explicit Advisor(AdvisorOptions options);

  Advisor(const Advisor &) = delete;
  Advisor &operator=(const Advisor &) = delete;

  Snapshot snapshot() const;
  const AdvisorOptions &options() const { return options_; }
  std::int64_t Now() const;

  // Warnings collected while loading the base corpus.
  const std::vector<std::string> &load_warnings() const { return load_warnings_; }

  ImportResult ImportCorpus(const nlohmann::json &doc);
  MineSummary Mine(const MiningConfig &config);

  // Builds a report and records its id so feedback can refer to it. `used`
  // receives the snapshot the report was computed on; hold it while reading
  // report.cases, whose record pointers point into that snapshot's store.
  SuggestionReport Suggest(const Enquiry &enquiry, Snapshot *used = nullptr);

  // RETAIN: stores a completed experiment as a new active record with
  // provenance origin "retained". With `supersedes`, the old record becomes
  // superseded and the new one takes version old + 1.
  ExperimentRecord Retain(ItemSet items, Provenance provenance,
                          std::optional<std::string> supersedes = std::nullopt);

  Feedback RecordFeedback(Feedback feedback);
  std::vector<Feedback> FeedbackFor(const std::string &report_id) const;
  bool HasReport(const std::string &report_id) const;

  Term AddTerm(StepAttribute attribute, const std::string &label,
               const std::vector<std::string> &synonyms,
               const std::optional<std::string> &parent, const std::string &description);
  Term AddSynonym(StepAttribute attribute, const std::string &label,
                  const std::string &synonym);

 private:
  std::filesystem::path Path(const char *name) const { return options_.data_dir / name; }
  void Publish(Snapshot next);
  void AppendLine(const char *file, const nlohmann::json &line) const;
  void RebindVocabulary(std::shared_ptr<const Vocabulary> vocab);

  AdvisorOptions options_;
  std::vector<std::string> load_warnings_;

  mutable std::mutex snapshot_mu_;
  Snapshot current_;

  std::mutex writer_mu_;
  mutable std::mutex side_mu_;  // reports and feedback
  std::set<std::string> reports_;
  std::vector<Feedback> feedback_;
};

// Reads and parses a JSON file; Error(kFormat) on failure.
nlohmann::json ReadJsonFile(const std::filesystem::path &path);
// Writes via a temporary file and rename.
void WriteJsonFile(const std::filesystem::path &path, const nlohmann::json &doc);

}  // namespace evaladvisor

#endif  // EVALADVISOR_ADVISOR_H_
