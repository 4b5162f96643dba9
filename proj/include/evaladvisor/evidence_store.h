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

#ifndef EVALADVISOR_EVIDENCE_STORE_H_
#define EVALADVISOR_EVIDENCE_STORE_H_

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "evaladvisor/taxonomy.h"
#include "json.hpp"

namespace evaladvisor {

// How a query item matches a record item. Hierarchical: (A, t) matches
// (A, t') when t == t' or t is an ancestor of t'. Exact: t == t' only.
enum class MatchPolicy { kHierarchical, kExact };

enum class RecordStatus { kActive, kSuperseded };

struct Provenance {
  std::string study;
  std::string provider;
  std::string service;
  int year = 0;
  // "corpus" for imported records, "retained" for records added after an
  // evaluation was carried out.
  std::string origin = "corpus";
};

struct ExperimentRecord {
  std::string id;
  ItemSet items;
  Provenance provenance;
  std::int64_t created_at = 0;
  int version = 1;
  RecordStatus status = RecordStatus::kActive;
  std::optional<std::string> supersedes;

  bool active() const { return status == RecordStatus::kActive; }
};

struct ImportResult {
  std::int64_t imported = 0;
  std::vector<std::string> warnings;
  std::vector<std::string> record_ids;

  nlohmann::json ToJson() const;
};

// Item wire form {"attribute", "value", "original"}.
nlohmann::json ItemToJson(const Vocabulary &vocab, const Item &item,
                          bool with_original = false);
Item ItemFromJson(const Vocabulary &vocab, const nlohmann::json &j);
ItemSet ItemsFromJson(const Vocabulary &vocab, const nlohmann::json &j);
nlohmann::json ItemsToJson(const Vocabulary &vocab, const ItemSet &items,
                           bool with_original = false);

nlohmann::json ProvenanceToJson(const Provenance &p);
Provenance ProvenanceFromJson(const nlohmann::json &j);

// Export format: the corpus entry plus version/status/supersedes/created_at.
nlohmann::json RecordToJson(const Vocabulary &vocab, const ExperimentRecord &r);
ExperimentRecord RecordFromJson(const Vocabulary &vocab, const nlohmann::json &j);

// The evaluation-experiment database. A value type: the owning Advisor copies
// it to apply a mutation and swaps the copy in, so a reader holding a
// snapshot never sees a half-applied write.
class EvidenceStore {
 public:
  explicit EvidenceStore(std::shared_ptr<const Vocabulary> vocab,
                         MatchPolicy policy = MatchPolicy::kHierarchical);

  const Vocabulary &vocabulary() const { return *vocab_; }
  std::shared_ptr<const Vocabulary> vocabulary_ptr() const { return vocab_; }
  MatchPolicy policy() const { return policy_; }

  // Swaps in a vocabulary that extends the current one (same term ids, new
  // leaf terms or synonyms only), so existing match views stay valid.
  void RebindVocabulary(std::shared_ptr<const Vocabulary> vocab);

  // Imports a corpus document. A non-array document or a structurally
  // malformed entry raises Error(kFormat) before anything is stored. Entries
  // naming unknown terms, with no items, or with an id already present are
  // skipped with a warning.
  ImportResult ImportCorpus(const nlohmann::json &doc, std::int64_t created_at);

  // Number of active records whose items cover `itemset`.
  std::int64_t Coverage(const ItemSet &itemset) const;

  // The records counted by Coverage, newest year first, then by id.
  std::vector<const ExperimentRecord *> QueryByItems(const ItemSet &itemset) const;

  bool Matches(const ExperimentRecord &record, const ItemSet &itemset) const;

  const ExperimentRecord &AddRecord(ItemSet items, Provenance provenance,
                                    std::int64_t now,
                                    std::optional<std::string> id = std::nullopt);
  const ExperimentRecord &SupersedeRecord(const std::string &old_id, ItemSet items,
                                          Provenance provenance, std::int64_t now);

  // Raw insert used when replaying the record log; honours the record's
  // version/status fields and marks `supersedes` as superseded.
  void Replay(ExperimentRecord record);

  const ExperimentRecord *Find(const std::string &id) const;
  const ExperimentRecord &Get(const std::string &id) const;

  // Every record ever stored, in insertion order.
  const std::deque<ExperimentRecord> &records() const { return records_; }

  // Active records in store order (year desc, id asc).
  std::vector<const ExperimentRecord *> ActiveRecords() const;
  std::size_t active_count() const;

  // Item sets of the active records in store order, hierarchy-expanded
  // unless the policy is exact. This is what the miner counts over.
  std::vector<ItemSet> Transactions() const;

 private:
  void ValidateItems(const ItemSet &items) const;
  void ValidateQuery(const ItemSet &itemset) const;
  ItemSet MatchView(const ExperimentRecord &r) const;
  std::string FreshId() const;
  const ExperimentRecord &Insert(ExperimentRecord record);

  std::shared_ptr<const Vocabulary> vocab_;
  MatchPolicy policy_;
  std::deque<ExperimentRecord> records_;
  std::deque<ItemSet> views_;  // parallel to records_
  std::map<std::string, std::size_t> index_;
};

}  // namespace evaladvisor

#endif  // EVALADVISOR_EVIDENCE_STORE_H_
