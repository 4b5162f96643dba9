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

#ifndef EVALADVISOR_RULE_MINER_H_
#define EVALADVISOR_RULE_MINER_H_

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "evaladvisor/evidence_store.h"
#include "evaladvisor/rational.h"
#include "evaladvisor/support_kernel.h"
#include "evaladvisor/taxonomy.h"
#include "json.hpp"

namespace evaladvisor {

enum class RuleOrigin { kMined, kBridge, kCurated };

std::string_view OriginName(RuleOrigin origin);
RuleOrigin ParseOrigin(std::string_view text);

struct Rule {
  std::string id;
  ItemSet antecedent;
  Item consequent;
  std::int64_t coverage = 0;  // records matching antecedent and consequent
  Rational accuracy = Rational::Integer(1);
  RuleOrigin origin = RuleOrigin::kMined;
};

// Content-derived identifier: origin letter plus a hash of the labelled
// antecedent and consequent. Stable across runs and machines.
std::string MakeRuleId(const Vocabulary &vocab, RuleOrigin origin,
                       const ItemSet &antecedent, const Item &consequent);

// Consequent not in the antecedent, and no same-attribute antecedent item is
// an ancestor or descendant of the consequent.
bool IsNonTrivialRule(const Vocabulary &vocab, const ItemSet &antecedent,
                      const Item &consequent);

// True if two items of `items` stand in an ancestor relation. Such sets have
// the same coverage as the set without the ancestor and are never mined.
bool HasAncestorPair(const Vocabulary &vocab, const ItemSet &items);

// accuracy desc, coverage desc, id asc.
void SortRules(std::vector<Rule> &rules);

nlohmann::json RuleToJson(const Vocabulary &vocab, const Rule &rule);
Rule RuleFromJson(const Vocabulary &vocab, const nlohmann::json &j);

struct MiningConfig {
  std::int64_t min_coverage = 3;
  Rational min_accuracy{4, 5};
  int max_itemset_size = 3;

  // Throws Error(kInvalidInput) when a field is out of range.
  void Validate() const;
  // Accepts {"min_coverage", "min_accuracy", "max_itemset_size"}; missing
  // fields keep their defaults. min_accuracy may be a number, "4/5" or
  // {"num", "den"}.
  static MiningConfig FromJson(const nlohmann::json &j);
};

struct FrequentItemset {
  ItemSet items;
  std::int64_t coverage = 0;
};

// Levelwise frequent-itemset mining and rule extraction over the active
// records of an evidence store (hierarchy-expanded per the store's policy).
class RuleMiner {
 public:
  explicit RuleMiner(const EvidenceStore &store, KernelMode mode = KernelMode::kParallel);

  // Itemsets with 2 <= size <= max_itemset_size and coverage >= min_coverage.
  std::vector<FrequentItemset> FrequentItemsets(const MiningConfig &config) const;

  std::vector<Rule> ExtractRules(const MiningConfig &config) const;

 private:
  struct Level {
    std::vector<DenseSet> sets;
    std::vector<std::int64_t> counts;
  };

  std::vector<Level> Levels(const MiningConfig &config) const;
  std::vector<std::int64_t> Count(const std::vector<DenseSet> &candidates) const;
  ItemSet ToItems(const DenseSet &set) const;

  const EvidenceStore &store_;
  KernelMode mode_;
  std::vector<Item> universe_;  // dense index -> item, in Item order
  std::vector<DenseSet> transactions_;
  std::vector<std::vector<bool>> related_;  // ancestor relation on the universe
  std::unique_ptr<TidsetIndex> index_;
};

// One rule per taxonomy parent edge: {(A, child)} -> (A, parent), accuracy 1,
// coverage = coverage({(A, child)}).
std::vector<Rule> MaterializeBridgeRules(const EvidenceStore &store);

// Mined, bridge and curated rules with a fingerprint of their canonical JSON.
class KnowledgeBase {
 public:
  KnowledgeBase() = default;
  KnowledgeBase(std::shared_ptr<const Vocabulary> vocab, std::vector<Rule> rules);

  // Merges the three sources. A curated rule replaces any mined or bridge rule
  // with the same antecedent and consequent; otherwise bridge beats mined.
  static KnowledgeBase Merge(std::shared_ptr<const Vocabulary> vocab,
                             std::vector<Rule> mined, std::vector<Rule> bridge,
                             std::vector<Rule> curated);

  static KnowledgeBase FromJson(std::shared_ptr<const Vocabulary> vocab,
                                const nlohmann::json &doc);
  nlohmann::json ToJson() const;

  const std::vector<Rule> &rules() const { return rules_; }
  const Rule *Find(std::string_view id) const;
  std::vector<Rule> WithOrigin(RuleOrigin origin) const;
  std::size_t Count(RuleOrigin origin) const;
  bool empty() const { return rules_.empty(); }
  const std::string &fingerprint() const { return fingerprint_; }

 private:
  std::shared_ptr<const Vocabulary> vocab_;
  std::vector<Rule> rules_;
  std::map<std::string, std::size_t, std::less<>> by_id_;
  std::string fingerprint_;
};

}  // namespace evaladvisor

#endif  // EVALADVISOR_RULE_MINER_H_
