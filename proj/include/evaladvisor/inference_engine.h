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

// Forward chaining over the knowledge base.
//
// Starting from the enquiry items, rules fire whenever their whole antecedent
// has been derived. Each derived item keeps the shortest chain of rules that
// produces it: the chain of a rule's consequent is the concatenation of its
// antecedent items' chains (first occurrence kept) followed by the rule
// itself. Ties on length go to the lexicographically smaller id sequence.
// Because bridge rules point from child to parent only, nothing is ever
// inferred downward in the taxonomy.

#ifndef EVALADVISOR_INFERENCE_ENGINE_H_
#define EVALADVISOR_INFERENCE_ENGINE_H_

#include <string>
#include <vector>

#include "evaladvisor/rational.h"
#include "evaladvisor/rule_miner.h"
#include "evaladvisor/taxonomy.h"

namespace evaladvisor {

inline constexpr int kDefaultMaxDepth = 4;

struct Derivation {
  Item item;
  std::vector<std::string> chain;  // empty for enquiry items
  Rational confidence = Rational::Integer(1);  // product of chain accuracies

  int depth() const { return static_cast<int>(chain.size()); }
};

class Closure {
 public:
  // Sorted by item.
  const std::vector<Derivation> &derivations() const { return derivations_; }
  const Derivation *Find(const Item &item) const;
  ItemSet items() const;

 private:
  friend Closure ComputeClosure(const ItemSet &, const KnowledgeBase &, int);
  std::vector<Derivation> derivations_;
};

// Throws Error(kInvalidInput) for an empty input or max_depth < 1.
Closure ComputeClosure(const ItemSet &items, const KnowledgeBase &kb,
                       int max_depth = kDefaultMaxDepth);

struct ApplicableRule {
  const Rule *rule = nullptr;
  // Deepest derivation among the antecedent items (0 if all were given).
  int enablement_depth = 0;
};

// Rules whose antecedent is contained in the closure, ordered by enablement
// depth, then accuracy desc, coverage desc, id.
std::vector<ApplicableRule> ApplicableRules(const ItemSet &items, const KnowledgeBase &kb,
                                            int max_depth = kDefaultMaxDepth);

// Re-applies `chain` starting from `items`; returns false if some rule's
// antecedent is not yet available or an id is unknown.
bool ReplayChain(const ItemSet &items, const std::vector<std::string> &chain,
                 const KnowledgeBase &kb, ItemSet *derived);

}  // namespace evaladvisor

#endif  // EVALADVISOR_INFERENCE_ENGINE_H_
