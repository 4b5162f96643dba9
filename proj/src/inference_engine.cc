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

#include "evaladvisor/inference_engine.h"

#include <algorithm>
#include <map>

#include "evaladvisor/error.h"

namespace evaladvisor {

namespace {

bool Shorter(const std::vector<std::string> &a, const std::vector<std::string> &b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

const Derivation *Closure::Find(const Item &item) const {
  auto it = std::lower_bound(
      derivations_.begin(), derivations_.end(), item,
      [](const Derivation &d, const Item &i) { return d.item < i; });
  if (it == derivations_.end() || !(it->item == item)) return nullptr;
  return &*it;
}

ItemSet Closure::items() const {
  ItemSet out;
  for (const auto &d : derivations_) out.push_back(d.item);
  return out;
}

Closure ComputeClosure(const ItemSet &items, const KnowledgeBase &kb, int max_depth) {
  if (items.empty()) Fail(ErrorCode::kInvalidInput, "closure of an empty item set");
  if (max_depth < 1) Fail(ErrorCode::kInvalidInput, "max-depth must be >= 1");

  std::map<Item, Derivation> best;
  for (const auto &item : items) best.emplace(item, Derivation{item, {}, Rational::Integer(1)});

  bool changed = true;
  while (changed) {
    changed = false;
    for (const Rule &rule : kb.rules()) {
      std::vector<std::string> chain;
      bool ready = true;
      for (const Item &a : rule.antecedent) {
        auto it = best.find(a);
        if (it == best.end()) {
          ready = false;
          break;
        }
        for (const auto &id : it->second.chain) {
          if (std::find(chain.begin(), chain.end(), id) == chain.end()) chain.push_back(id);
        }
      }
      if (!ready) continue;
      if (std::find(chain.begin(), chain.end(), rule.id) != chain.end()) continue;
      chain.push_back(rule.id);
      if (static_cast<int>(chain.size()) > max_depth) continue;

      auto it = best.find(rule.consequent);
      if (it != best.end() && !Shorter(chain, it->second.chain)) continue;
      Rational confidence = Rational::Integer(1);
      for (const auto &id : chain) confidence = confidence * kb.Find(id)->accuracy;
      Item item = rule.consequent;
      item.original.reset();
      best.insert_or_assign(item, Derivation{item, std::move(chain), confidence});
      changed = true;
    }
  }

  Closure closure;
  for (auto &[item, d] : best) closure.derivations_.push_back(std::move(d));
  return closure;
}

std::vector<ApplicableRule> ApplicableRules(const ItemSet &items, const KnowledgeBase &kb,
                                            int max_depth) {
  Closure closure = ComputeClosure(items, kb, max_depth);
  std::vector<ApplicableRule> out;
  for (const Rule &rule : kb.rules()) {
    int depth = 0;
    bool enabled = true;
    for (const Item &a : rule.antecedent) {
      const Derivation *d = closure.Find(a);
      if (!d) {
        enabled = false;
        break;
      }
      depth = std::max(depth, d->depth());
    }
    if (enabled) out.push_back({&rule, depth});
  }
  std::stable_sort(out.begin(), out.end(), [](const ApplicableRule &a, const ApplicableRule &b) {
    if (a.enablement_depth != b.enablement_depth) return a.enablement_depth < b.enablement_depth;
    if (a.rule->accuracy != b.rule->accuracy) return a.rule->accuracy > b.rule->accuracy;
    if (a.rule->coverage != b.rule->coverage) return a.rule->coverage > b.rule->coverage;
    return a.rule->id < b.rule->id;
  });
  return out;
}

bool ReplayChain(const ItemSet &items, const std::vector<std::string> &chain,
                 const KnowledgeBase &kb, ItemSet *derived) {
  ItemSet known = items;
  for (const auto &id : chain) {
    const Rule *rule = kb.Find(id);
    if (!rule || !IsSubset(rule->antecedent, known)) return false;
    known.push_back(rule->consequent);
    Canonicalize(known);
  }
  if (derived) *derived = std::move(known);
  return true;
}

}  // namespace evaladvisor
