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

#include "evaladvisor/rule_miner.h"

#include <algorithm>
#include <set>

#include "evaladvisor/error.h"
#include "evaladvisor/util.h"

namespace evaladvisor {

using nlohmann::json;

std::string_view OriginName(RuleOrigin origin) {
  switch (origin) {
    case RuleOrigin::kMined:
      return "mined";
    case RuleOrigin::kBridge:
      return "bridge";
    case RuleOrigin::kCurated:
      return "curated";
  }
  return "mined";
}

RuleOrigin ParseOrigin(std::string_view text) {
  std::string n = NormalizeText(text);
  if (n == "mined") return RuleOrigin::kMined;
  if (n == "bridge") return RuleOrigin::kBridge;
  if (n == "curated") return RuleOrigin::kCurated;
  Fail(ErrorCode::kInvalidInput, "unknown rule origin '" + std::string(text) + "'");
}

std::string MakeRuleId(const Vocabulary &vocab, RuleOrigin origin,
                       const ItemSet &antecedent, const Item &consequent) {
  std::string text;
  for (const auto &item : antecedent) {
    text += AttributeName(item.attribute);
    text += ':';
    text += vocab.label(item.term);
    text += '&';
  }
  text += "=>";
  text += AttributeName(consequent.attribute);
  text += ':';
  text += vocab.label(consequent.term);
  char prefix = origin == RuleOrigin::kMined    ? 'M'
                : origin == RuleOrigin::kBridge ? 'B'
                                                : 'C';
  return std::string(1, prefix) + Fingerprint(text, 10);
}

bool IsNonTrivialRule(const Vocabulary &vocab, const ItemSet &antecedent,
                      const Item &consequent) {
  for (const auto &a : antecedent) {
    if (a == consequent) return false;
    if (a.attribute != consequent.attribute) continue;
    if (vocab.IsAncestor(consequent.term, a.term) || vocab.IsAncestor(a.term, consequent.term)) {
      return false;
    }
  }
  return true;
}

bool HasAncestorPair(const Vocabulary &vocab, const ItemSet &items) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (std::size_t j = i + 1; j < items.size(); ++j) {
      if (items[i].attribute != items[j].attribute) continue;
      if (vocab.IsAncestor(items[i].term, items[j].term) ||
          vocab.IsAncestor(items[j].term, items[i].term)) {
        return true;
      }
    }
  }
  return false;
}

void SortRules(std::vector<Rule> &rules) {
  std::sort(rules.begin(), rules.end(), [](const Rule &a, const Rule &b) {
    if (a.accuracy != b.accuracy) return a.accuracy > b.accuracy;
    if (a.coverage != b.coverage) return a.coverage > b.coverage;
    return a.id < b.id;
  });
}

json RuleToJson(const Vocabulary &vocab, const Rule &rule) {
  return {{"id", rule.id},
          {"antecedent", ItemsToJson(vocab, rule.antecedent)},
          {"consequent", ItemToJson(vocab, rule.consequent)},
          {"coverage", rule.coverage},
          {"accuracy", {{"num", rule.accuracy.num()}, {"den", rule.accuracy.den()}}},
          {"origin", OriginName(rule.origin)}};
}

Rule RuleFromJson(const Vocabulary &vocab, const json &j) {
  Rule rule;
  try {
    rule.antecedent = ItemsFromJson(vocab, j.at("antecedent"));
    rule.consequent = ItemFromJson(vocab, j.at("consequent"));
    rule.consequent.original.reset();
    for (auto &a : rule.antecedent) a.original.reset();
    rule.coverage = j.value("coverage", std::int64_t{0});
    const json &acc = j.at("accuracy");
    rule.accuracy = acc.is_object()
                        ? Rational(acc.at("num").get<std::int64_t>(),
                                   acc.at("den").get<std::int64_t>())
                        : Rational::Parse(acc.is_string() ? acc.get<std::string>() : acc.dump());
    rule.origin = ParseOrigin(j.value("origin", std::string("curated")));
  } catch (const json::exception &e) {
    Fail(ErrorCode::kFormat, std::string("malformed rule: ") + e.what());
  }
  if (rule.antecedent.empty()) Fail(ErrorCode::kFormat, "rule with empty antecedent");
  if (rule.accuracy <= Rational::Integer(0) || rule.accuracy > Rational::Integer(1)) {
    Fail(ErrorCode::kFormat, "rule accuracy outside (0, 1]");
  }
  if (Contains(rule.antecedent, rule.consequent)) {
    Fail(ErrorCode::kFormat, "rule consequent repeats an antecedent item");
  }
  rule.id = MakeRuleId(vocab, rule.origin, rule.antecedent, rule.consequent);
  return rule;
}

// --- MiningConfig ------------------------------------------------------------

void MiningConfig::Validate() const {
  if (min_coverage < 1) Fail(ErrorCode::kInvalidInput, "min-coverage must be >= 1");
  if (min_accuracy <= Rational::Integer(0) || min_accuracy > Rational::Integer(1)) {
    Fail(ErrorCode::kInvalidInput, "min-accuracy must lie in (0, 1]");
  }
  if (max_itemset_size < 2) Fail(ErrorCode::kInvalidInput, "max-itemset-size must be >= 2");
}

MiningConfig MiningConfig::FromJson(const json &j) {
  MiningConfig config;
  if (j.is_null()) return config;
  if (!j.is_object()) Fail(ErrorCode::kInvalidInput, "mining config must be an object");
  try {
    if (j.contains("min_coverage")) config.min_coverage = j["min_coverage"].get<std::int64_t>();
    if (j.contains("max_itemset_size")) {
      config.max_itemset_size = j["max_itemset_size"].get<int>();
    }
    if (j.contains("min_accuracy")) {
      const json &a = j["min_accuracy"];
      if (a.is_object()) {
        config.min_accuracy =
            Rational(a.at("num").get<std::int64_t>(), a.at("den").get<std::int64_t>());
      } else if (a.is_string()) {
        config.min_accuracy = Rational::Parse(a.get<std::string>());
      } else if (a.is_number()) {
        config.min_accuracy = Rational::Parse(a.dump());
      } else {
        Fail(ErrorCode::kInvalidInput, "min_accuracy must be a number or fraction");
      }
    }
  } catch (const json::exception &e) {
    Fail(ErrorCode::kInvalidInput, std::string("bad mining config: ") + e.what());
  }
  config.Validate();
  return config;
}

// --- RuleMiner ---------------------------------------------------------------

RuleMiner::RuleMiner(const EvidenceStore &store, KernelMode mode)
    : store_(store), mode_(mode) {
  std::vector<ItemSet> raw = store.Transactions();
  std::set<Item> seen;
  for (const auto &t : raw) seen.insert(t.begin(), t.end());
  universe_.assign(seen.begin(), seen.end());
  for (auto &item : universe_) item.original.reset();

  auto dense = [&](const Item &item) {
    return static_cast<DenseItem>(
        std::lower_bound(universe_.begin(), universe_.end(), item) - universe_.begin());
  };
  for (const auto &t : raw) {
    DenseSet d;
    d.reserve(t.size());
    for (const auto &item : t) d.push_back(dense(item));
    transactions_.push_back(std::move(d));
  }
  const Vocabulary &vocab = store.vocabulary();
  related_.assign(universe_.size(), std::vector<bool>(universe_.size(), false));
  for (std::size_t i = 0; i < universe_.size(); ++i) {
    for (std::size_t j = 0; j < universe_.size(); ++j) {
      related_[i][j] = universe_[i].attribute == universe_[j].attribute &&
                       (vocab.IsAncestor(universe_[i].term, universe_[j].term) ||
                        vocab.IsAncestor(universe_[j].term, universe_[i].term));
    }
  }
  if (mode_ == KernelMode::kParallel) {
    index_ = std::make_unique<TidsetIndex>(transactions_,
                                           static_cast<std::uint32_t>(universe_.size()));
  }
}

std::vector<std::int64_t> RuleMiner::Count(const std::vector<DenseSet> &candidates) const {
  if (mode_ == KernelMode::kParallel) return CountSupportParallel(*index_, candidates);
  return CountSupportSerial(transactions_, candidates);
}

ItemSet RuleMiner::ToItems(const DenseSet &set) const {
  ItemSet out;
  out.reserve(set.size());
  for (DenseItem d : set) out.push_back(universe_[d]);
  return out;
}

std::vector<RuleMiner::Level> RuleMiner::Levels(const MiningConfig &config) const {
  config.Validate();
  std::vector<Level> levels;

  std::vector<DenseSet> singles;
  for (DenseItem i = 0; i < universe_.size(); ++i) singles.push_back({i});
  Level first;
  auto counts = Count(singles);
  for (std::size_t i = 0; i < singles.size(); ++i) {
    if (counts[i] >= config.min_coverage) {
      first.sets.push_back(singles[i]);
      first.counts.push_back(counts[i]);
    }
  }
  levels.push_back(std::move(first));

  for (int k = 2; k <= config.max_itemset_size; ++k) {
    const Level &prev = levels.back();
    if (prev.sets.size() < 2) break;
    std::set<DenseSet> prev_sets(prev.sets.begin(), prev.sets.end());

    // Join sets sharing their first k-2 items; prev.sets is sorted, so
    // joinable partners are contiguous.
    std::vector<DenseSet> candidates;
    for (std::size_t a = 0; a < prev.sets.size(); ++a) {
      for (std::size_t b = a + 1; b < prev.sets.size(); ++b) {
        const DenseSet &x = prev.sets[a], &y = prev.sets[b];
        if (!std::equal(x.begin(), x.end() - 1, y.begin())) break;
        DenseItem last_x = x.back(), last_y = y.back();
        if (related_[last_x][last_y]) continue;
        DenseSet cand = x;
        cand.push_back(last_y);
        bool all_frequent = true;
        for (std::size_t drop = 0; drop + 2 < cand.size() && all_frequent; ++drop) {
          DenseSet sub;
          for (std::size_t i = 0; i < cand.size(); ++i) {
            if (i != drop) sub.push_back(cand[i]);
          }
          all_frequent = prev_sets.count(sub) > 0;
        }
        if (all_frequent) candidates.push_back(std::move(cand));
      }
    }
    if (candidates.empty()) break;

    auto supports = Count(candidates);
    Level next;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (supports[i] >= config.min_coverage) {
        next.sets.push_back(std::move(candidates[i]));
        next.counts.push_back(supports[i]);
      }
    }
    if (next.sets.empty()) break;
    levels.push_back(std::move(next));
  }
  return levels;
}

std::vector<FrequentItemset> RuleMiner::FrequentItemsets(const MiningConfig &config) const {
  std::vector<FrequentItemset> out;
  auto levels = Levels(config);
  for (std::size_t k = 1; k < levels.size(); ++k) {
    for (std::size_t i = 0; i < levels[k].sets.size(); ++i) {
      out.push_back({ToItems(levels[k].sets[i]), levels[k].counts[i]});
    }
  }
  return out;
}

std::vector<Rule> RuleMiner::ExtractRules(const MiningConfig &config) const {
  auto levels = Levels(config);
  std::map<DenseSet, std::int64_t> coverage;
  for (const auto &level : levels) {
    for (std::size_t i = 0; i < level.sets.size(); ++i) {
      coverage[level.sets[i]] = level.counts[i];
    }
  }
  const Vocabulary &vocab = store_.vocabulary();
  std::map<std::pair<ItemSet, Item>, Rule> unique;
  for (std::size_t k = 1; k < levels.size(); ++k) {
    for (std::size_t s = 0; s < levels[k].sets.size(); ++s) {
      const DenseSet &set = levels[k].sets[s];
      const std::int64_t cov = levels[k].counts[s];
      for (std::size_t c = 0; c < set.size(); ++c) {
        DenseSet ant;
        for (std::size_t i = 0; i < set.size(); ++i) {
          if (i != c) ant.push_back(set[i]);
        }
        auto it = coverage.find(ant);
        if (it == coverage.end() || it->second == 0) continue;
        Rational accuracy(cov, it->second);
        if (accuracy < config.min_accuracy) continue;
        Rule rule;
        rule.antecedent = ToItems(ant);
        rule.consequent = universe_[set[c]];
        if (!IsNonTrivialRule(vocab, rule.antecedent, rule.consequent)) continue;
        rule.coverage = cov;
        rule.accuracy = accuracy;
        rule.origin = RuleOrigin::kMined;
        rule.id = MakeRuleId(vocab, rule.origin, rule.antecedent, rule.consequent);
        auto key = std::make_pair(rule.antecedent, rule.consequent);
        auto [pos, inserted] = unique.emplace(key, rule);
        if (!inserted && pos->second.coverage < rule.coverage) pos->second = rule;
      }
    }
  }
  std::vector<Rule> rules;
  for (auto &[key, rule] : unique) rules.push_back(std::move(rule));
  SortRules(rules);
  return rules;
}

std::vector<Rule> MaterializeBridgeRules(const EvidenceStore &store) {
  const Vocabulary &vocab = store.vocabulary();
  std::vector<Rule> rules;
  for (auto [child, parent] : vocab.ParentEdges()) {
    StepAttribute attribute = vocab.term(child).attribute;
    Rule rule;
    rule.antecedent = {Item{attribute, child, {}}};
    rule.consequent = Item{attribute, parent, {}};
    rule.coverage = store.Coverage(rule.antecedent);
    rule.accuracy = Rational::Integer(1);
    rule.origin = RuleOrigin::kBridge;
    rule.id = MakeRuleId(vocab, rule.origin, rule.antecedent, rule.consequent);
    rules.push_back(std::move(rule));
  }
  SortRules(rules);
  return rules;
}

// --- KnowledgeBase -----------------------------------------------------------

KnowledgeBase::KnowledgeBase(std::shared_ptr<const Vocabulary> vocab, std::vector<Rule> rules)
    : vocab_(std::move(vocab)), rules_(std::move(rules)) {
  SortRules(rules_);
  rules_.erase(std::unique(rules_.begin(), rules_.end(),
                           [](const Rule &a, const Rule &b) { return a.id == b.id; }),
               rules_.end());
  for (std::size_t i = 0; i < rules_.size(); ++i) by_id_[rules_[i].id] = i;
  fingerprint_ = Fingerprint(ToJson().dump());
}

KnowledgeBase KnowledgeBase::Merge(std::shared_ptr<const Vocabulary> vocab,
                                   std::vector<Rule> mined, std::vector<Rule> bridge,
                                   std::vector<Rule> curated) {
  std::map<std::pair<ItemSet, Item>, Rule> merged;
  auto put = [&](std::vector<Rule> &rules) {
    for (auto &r : rules) merged[{r.antecedent, r.consequent}] = std::move(r);
  };
  put(mined);
  put(bridge);
  put(curated);
  std::vector<Rule> all;
  for (auto &[key, rule] : merged) all.push_back(std::move(rule));
  return KnowledgeBase(std::move(vocab), std::move(all));
}

KnowledgeBase KnowledgeBase::FromJson(std::shared_ptr<const Vocabulary> vocab,
                                      const json &doc) {
  if (!doc.is_array()) Fail(ErrorCode::kFormat, "knowledge base must be a JSON array");
  std::vector<Rule> rules;
  for (const auto &entry : doc) {
    try {
      rules.push_back(RuleFromJson(*vocab, entry));
    } catch (const Error &e) {
      if (e.code() == ErrorCode::kFormat) throw;
      Fail(ErrorCode::kFormat, std::string("knowledge base rule: ") + e.what());
    }
  }
  return KnowledgeBase(std::move(vocab), std::move(rules));
}

json KnowledgeBase::ToJson() const {
  json out = json::array();
  for (const auto &rule : rules_) out.push_back(RuleToJson(*vocab_, rule));
  return out;
}

const Rule *KnowledgeBase::Find(std::string_view id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &rules_[it->second];
}

std::vector<Rule> KnowledgeBase::WithOrigin(RuleOrigin origin) const {
  std::vector<Rule> out;
  for (const auto &r : rules_) {
    if (r.origin == origin) out.push_back(r);
  }
  return out;
}

std::size_t KnowledgeBase::Count(RuleOrigin origin) const {
  return static_cast<std::size_t>(std::count_if(
      rules_.begin(), rules_.end(), [&](const Rule &r) { return r.origin == origin; }));
}

}  // namespace evaladvisor
