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

#include "evaladvisor/taxonomy.h"

#include <algorithm>

#include "evaladvisor/error.h"
#include "evaladvisor/util.h"

namespace evaladvisor {

using nlohmann::json;

namespace {

struct AttributeAlias {
  std::string_view normalized;
  StepAttribute attribute;
};

constexpr AttributeAlias kAliases[] = {
    {"requirement", StepAttribute::kRequirement},
    {"evaluation requirement", StepAttribute::kRequirement},
    {"servicefeature", StepAttribute::kServiceFeature},
    {"service feature", StepAttribute::kServiceFeature},
    {"feature", StepAttribute::kServiceFeature},
    {"metric", StepAttribute::kMetric},
    {"benchmark", StepAttribute::kBenchmark},
    {"environment", StepAttribute::kEnvironment},
    {"experimental environment", StepAttribute::kEnvironment},
    {"manipulation", StepAttribute::kManipulation},
    {"experimental manipulation", StepAttribute::kManipulation},
    {"experimental operation", StepAttribute::kManipulation},
    {"experimentaloperation", StepAttribute::kManipulation},
    {"operation", StepAttribute::kManipulation},
};

}  // namespace

std::string_view AttributeName(StepAttribute attribute) {
  switch (attribute) {
    case StepAttribute::kRequirement:
      return "Requirement";
    case StepAttribute::kServiceFeature:
      return "ServiceFeature";
    case StepAttribute::kMetric:
      return "Metric";
    case StepAttribute::kBenchmark:
      return "Benchmark";
    case StepAttribute::kEnvironment:
      return "Environment";
    case StepAttribute::kManipulation:
      return "Manipulation";
  }
  return "?";
}

StepAttribute ParseAttribute(std::string_view text) {
  std::string normalized = NormalizeText(text);
  std::replace(normalized.begin(), normalized.end(), '_', ' ');
  std::replace(normalized.begin(), normalized.end(), '-', ' ');
  for (const auto &alias : kAliases) {
    if (alias.normalized == normalized) return alias.attribute;
  }
  Fail(ErrorCode::kInvalidInput,
       "unknown step attribute '" + std::string(text) + "'");
}

void Canonicalize(ItemSet &items) {
  std::stable_sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
}

ItemSet MakeItemSet(std::vector<Item> items) {
  Canonicalize(items);
  return items;
}

bool Contains(const ItemSet &set, const Item &item) {
  return std::binary_search(set.begin(), set.end(), item);
}

bool IsSubset(const ItemSet &subset, const ItemSet &superset) {
  return std::includes(superset.begin(), superset.end(), subset.begin(),
                       subset.end());
}

// --- Vocabulary -------------------------------------------------------------

Vocabulary Vocabulary::FromJson(const json &doc) {
  if (!doc.is_array()) Fail(ErrorCode::kFormat, "vocabulary must be an array");
  Vocabulary vocab;
  struct Pending {
    TermId child;
    std::string parent_label;
  };
  std::vector<Pending> pending;
  try {
    for (const auto &entry : doc) {
      StepAttribute attribute =
          ParseAttribute(entry.at("attribute").get<std::string>());
      std::vector<std::string> synonyms;
      if (entry.contains("synonyms") && !entry["synonyms"].is_null()) {
        synonyms = entry["synonyms"].get<std::vector<std::string>>();
      }
      std::string description = entry.value("description", std::string());
      const Term &term = vocab.AddTerm(attribute, entry.at("label").get<std::string>(),
                                       synonyms, std::nullopt, description);
      if (entry.contains("parent") && !entry["parent"].is_null()) {
        pending.push_back({term.id, entry["parent"].get<std::string>()});
      }
    }
  } catch (const json::exception &e) {
    Fail(ErrorCode::kFormat, std::string("malformed vocabulary entry: ") + e.what());
  } catch (const Error &e) {
    Fail(ErrorCode::kFormat, std::string("invalid vocabulary: ") + e.what());
  }

  for (const auto &p : pending) {
    Term &child = vocab.terms_[p.child.value];
    auto it = vocab.lookup_.find({child.attribute, NormalizeText(p.parent_label)});
    if (it == vocab.lookup_.end()) {
      Fail(ErrorCode::kFormat, "term '" + child.label + "' has unknown parent '" +
                                   p.parent_label + "'");
    }
    child.parent = it->second;
  }
  // Resolve-then-verify: with all edges in place, walk each chain.
  for (const auto &term : vocab.terms_) {
    std::size_t steps = 0;
    for (auto p = term.parent; p; p = vocab.terms_[p->value].parent) {
      if (*p == term.id || ++steps > vocab.terms_.size()) {
        Fail(ErrorCode::kFormat, "parent cycle through '" + term.label + "'");
      }
    }
  }
  return vocab;
}

json Vocabulary::ToJson() const { return ToJson(std::nullopt); }

json Vocabulary::ToJson(std::optional<StepAttribute> only) const {
  json out = json::array();
  for (const auto &term : terms_) {
    if (only && term.attribute != *only) continue;
    out.push_back({
        {"attribute", AttributeName(term.attribute)},
        {"label", term.label},
        {"synonyms", term.synonyms},
        {"parent", term.parent ? json(terms_[term.parent->value].label) : json()},
        {"description", term.description},
    });
  }
  return out;
}

std::string Vocabulary::Fingerprint() const {
  return evaladvisor::Fingerprint(ToJson().dump());
}

std::optional<TermId> Vocabulary::Canonicalize(StepAttribute attribute,
                                               std::string_view raw) const {
  std::string normalized = NormalizeText(raw);
  if (normalized.empty()) {
    Fail(ErrorCode::kInvalidInput, "empty term for " +
                                       std::string(AttributeName(attribute)));
  }
  auto it = lookup_.find({attribute, normalized});
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

Item Vocabulary::Resolve(StepAttribute attribute, std::string_view raw,
                         std::optional<std::string> original) const {
  auto id = Canonicalize(attribute, raw);
  if (!id) {
    Fail(ErrorCode::kNotFound, "unknown " + std::string(AttributeName(attribute)) +
                                   " term '" + std::string(raw) + "'");
  }
  return Item{attribute, *id, std::move(original)};
}

const Term &Vocabulary::term(TermId id) const {
  if (id.value >= terms_.size()) {
    Fail(ErrorCode::kNotFound, "unknown term id " + std::to_string(id.value));
  }
  return terms_[id.value];
}

std::vector<TermId> Vocabulary::Ancestors(TermId id) const {
  std::vector<TermId> chain;
  for (auto p = term(id).parent; p; p = terms_[p->value].parent) {
    chain.push_back(*p);
  }
  return chain;
}

bool Vocabulary::IsAncestor(TermId ancestor, TermId of) const {
  for (auto p = term(of).parent; p; p = terms_[p->value].parent) {
    if (*p == ancestor) return true;
  }
  return false;
}

ItemSet Vocabulary::ExpandItem(const Item &item) const {
  const Term &t = term(item.term);
  if (t.attribute != item.attribute) {
    Fail(ErrorCode::kInvalidInput, "item attribute does not match term '" +
                                       t.label + "'");
  }
  ItemSet out{item};
  for (TermId a : Ancestors(item.term)) out.push_back(Item{item.attribute, a, {}});
  evaladvisor::Canonicalize(out);
  return out;
}

ItemSet Vocabulary::ExpandItems(const ItemSet &items) const {
  ItemSet out;
  for (const auto &item : items) {
    ItemSet e = ExpandItem(item);
    out.insert(out.end(), e.begin(), e.end());
  }
  evaladvisor::Canonicalize(out);
  return out;
}

std::vector<std::pair<TermId, TermId>> Vocabulary::ParentEdges() const {
  std::vector<std::pair<TermId, TermId>> edges;
  for (const auto &t : terms_) {
    if (t.parent) edges.emplace_back(t.id, *t.parent);
  }
  return edges;
}

void Vocabulary::CheckAvailable(StepAttribute attribute,
                                const std::string &normalized,
                                std::string_view raw) const {
  if (normalized.empty()) Fail(ErrorCode::kInvalidInput, "empty label or synonym");
  if (lookup_.count({attribute, normalized})) {
    Fail(ErrorCode::kConflict, "'" + std::string(raw) + "' already names a " +
                                   std::string(AttributeName(attribute)) + " term");
  }
}

const Term &Vocabulary::AddTerm(StepAttribute attribute, std::string_view label,
                                const std::vector<std::string> &synonyms,
                                std::optional<std::string_view> parent_label,
                                std::string_view description) {
  std::string norm_label = NormalizeText(label);
  std::optional<TermId> parent;
  if (parent_label) {
    std::string norm_parent = NormalizeText(*parent_label);
    if (!norm_label.empty() && norm_parent == norm_label) {
      Fail(ErrorCode::kCycle, "term '" + std::string(label) + "' cannot be its own parent");
    }
    auto it = lookup_.find({attribute, norm_parent});
    if (it == lookup_.end()) {
      for (auto other : kAllAttributes) {
        if (lookup_.count({other, norm_parent})) {
          Fail(ErrorCode::kInvalidParent,
               "parent '" + std::string(*parent_label) + "' belongs to " +
                   std::string(AttributeName(other)));
        }
      }
      Fail(ErrorCode::kNotFound, "unknown parent '" + std::string(*parent_label) + "'");
    }
    parent = it->second;
  }
  CheckAvailable(attribute, norm_label, label);
  std::vector<std::string> norm_synonyms;
  for (const auto &s : synonyms) {
    std::string n = NormalizeText(s);
    CheckAvailable(attribute, n, s);
    if (n == norm_label || std::count(norm_synonyms.begin(), norm_synonyms.end(), n)) {
      Fail(ErrorCode::kConflict, "duplicate synonym '" + s + "'");
    }
    norm_synonyms.push_back(n);
  }

  Term term;
  term.id = TermId{static_cast<std::uint32_t>(terms_.size())};
  term.attribute = attribute;
  term.label = std::string(label);
  term.synonyms = synonyms;
  term.parent = parent;
  term.description = std::string(description);
  lookup_[{attribute, norm_label}] = term.id;
  for (auto &n : norm_synonyms) lookup_[{attribute, n}] = term.id;
  terms_.push_back(std::move(term));
  return terms_.back();
}

const Term &Vocabulary::AddSynonym(TermId id, std::string_view synonym) {
  Term &t = const_cast<Term &>(term(id));
  std::string n = NormalizeText(synonym);
  CheckAvailable(t.attribute, n, synonym);
  t.synonyms.emplace_back(synonym);
  lookup_[{t.attribute, n}] = id;
  return t;
}

}  // namespace evaladvisor
