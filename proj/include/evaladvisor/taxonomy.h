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

// Six-step attribute schema and the controlled vocabulary of terms.
//
// Every detail of an evaluation experiment is an Item: a (step attribute,
// term) pair. Terms form a single-parent forest within their attribute; a
// parent edge says the child always implies the parent (Vertical Scalability
// implies Scalability), and the miner and inference engine materialize those
// edges as bridge rules.

#ifndef EVALADVISOR_TAXONOMY_H_
#define EVALADVISOR_TAXONOMY_H_

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace evaladvisor {

enum class StepAttribute : std::uint8_t {
  kRequirement,
  kServiceFeature,
  kMetric,
  kBenchmark,
  kEnvironment,
  kManipulation,
};

inline constexpr std::array<StepAttribute, 6> kAllAttributes = {
    StepAttribute::kRequirement, StepAttribute::kServiceFeature,
    StepAttribute::kMetric,      StepAttribute::kBenchmark,
    StepAttribute::kEnvironment, StepAttribute::kManipulation,
};

std::string_view AttributeName(StepAttribute attribute);

// Accepts canonical names and aliases such as "experimental operation" or
// "service feature". Throws Error(kInvalidInput) when nothing matches.
StepAttribute ParseAttribute(std::string_view text);

struct TermId {
  std::uint32_t value = 0;
  friend auto operator<=>(const TermId &, const TermId &) = default;
};

struct Term {
  TermId id;
  StepAttribute attribute = StepAttribute::kRequirement;
  std::string label;
  std::vector<std::string> synonyms;
  std::optional<TermId> parent;
  std::string description;
};

// Equality and ordering use (attribute, term) only; the original wording is
// carried along for display.
struct Item {
  StepAttribute attribute = StepAttribute::kRequirement;
  TermId term;
  std::optional<std::string> original;

  friend bool operator==(const Item &a, const Item &b) {
    return a.attribute == b.attribute && a.term == b.term;
  }
  friend std::strong_ordering operator<=>(const Item &a, const Item &b) {
    if (auto c = a.attribute <=> b.attribute; c != 0) return c;
    return a.term <=> b.term;
  }
};

// Sorted, duplicate-free vector of items.
using ItemSet = std::vector<Item>;

// Sorts and removes duplicates in place; keeps the first original text seen.
void Canonicalize(ItemSet &items);
ItemSet MakeItemSet(std::vector<Item> items);
bool Contains(const ItemSet &set, const Item &item);
bool IsSubset(const ItemSet &subset, const ItemSet &superset);

class Vocabulary {
 public:
  Vocabulary() = default;

  // Parses the vocabulary file format. Parent references are resolved after
  // all entries are read; unknown parents, cycles and cross-attribute parents
  // raise Error(kFormat).
  static Vocabulary FromJson(const nlohmann::json &doc);
  nlohmann::json ToJson() const;
  nlohmann::json ToJson(std::optional<StepAttribute> only) const;
  std::string Fingerprint() const;

  // Throws Error(kInvalidInput) if `raw` is blank.
  std::optional<TermId> Canonicalize(StepAttribute attribute,
                                     std::string_view raw) const;

  // Like Canonicalize, but unknown terms raise Error(kNotFound).
  Item Resolve(StepAttribute attribute, std::string_view raw,
               std::optional<std::string> original = std::nullopt) const;

  const Term &term(TermId id) const;
  const std::vector<Term> &terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  std::string_view label(TermId id) const { return term(id).label; }

  // Parent chain from the immediate parent up to the root.
  std::vector<TermId> Ancestors(TermId id) const;
  bool IsAncestor(TermId ancestor, TermId of) const;

  // {item} plus the item re-labelled with each ancestor term.
  ItemSet ExpandItem(const Item &item) const;

  // Union of ExpandItem over every element.
  ItemSet ExpandItems(const ItemSet &items) const;

  // (child, parent) pairs in term order.
  std::vector<std::pair<TermId, TermId>> ParentEdges() const;

  const Term &AddTerm(StepAttribute attribute, std::string_view label,
                      const std::vector<std::string> &synonyms,
                      std::optional<std::string_view> parent_label,
                      std::string_view description = {});
  const Term &AddSynonym(TermId id, std::string_view synonym);

 private:
  using Key = std::pair<StepAttribute, std::string>;

  void CheckAvailable(StepAttribute attribute, const std::string &normalized,
                      std::string_view raw) const;

  std::vector<Term> terms_;
  std::map<Key, TermId> lookup_;
};

}  // namespace evaladvisor

#endif  // EVALADVISOR_TAXONOMY_H_
