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

#include "evaladvisor/evidence_store.h"

#include <algorithm>

#include "evaladvisor/error.h"
#include "evaladvisor/util.h"

namespace evaladvisor {

using nlohmann::json;

namespace {

bool StoreOrder(const ExperimentRecord *a, const ExperimentRecord *b) {
  if (a->provenance.year != b->provenance.year) {
    return a->provenance.year > b->provenance.year;
  }
  return a->id < b->id;
}

void CheckCorpusEntry(const json &entry) {
  if (!entry.is_object()) Fail(ErrorCode::kFormat, "corpus entry is not an object");
  if (!entry.contains("id") || !entry["id"].is_string()) {
    Fail(ErrorCode::kFormat, "corpus entry without string id");
  }
  if (!entry.contains("items") || !entry["items"].is_array()) {
    Fail(ErrorCode::kFormat, "corpus entry '" + entry["id"].get<std::string>() +
                                 "' has no items array");
  }
  for (const auto &item : entry["items"]) {
    if (!item.is_object() || !item.contains("attribute") || !item.contains("value") ||
        !item["attribute"].is_string() || !item["value"].is_string()) {
      Fail(ErrorCode::kFormat, "malformed item in corpus entry '" +
                                   entry["id"].get<std::string>() + "'");
    }
  }
  if (entry.contains("provenance") && !entry["provenance"].is_object()) {
    Fail(ErrorCode::kFormat, "provenance must be an object");
  }
}

}  // namespace

json ImportResult::ToJson() const {
  return {{"imported", imported}, {"warnings", warnings}};
}

// --- wire helpers -----------------------------------------------------------

json ItemToJson(const Vocabulary &vocab, const Item &item, bool with_original) {
  json j = {{"attribute", AttributeName(item.attribute)},
            {"value", vocab.label(item.term)}};
  if (with_original) j["original"] = item.original ? json(*item.original) : json();
  return j;
}

Item ItemFromJson(const Vocabulary &vocab, const json &j) {
  if (!j.is_object() || !j.contains("attribute") || !j.contains("value") ||
      !j["attribute"].is_string() || !j["value"].is_string()) {
    Fail(ErrorCode::kInvalidInput, "item must be {\"attribute\": str, \"value\": str}");
  }
  std::optional<std::string> original;
  if (j.contains("original") && j["original"].is_string()) {
    original = j["original"].get<std::string>();
  }
  return vocab.Resolve(ParseAttribute(j["attribute"].get<std::string>()),
                       j["value"].get<std::string>(), std::move(original));
}

ItemSet ItemsFromJson(const Vocabulary &vocab, const json &j) {
  if (!j.is_array()) Fail(ErrorCode::kInvalidInput, "items must be an array");
  ItemSet items;
  for (const auto &e : j) items.push_back(ItemFromJson(vocab, e));
  Canonicalize(items);
  return items;
}

json ItemsToJson(const Vocabulary &vocab, const ItemSet &items, bool with_original) {
  json out = json::array();
  for (const auto &item : items) out.push_back(ItemToJson(vocab, item, with_original));
  return out;
}

json ProvenanceToJson(const Provenance &p) {
  return {{"study", p.study},     {"provider", p.provider}, {"service", p.service},
          {"year", p.year},       {"origin", p.origin}};
}

Provenance ProvenanceFromJson(const json &j) {
  Provenance p;
  if (j.is_null()) return p;
  if (!j.is_object()) Fail(ErrorCode::kInvalidInput, "provenance must be an object");
  try {
    p.study = j.value("study", std::string());
    p.provider = j.value("provider", std::string());
    p.service = j.value("service", std::string());
    p.year = j.value("year", 0);
    p.origin = j.value("origin", std::string("corpus"));
  } catch (const json::exception &e) {
    Fail(ErrorCode::kInvalidInput, std::string("bad provenance: ") + e.what());
  }
  return p;
}

json RecordToJson(const Vocabulary &vocab, const ExperimentRecord &r) {
  return {{"id", r.id},
          {"provenance", ProvenanceToJson(r.provenance)},
          {"items", ItemsToJson(vocab, r.items, true)},
          {"version", r.version},
          {"status", r.active() ? "active" : "superseded"},
          {"supersedes", r.supersedes ? json(*r.supersedes) : json()},
          {"created_at", FormatTimestamp(r.created_at)}};
}

ExperimentRecord RecordFromJson(const Vocabulary &vocab, const json &j) {
  ExperimentRecord r;
  try {
    r.id = j.at("id").get<std::string>();
    r.provenance = ProvenanceFromJson(j.value("provenance", json()));
    r.items = ItemsFromJson(vocab, j.at("items"));
    r.version = j.value("version", 1);
    r.status = j.value("status", std::string("active")) == "superseded"
                   ? RecordStatus::kSuperseded
                   : RecordStatus::kActive;
    if (j.contains("supersedes") && j["supersedes"].is_string()) {
      r.supersedes = j["supersedes"].get<std::string>();
    }
    if (j.contains("created_at") && j["created_at"].is_string()) {
      r.created_at = ParseTimestamp(j["created_at"].get<std::string>());
    }
  } catch (const json::exception &e) {
    Fail(ErrorCode::kFormat, std::string("malformed record: ") + e.what());
  }
  return r;
}

// --- EvidenceStore -----------------------------------------------------------

EvidenceStore::EvidenceStore(std::shared_ptr<const Vocabulary> vocab,
                             MatchPolicy policy)
    : vocab_(std::move(vocab)), policy_(policy) {}

ImportResult EvidenceStore::ImportCorpus(const json &doc, std::int64_t created_at) {
  if (!doc.is_array()) Fail(ErrorCode::kFormat, "corpus must be a JSON array");
  for (const auto &entry : doc) CheckCorpusEntry(entry);

  ImportResult result;
  for (const auto &entry : doc) {
    std::string id = entry["id"].get<std::string>();
    if (index_.count(id)) {
      result.warnings.push_back("duplicate record id '" + id + "' skipped");
      continue;
    }
    ItemSet items;
    std::string problem;
    for (const auto &raw : entry["items"]) {
      try {
        items.push_back(ItemFromJson(*vocab_, raw));
      } catch (const Error &e) {
        problem = e.what();
        break;
      }
    }
    if (problem.empty() && items.empty()) problem = "no items";
    Provenance provenance;
    if (problem.empty()) {
      try {
        provenance = ProvenanceFromJson(entry.value("provenance", json()));
      } catch (const Error &e) {
        problem = e.what();
      }
    }
    if (!problem.empty()) {
      result.warnings.push_back("record '" + id + "' skipped: " + problem);
      continue;
    }
    Canonicalize(items);
    ExperimentRecord record;
    record.id = id;
    record.items = std::move(items);
    record.provenance = std::move(provenance);
    record.created_at = created_at;
    Insert(std::move(record));
    ++result.imported;
    result.record_ids.push_back(id);
  }
  return result;
}

ItemSet EvidenceStore::MatchView(const ExperimentRecord &r) const {
  return policy_ == MatchPolicy::kExact ? r.items : vocab_->ExpandItems(r.items);
}

void EvidenceStore::ValidateItems(const ItemSet &items) const {
  if (items.empty()) Fail(ErrorCode::kInvalidInput, "a record needs at least one item");
  for (const auto &item : items) {
    if (vocab_->term(item.term).attribute != item.attribute) {
      Fail(ErrorCode::kInvalidInput, "item attribute does not match its term");
    }
  }
}

void EvidenceStore::ValidateQuery(const ItemSet &itemset) const {
  if (itemset.empty()) Fail(ErrorCode::kInvalidInput, "empty itemset");
  for (const auto &item : itemset) vocab_->term(item.term);
}

bool EvidenceStore::Matches(const ExperimentRecord &record, const ItemSet &itemset) const {
  auto it = index_.find(record.id);
  if (it != index_.end() && &records_[it->second] == &record) {
    return IsSubset(itemset, views_[it->second]);
  }
  return IsSubset(itemset, MatchView(record));
}

std::int64_t EvidenceStore::Coverage(const ItemSet &itemset) const {
  ValidateQuery(itemset);
  std::int64_t count = 0;
  const auto n = static_cast<std::int64_t>(records_.size());
#pragma omp parallel for reduction(+ : count) schedule(static) if (n > 4096)
  for (std::int64_t i = 0; i < n; ++i) {
    if (records_[i].active() && IsSubset(itemset, views_[i])) ++count;
  }
  return count;
}

std::vector<const ExperimentRecord *> EvidenceStore::QueryByItems(
    const ItemSet &itemset) const {
  ValidateQuery(itemset);
  std::vector<const ExperimentRecord *> out;
  for (std::size_t i = 0; i < records_.size(); ++i) {
    if (records_[i].active() && IsSubset(itemset, views_[i])) out.push_back(&records_[i]);
  }
  std::sort(out.begin(), out.end(), StoreOrder);
  return out;
}

std::string EvidenceStore::FreshId() const {
  for (std::size_t n = records_.size() + 1;; ++n) {
    std::string id = "retained-" + std::to_string(n);
    if (!index_.count(id)) return id;
  }
}

const ExperimentRecord &EvidenceStore::Insert(ExperimentRecord record) {
  if (index_.count(record.id)) {
    Fail(ErrorCode::kConflict, "record id '" + record.id + "' already exists");
  }
  views_.push_back(MatchView(record));
  index_[record.id] = records_.size();
  records_.push_back(std::move(record));
  return records_.back();
}

const ExperimentRecord &EvidenceStore::AddRecord(ItemSet items, Provenance provenance,
                                                 std::int64_t now,
                                                 std::optional<std::string> id) {
  Canonicalize(items);
  ValidateItems(items);
  ExperimentRecord record;
  record.id = id ? *id : FreshId();
  record.items = std::move(items);
  record.provenance = std::move(provenance);
  record.created_at = now;
  return Insert(std::move(record));
}

const ExperimentRecord &EvidenceStore::SupersedeRecord(const std::string &old_id,
                                                       ItemSet items,
                                                       Provenance provenance,
                                                       std::int64_t now) {
  auto it = index_.find(old_id);
  if (it == index_.end()) Fail(ErrorCode::kNotFound, "no record '" + old_id + "'");
  if (!records_[it->second].active()) {
    Fail(ErrorCode::kConflict, "record '" + old_id + "' is already superseded");
  }
  Canonicalize(items);
  ValidateItems(items);
  ExperimentRecord record;
  record.id = FreshId();
  record.items = std::move(items);
  record.provenance = std::move(provenance);
  record.created_at = now;
  record.version = records_[it->second].version + 1;
  record.supersedes = old_id;
  std::size_t old_pos = it->second;
  const ExperimentRecord &inserted = Insert(std::move(record));
  records_[old_pos].status = RecordStatus::kSuperseded;
  return inserted;
}

void EvidenceStore::Replay(ExperimentRecord record) {
  std::optional<std::size_t> old_pos;
  if (record.supersedes) {
    auto it = index_.find(*record.supersedes);
    if (it == index_.end()) {
      Fail(ErrorCode::kFormat, "log supersedes unknown record '" + *record.supersedes + "'");
    }
    old_pos = it->second;
  }
  Insert(std::move(record));
  if (old_pos) records_[*old_pos].status = RecordStatus::kSuperseded;
}

const ExperimentRecord *EvidenceStore::Find(const std::string &id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &records_[it->second];
}

const ExperimentRecord &EvidenceStore::Get(const std::string &id) const {
  const ExperimentRecord *r = Find(id);
  if (!r) Fail(ErrorCode::kNotFound, "no record '" + id + "'");
  return *r;
}

std::vector<const ExperimentRecord *> EvidenceStore::ActiveRecords() const {
  std::vector<const ExperimentRecord *> out;
  for (const auto &r : records_) {
    if (r.active()) out.push_back(&r);
  }
  std::sort(out.begin(), out.end(), StoreOrder);
  return out;
}

std::size_t EvidenceStore::active_count() const {
  return static_cast<std::size_t>(
      std::count_if(records_.begin(), records_.end(),
                    [](const ExperimentRecord &r) { return r.active(); }));
}

std::vector<ItemSet> EvidenceStore::Transactions() const {
  std::vector<ItemSet> out;
  for (const auto *r : ActiveRecords()) out.push_back(views_[index_.at(r->id)]);
  return out;
}

void EvidenceStore::RebindVocabulary(std::shared_ptr<const Vocabulary> vocab) {
  if (!vocab || vocab->size() < vocab_->size()) {
    Fail(ErrorCode::kInvalidInput, "replacement vocabulary must extend the current one");
  }
  vocab_ = std::move(vocab);
}

}  // namespace evaladvisor
