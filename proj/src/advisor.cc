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

#include "evaladvisor/advisor.h"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "evaladvisor/error.h"
#include "evaladvisor/util.h"

namespace evaladvisor {

namespace fs = std::filesystem;
using nlohmann::json;

json ReadJsonFile(const fs::path &path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kNotFound, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception &e) {
    Fail(ErrorCode::kFormat, path.string() + ": " + e.what());
  }
}

void WriteJsonFile(const fs::path &path, const json &doc) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) Fail(ErrorCode::kInvalidInput, "cannot write " + tmp.string());
    out << doc.dump(2) << '\n';
    if (!out) Fail(ErrorCode::kInvalidInput, "short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

namespace {

// Calls fn(line_json, line_number) for each non-blank line.
template <typename Fn>
void ForEachLine(const fs::path &path, Fn fn) {
  std::ifstream in(path);
  if (!in) return;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception &e) {
      Fail(ErrorCode::kFormat, path.string() + ":" + std::to_string(number) + ": " + e.what());
    }
    fn(j, number);
  }
}

std::int64_t FileTime(const fs::path &path) {
  auto ftime = fs::last_write_time(path);
  auto sys = std::chrono::time_point_cast<std::chrono::seconds>(
      ftime - fs::file_time_type::clock::now() + std::chrono::system_clock::now());
  return sys.time_since_epoch().count();
}

}  // namespace

json MineSummary::ToJson() const {
  return {{"rules", rules},
          {"mined", mined},
          {"bridge", bridge},
          {"curated", curated},
          {"kb_fingerprint", kb_fingerprint}};
}

Advisor::Advisor(AdvisorOptions options) : options_(std::move(options)) {
  if (options_.max_depth < 1) Fail(ErrorCode::kInvalidInput, "max depth must be at least 1");
  if (!fs::exists(Path("vocab.json"))) {
    Fail(ErrorCode::kNotFound, "no vocab.json in " + options_.data_dir.string());
  }
  auto vocab = std::make_shared<const Vocabulary>(Vocabulary::FromJson(ReadJsonFile(Path("vocab.json"))));
  auto store = std::make_shared<EvidenceStore>(vocab, options_.policy);

  if (fs::exists(Path("corpus.json"))) {
    ImportResult r = store->ImportCorpus(ReadJsonFile(Path("corpus.json")), FileTime(Path("corpus.json")));
    load_warnings_ = std::move(r.warnings);
  }
  ForEachLine(Path("records.log"), [&](const json &j, int number) {
    try {
      store->Replay(RecordFromJson(*vocab, j.at("record")));
    } catch (const json::exception &e) {
      Fail(ErrorCode::kFormat, "records.log:" + std::to_string(number) + ": " + e.what());
    } catch (const Error &e) {
      Fail(ErrorCode::kFormat, "records.log:" + std::to_string(number) + ": " + e.what());
    }
  });

  // Rules on file are taken as written; bridge rules for parent edges the
  // file does not cover yet (fresh data dir, added terms) are generated.
  std::vector<Rule> mined, bridge, curated;
  if (fs::exists(Path("kb.json"))) {
    KnowledgeBase stored = KnowledgeBase::FromJson(vocab, ReadJsonFile(Path("kb.json")));
    mined = stored.WithOrigin(RuleOrigin::kMined);
    bridge = stored.WithOrigin(RuleOrigin::kBridge);
    curated = stored.WithOrigin(RuleOrigin::kCurated);
  }
  for (Rule &r : MaterializeBridgeRules(*store)) {
    bool present = false;
    for (const Rule &b : bridge) present = present || b.id == r.id;
    if (!present) bridge.push_back(std::move(r));
  }
  auto kb = std::make_shared<const KnowledgeBase>(
      KnowledgeBase::Merge(vocab, std::move(mined), std::move(bridge), std::move(curated)));

  ForEachLine(Path("reports.log"), [&](const json &j, int) {
    reports_.insert(j.value("report_id", std::string()));
  });
  ForEachLine(Path("feedback.log"), [&](const json &j, int) {
    feedback_.push_back(FeedbackFromJson(j));
  });

  current_ = {vocab, store, kb};
}

std::int64_t Advisor::Now() const { return options_.clock ? options_.clock() : NowSeconds(); }

Snapshot Advisor::snapshot() const {
  std::lock_guard lock(snapshot_mu_);
  return current_;
}

void Advisor::Publish(Snapshot next) {
  std::lock_guard lock(snapshot_mu_);
  current_ = std::move(next);
}

void Advisor::AppendLine(const char *file, const json &line) const {
  std::ofstream out(Path(file), std::ios::app);
  if (!out) Fail(ErrorCode::kInvalidInput, "cannot append to " + Path(file).string());
  out << line.dump() << '\n';
  out.flush();
}

ImportResult Advisor::ImportCorpus(const json &doc) {
  std::lock_guard writer(writer_mu_);
  Snapshot s = snapshot();
  auto store = std::make_shared<EvidenceStore>(*s.store);
  ImportResult result = store->ImportCorpus(doc, Now());
  for (const auto &id : result.record_ids) {
    AppendLine("records.log", {{"op", "add"}, {"record", RecordToJson(*s.vocab, store->Get(id))}});
  }
  s.store = store;
  Publish(std::move(s));
  return result;
}

MineSummary Advisor::Mine(const MiningConfig &config) {
  config.Validate();
  std::lock_guard writer(writer_mu_);
  Snapshot s = snapshot();
  RuleMiner miner(*s.store, options_.kernel);
  auto kb = std::make_shared<const KnowledgeBase>(
      KnowledgeBase::Merge(s.vocab, miner.ExtractRules(config), MaterializeBridgeRules(*s.store),
                           s.kb->WithOrigin(RuleOrigin::kCurated)));
  WriteJsonFile(Path("kb.json"), kb->ToJson());
  s.kb = kb;
  Publish(s);

  MineSummary summary;
  summary.rules = kb->rules().size();
  summary.mined = kb->Count(RuleOrigin::kMined);
  summary.bridge = kb->Count(RuleOrigin::kBridge);
  summary.curated = kb->Count(RuleOrigin::kCurated);
  summary.kb_fingerprint = kb->fingerprint();
  return summary;
}

SuggestionReport Advisor::Suggest(const Enquiry &enquiry, Snapshot *used) {
  Snapshot s = snapshot();
  if (used) *used = s;
  SuggestionReport report = evaladvisor::Suggest(*s.store, *s.kb, enquiry, Now(), options_.max_depth);
  std::lock_guard lock(side_mu_);
  if (reports_.insert(report.id).second) AppendLine("reports.log", {{"report_id", report.id}});
  return report;
}

ExperimentRecord Advisor::Retain(ItemSet items, Provenance provenance,
                                 std::optional<std::string> supersedes) {
  std::lock_guard writer(writer_mu_);
  Snapshot s = snapshot();
  auto store = std::make_shared<EvidenceStore>(*s.store);
  provenance.origin = "retained";
  const ExperimentRecord *added;
  json event;
  if (supersedes) {
    added = &store->SupersedeRecord(*supersedes, std::move(items), std::move(provenance), Now());
    event = {{"op", "supersede"}, {"old", *supersedes}};
  } else {
    added = &store->AddRecord(std::move(items), std::move(provenance), Now());
    event = {{"op", "add"}};
  }
  event["record"] = RecordToJson(*s.vocab, *added);
  AppendLine("records.log", event);
  ExperimentRecord copy = *added;
  s.store = store;
  Publish(std::move(s));
  return copy;
}

bool Advisor::HasReport(const std::string &report_id) const {
  std::lock_guard lock(side_mu_);
  return reports_.count(report_id) > 0;
}

Feedback Advisor::RecordFeedback(Feedback feedback) {
  std::lock_guard lock(side_mu_);
  if (feedback.report_id.empty()) Fail(ErrorCode::kInvalidInput, "feedback needs a report_id");
  if (!reports_.count(feedback.report_id)) {
    Fail(ErrorCode::kNotFound, "no report '" + feedback.report_id + "'");
  }
  char id[32];
  std::snprintf(id, sizeof id, "fb-%06zu", feedback_.size() + 1);
  feedback.id = id;
  feedback.submitted_at = Now();
  AppendLine("feedback.log", FeedbackToJson(feedback));
  feedback_.push_back(feedback);
  return feedback;
}

std::vector<Feedback> Advisor::FeedbackFor(const std::string &report_id) const {
  std::lock_guard lock(side_mu_);
  std::vector<Feedback> out;
  for (const auto &f : feedback_) {
    if (f.report_id == report_id) out.push_back(f);
  }
  return out;
}

void Advisor::RebindVocabulary(std::shared_ptr<const Vocabulary> vocab) {
  Snapshot s = snapshot();
  auto store = std::make_shared<EvidenceStore>(*s.store);
  store->RebindVocabulary(vocab);
  // Terms only ever get added, so existing rules keep their ids; bridges for
  // new parent edges come with the next mine or restart.
  auto kb = std::make_shared<const KnowledgeBase>(vocab, s.kb->rules());
  WriteJsonFile(Path("vocab.json"), vocab->ToJson());
  Publish({vocab, store, kb});
}

Term Advisor::AddTerm(StepAttribute attribute, const std::string &label,
                      const std::vector<std::string> &synonyms,
                      const std::optional<std::string> &parent, const std::string &description) {
  std::lock_guard writer(writer_mu_);
  auto vocab = std::make_shared<Vocabulary>(*snapshot().vocab);
  std::optional<std::string_view> parent_view;
  if (parent) parent_view = *parent;
  Term term = vocab->AddTerm(attribute, label, synonyms, parent_view, description);
  RebindVocabulary(vocab);
  return term;
}

Term Advisor::AddSynonym(StepAttribute attribute, const std::string &label,
                         const std::string &synonym) {
  std::lock_guard writer(writer_mu_);
  auto vocab = std::make_shared<Vocabulary>(*snapshot().vocab);
  Item item = vocab->Resolve(attribute, label);
  Term term = vocab->AddSynonym(item.term, synonym);
  RebindVocabulary(vocab);
  return term;
}

}  // namespace evaladvisor
