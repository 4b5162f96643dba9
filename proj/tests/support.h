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

// Shared test helpers: fixture paths, scratch directories, subprocesses and a
// random small-world generator whose raw form is kept alongside the library
// objects so oracles can work from it directly.

#ifndef EVALADVISOR_TESTS_SUPPORT_H_
#define EVALADVISOR_TESTS_SUPPORT_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "evaladvisor/advisor.h"
#include "evaladvisor/evidence_store.h"
#include "evaladvisor/rule_miner.h"
#include "evaladvisor/taxonomy.h"
#include "json.hpp"

namespace testing_support {

namespace fs = std::filesystem;
using nlohmann::json;

inline fs::path DataRoot() { return fs::path(EVALADVISOR_DATA_ROOT); }

// mkdtemp-backed scratch directory, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir &) = delete;
  TempDir &operator=(const TempDir &) = delete;
  const fs::path &path() const { return path_; }

 private:
  fs::path path_;
};

json ReadJson(const fs::path &path);
void WriteText(const fs::path &path, const std::string &text);
std::string ReadText(const fs::path &path);

// Data directory with the seed vocabulary and curated rules plus the corpus
// of `corpus_dir` (relative to DataRoot(), e.g. "seed" or "fixtures/fuzzy").
fs::path MakeDataDir(const TempDir &tmp, const std::string &corpus_dir,
                     const std::string &name = "data");

std::shared_ptr<const evaladvisor::Vocabulary> SeedVocab();
evaladvisor::EvidenceStore LoadStore(const std::string &corpus_dir,
                                     evaladvisor::MatchPolicy policy =
                                         evaladvisor::MatchPolicy::kHierarchical);

// Curated rules from the seed kb.json.
std::vector<evaladvisor::Rule> SeedCurated(const evaladvisor::Vocabulary &vocab);

// KB = mined(defaults) + bridges over `store` + seed curated rules.
evaladvisor::KnowledgeBase BuildKb(const evaladvisor::EvidenceStore &store,
                                   evaladvisor::MiningConfig config = {});

evaladvisor::Item It(const evaladvisor::Vocabulary &vocab, const std::string &attribute,
                     const std::string &value);

struct ProcessResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs a program with arguments (no shell interpretation of arguments).
ProcessResult RunProcess(const std::vector<std::string> &argv, const std::string &stdin_text = {});

// --- Random small worlds ----------------------------------------------------

struct RawTerm {
  evaladvisor::StepAttribute attribute;
  std::string label;
  int parent = -1;  // index into terms
};

struct RawRecord {
  std::string id;
  int year = 2010;
  std::vector<int> terms;  // indices into terms; may contain duplicates
};

struct RawWorld {
  std::vector<RawTerm> terms;
  std::vector<RawRecord> records;

  json VocabJson() const;
  json CorpusJson() const;
  // Term index plus all ancestor indices, sorted and unique.
  std::vector<int> Expand(const std::vector<int> &ids) const;
  bool Related(int a, int b) const;  // one is an ancestor of the other
};

struct WorldShape {
  int max_terms = 20;
  int max_records = 40;
  int max_items = 8;
  int max_depth = 2;  // levels below a root
};

RawWorld RandomWorld(std::mt19937_64 &rng, const WorldShape &shape = {});

struct World {
  RawWorld raw;
  std::shared_ptr<const evaladvisor::Vocabulary> vocab;
  std::unique_ptr<evaladvisor::EvidenceStore> store;

  evaladvisor::Item ItemOf(int term) const;
  evaladvisor::ItemSet ItemsOf(const std::vector<int> &terms) const;
};

World Materialize(RawWorld raw, evaladvisor::MatchPolicy policy =
                                    evaladvisor::MatchPolicy::kHierarchical);

// Random non-empty subset of term indices of the world.
std::vector<int> RandomTerms(std::mt19937_64 &rng, const RawWorld &raw, int max_size);

}  // namespace testing_support

#endif  // EVALADVISOR_TESTS_SUPPORT_H_
