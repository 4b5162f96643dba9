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

#include "support.h"

#include <fcntl.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace testing_support {

using namespace evaladvisor;

TempDir::TempDir() {
  std::string pattern = (fs::temp_directory_path() / "evaladvisor-XXXXXX").string();
  if (!mkdtemp(pattern.data())) throw std::runtime_error("mkdtemp failed");
  path_ = pattern;
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

json ReadJson(const fs::path &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return json::parse(in);
}

void WriteText(const fs::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::trunc);
  out << text;
}

std::string ReadText(const fs::path &path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path MakeDataDir(const TempDir &tmp, const std::string &corpus_dir, const std::string &name) {
  fs::path dir = tmp.path() / name;
  fs::create_directories(dir);
  fs::copy_file(DataRoot() / "seed" / "vocab.json", dir / "vocab.json");
  fs::copy_file(DataRoot() / "seed" / "kb.json", dir / "kb.json");
  fs::copy_file(DataRoot() / corpus_dir / "corpus.json", dir / "corpus.json");
  return dir;
}

std::shared_ptr<const Vocabulary> SeedVocab() {
  static const auto vocab =
      std::make_shared<const Vocabulary>(Vocabulary::FromJson(ReadJson(DataRoot() / "seed" / "vocab.json")));
  return vocab;
}

EvidenceStore LoadStore(const std::string &corpus_dir, MatchPolicy policy) {
  EvidenceStore store(SeedVocab(), policy);
  ImportResult r = store.ImportCorpus(ReadJson(DataRoot() / corpus_dir / "corpus.json"), 0);
  if (!r.warnings.empty()) throw std::runtime_error("fixture import warned: " + r.warnings.front());
  return store;
}

std::vector<Rule> SeedCurated(const Vocabulary &) {
  return KnowledgeBase::FromJson(SeedVocab(), ReadJson(DataRoot() / "seed" / "kb.json")).rules();
}

KnowledgeBase BuildKb(const EvidenceStore &store, MiningConfig config) {
  RuleMiner miner(store);
  return KnowledgeBase::Merge(store.vocabulary_ptr(), miner.ExtractRules(config),
                              MaterializeBridgeRules(store), SeedCurated(store.vocabulary()));
}

Item It(const Vocabulary &vocab, const std::string &attribute, const std::string &value) {
  return vocab.Resolve(ParseAttribute(attribute), value);
}

ProcessResult RunProcess(const std::vector<std::string> &argv, const std::string &stdin_text) {
  TempDir tmp;
  fs::path in = tmp.path() / "in", out = tmp.path() / "out", err = tmp.path() / "err";
  WriteText(in, stdin_text);
  pid_t pid = fork();
  if (pid < 0) throw std::runtime_error("fork failed");
  if (pid == 0) {
    int fi = open(in.c_str(), O_RDONLY);
    int fo = open(out.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    int fe = open(err.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    dup2(fi, 0);
    dup2(fo, 1);
    dup2(fe, 2);
    std::vector<char *> args;
    for (const auto &a : argv) args.push_back(const_cast<char *>(a.c_str()));
    args.push_back(nullptr);
    execv(args[0], args.data());
    _exit(127);
  }
  int status = 0;
  waitpid(pid, &status, 0);
  ProcessResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = ReadText(out);
  r.err = ReadText(err);
  return r;
}

// --- RawWorld ----------------------------------------------------------------

json RawWorld::VocabJson() const {
  json out = json::array();
  for (const auto &t : terms) {
    out.push_back({{"attribute", AttributeName(t.attribute)},
                   {"label", t.label},
                   {"synonyms", json::array()},
                   {"parent", t.parent >= 0 ? json(terms[t.parent].label) : json()}});
  }
  return out;
}

json RawWorld::CorpusJson() const {
  json out = json::array();
  for (const auto &r : records) {
    json items = json::array();
    for (int t : r.terms) {
      items.push_back({{"attribute", AttributeName(terms[t].attribute)}, {"value", terms[t].label}});
    }
    out.push_back({{"id", r.id},
                   {"provenance", {{"study", r.id}, {"provider", "p"}, {"service", "s"}, {"year", r.year}}},
                   {"items", items}});
  }
  return out;
}

std::vector<int> RawWorld::Expand(const std::vector<int> &ids) const {
  std::set<int> out;
  for (int id : ids) {
    for (int t = id; t >= 0; t = terms[t].parent) out.insert(t);
  }
  return {out.begin(), out.end()};
}

bool RawWorld::Related(int a, int b) const {
  for (int t = terms[a].parent; t >= 0; t = terms[t].parent) {
    if (t == b) return true;
  }
  for (int t = terms[b].parent; t >= 0; t = terms[t].parent) {
    if (t == a) return true;
  }
  return false;
}

RawWorld RandomWorld(std::mt19937_64 &rng, const WorldShape &shape) {
  RawWorld w;
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int n_terms = uniform(2, shape.max_terms);
  // Few attributes so that same-attribute hierarchies actually form.
  const int n_attrs = uniform(1, 4);
  std::vector<int> depth;
  for (int i = 0; i < n_terms; ++i) {
    RawTerm t;
    t.attribute = kAllAttributes[uniform(0, n_attrs - 1)];
    t.label = "t" + std::to_string(i);
    std::vector<int> parents;
    for (int j = 0; j < i; ++j) {
      if (w.terms[j].attribute == t.attribute && depth[j] < shape.max_depth) parents.push_back(j);
    }
    int d = 0;
    if (!parents.empty() && uniform(0, 9) < 5) {
      t.parent = parents[uniform(0, static_cast<int>(parents.size()) - 1)];
      d = depth[t.parent] + 1;
    }
    w.terms.push_back(t);
    depth.push_back(d);
  }
  const int n_records = uniform(0, shape.max_records);
  // Skewed term popularity gives frequent itemsets something to find.
  std::vector<double> weights;
  for (int i = 0; i < n_terms; ++i) weights.push_back(1.0 + uniform(0, 6) * uniform(0, 1));
  std::discrete_distribution<int> pick(weights.begin(), weights.end());
  for (int r = 0; r < n_records; ++r) {
    RawRecord rec;
    rec.id = "r" + std::to_string(r);
    rec.year = uniform(2005, 2012);
    const int n_items = uniform(1, shape.max_items);
    for (int k = 0; k < n_items; ++k) rec.terms.push_back(pick(rng));
    w.records.push_back(rec);
  }
  return w;
}

Item World::ItemOf(int term) const {
  return Item{raw.terms[term].attribute, vocab->Resolve(raw.terms[term].attribute, raw.terms[term].label).term, {}};
}

ItemSet World::ItemsOf(const std::vector<int> &terms) const {
  ItemSet items;
  for (int t : terms) items.push_back(ItemOf(t));
  Canonicalize(items);
  return items;
}

World Materialize(RawWorld raw, MatchPolicy policy) {
  World w;
  w.raw = std::move(raw);
  w.vocab = std::make_shared<const Vocabulary>(Vocabulary::FromJson(w.raw.VocabJson()));
  w.store = std::make_unique<EvidenceStore>(w.vocab, policy);
  ImportResult r = w.store->ImportCorpus(w.raw.CorpusJson(), 0);
  if (!r.warnings.empty()) throw std::runtime_error("random world import warned: " + r.warnings.front());
  return w;
}

std::vector<int> RandomTerms(std::mt19937_64 &rng, const RawWorld &raw, int max_size) {
  const int n = static_cast<int>(raw.terms.size());
  const int k = std::uniform_int_distribution<int>(1, std::min(max_size, n))(rng);
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(k);
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace testing_support
