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

// Brute-force rule enumeration over a RawWorld. Every itemset up to the size
// bound is tested directly against the transactions; nothing is pruned
// levelwise. Itemsets pairing a term with one of its own ancestors are left
// out, matching the miner's contract.

#ifndef EVALADVISOR_TESTS_ORACLE_H_
#define EVALADVISOR_TESTS_ORACLE_H_

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "evaladvisor/rule_miner.h"
#include "support.h"

namespace testing_support {

struct OracleConfig {
  std::int64_t min_coverage = 3;
  std::int64_t acc_num = 4, acc_den = 5;
  int max_size = 3;
};

inline OracleConfig RandomOracleConfig(std::mt19937_64 &rng) {
  static const std::pair<int, int> kAccuracies[] = {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 1}};
  OracleConfig c;
  c.min_coverage = std::uniform_int_distribution<int>(1, 4)(rng);
  auto [n, d] = kAccuracies[std::uniform_int_distribution<int>(0, 4)(rng)];
  c.acc_num = n;
  c.acc_den = d;
  c.max_size = std::uniform_int_distribution<int>(0, 3)(rng) == 0 ? 2 : 3;
  return c;
}

// (antecedent labels, consequent label, coverage, accuracy num, accuracy den)
using RuleKey = std::tuple<std::vector<std::string>, std::string, std::int64_t, std::int64_t, std::int64_t>;
using ItemsetKey = std::pair<std::vector<std::string>, std::int64_t>;

inline std::string RawLabel(const RawWorld &w, int t) {
  return std::string(evaladvisor::AttributeName(w.terms[t].attribute)) + ":" + w.terms[t].label;
}

namespace oracle_detail {

inline std::int64_t Count(const std::vector<std::vector<int>> &tx, const std::vector<int> &set) {
  std::int64_t n = 0;
  for (const auto &t : tx) {
    bool all = true;
    for (int x : set) all = all && std::binary_search(t.begin(), t.end(), x);
    n += all;
  }
  return n;
}

template <typename Fn>
void ForEachItemset(const RawWorld &w, int max_size, Fn fn) {
  const int n = static_cast<int>(w.terms.size());
  std::vector<int> cur;
  auto rec = [&](auto &&self, int from) -> void {
    if (!cur.empty()) fn(cur);
    if (static_cast<int>(cur.size()) == max_size) return;
    for (int t = from; t < n; ++t) {
      bool related = false;
      for (int c : cur) related = related || w.Related(c, t);
      if (related) continue;
      cur.push_back(t);
      self(self, t + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
}

inline std::vector<std::vector<int>> Transactions(const RawWorld &w) {
  std::vector<std::vector<int>> tx;
  for (const auto &r : w.records) tx.push_back(w.Expand(r.terms));
  return tx;
}

inline std::vector<std::string> Labels(const RawWorld &w, const std::vector<int> &set) {
  std::vector<std::string> out;
  for (int t : set) out.push_back(RawLabel(w, t));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace oracle_detail

inline std::vector<ItemsetKey> BruteForceItemsets(const RawWorld &w, const OracleConfig &c) {
  auto tx = oracle_detail::Transactions(w);
  std::vector<ItemsetKey> out;
  oracle_detail::ForEachItemset(w, c.max_size, [&](const std::vector<int> &set) {
    if (set.size() < 2) return;
    std::int64_t cov = oracle_detail::Count(tx, set);
    if (cov >= c.min_coverage) out.emplace_back(oracle_detail::Labels(w, set), cov);
  });
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<RuleKey> BruteForceRules(const RawWorld &w, const OracleConfig &c) {
  auto tx = oracle_detail::Transactions(w);
  std::vector<RuleKey> out;
  oracle_detail::ForEachItemset(w, c.max_size, [&](const std::vector<int> &set) {
    if (set.size() < 2) return;
    const std::int64_t cov = oracle_detail::Count(tx, set);
    if (cov < c.min_coverage) return;
    for (std::size_t k = 0; k < set.size(); ++k) {
      std::vector<int> ant;
      for (std::size_t i = 0; i < set.size(); ++i) {
        if (i != k) ant.push_back(set[i]);
      }
      const std::int64_t cov_ant = oracle_detail::Count(tx, ant);
      // cov / cov_ant >= num / den
      if (cov * c.acc_den < c.acc_num * cov_ant) continue;
      const std::int64_t g = std::gcd(cov, cov_ant);
      out.emplace_back(oracle_detail::Labels(w, ant), RawLabel(w, set[k]), cov, cov / g, cov_ant / g);
    }
  });
  std::sort(out.begin(), out.end());
  return out;
}

inline std::string ItemLabel(const evaladvisor::Vocabulary &v, const evaladvisor::Item &i) {
  return std::string(evaladvisor::AttributeName(i.attribute)) + ":" + std::string(v.label(i.term));
}

inline std::vector<RuleKey> RuleKeys(const evaladvisor::Vocabulary &v, const std::vector<evaladvisor::Rule> &rules) {
  std::vector<RuleKey> out;
  for (const auto &r : rules) {
    std::vector<std::string> ant;
    for (const auto &i : r.antecedent) ant.push_back(ItemLabel(v, i));
    std::sort(ant.begin(), ant.end());
    out.emplace_back(ant, ItemLabel(v, r.consequent), r.coverage, r.accuracy.num(), r.accuracy.den());
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<ItemsetKey> ItemsetKeys(const evaladvisor::Vocabulary &v,
                                           const std::vector<evaladvisor::FrequentItemset> &sets) {
  std::vector<ItemsetKey> out;
  for (const auto &s : sets) {
    std::vector<std::string> labels;
    for (const auto &i : s.items) labels.push_back(ItemLabel(v, i));
    std::sort(labels.begin(), labels.end());
    out.emplace_back(labels, s.coverage);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace testing_support

#endif  // EVALADVISOR_TESTS_ORACLE_H_
