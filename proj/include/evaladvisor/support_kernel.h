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

// Support counting over a dense transaction database.
//
// Items are dense indices in [0, universe). A transaction is a sorted vector
// of indices. Two implementations are kept side by side: a serial horizontal
// scan (the reference) and an OpenMP kernel over vertical bitset tid-lists.
// Tests check them against each other; bench/ compares their speed.

#ifndef EVALADVISOR_SUPPORT_KERNEL_H_
#define EVALADVISOR_SUPPORT_KERNEL_H_

#include <cstdint>
#include <span>
#include <vector>

namespace evaladvisor {

using DenseItem = std::uint32_t;
using DenseSet = std::vector<DenseItem>;

enum class KernelMode { kSerial, kParallel };

// Vertical layout: one bitset over transactions per item.
class TidsetIndex {
 public:
  TidsetIndex(std::span<const DenseSet> transactions, std::uint32_t universe);

  std::size_t transactions() const { return transactions_; }
  std::uint32_t universe() const { return universe_; }

  // Number of transactions containing every item of `itemset`. An empty
  // itemset is contained in every transaction.
  std::int64_t Support(const DenseSet &itemset) const;

 private:
  std::size_t transactions_;
  std::uint32_t universe_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;  // universe_ rows of words_ words
};

// Reference: for each candidate, scan every transaction.
std::vector<std::int64_t> CountSupportSerial(std::span<const DenseSet> transactions,
                                             std::span<const DenseSet> candidates);

// Candidates are distributed across threads; each count is a popcount of
// ANDed tid-lists.
std::vector<std::int64_t> CountSupportParallel(const TidsetIndex &index,
                                               std::span<const DenseSet> candidates);

// Number of OpenMP threads the parallel kernel will use (1 without OpenMP).
int KernelThreads();

}  // namespace evaladvisor

#endif  // EVALADVISOR_SUPPORT_KERNEL_H_
