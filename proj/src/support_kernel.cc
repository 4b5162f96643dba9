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

#include "evaladvisor/support_kernel.h"

#include <algorithm>
#include <bit>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace evaladvisor {

TidsetIndex::TidsetIndex(std::span<const DenseSet> transactions, std::uint32_t universe)
    : transactions_(transactions.size()),
      universe_(universe),
      words_((transactions.size() + 63) / 64),
      bits_(static_cast<std::size_t>(universe) * words_, 0) {
  for (std::size_t t = 0; t < transactions.size(); ++t) {
    for (DenseItem item : transactions[t]) {
      if (item >= universe_) continue;
      bits_[item * words_ + t / 64] |= std::uint64_t{1} << (t % 64);
    }
  }
}

std::int64_t TidsetIndex::Support(const DenseSet &itemset) const {
  if (itemset.empty()) return static_cast<std::int64_t>(transactions_);
  for (DenseItem item : itemset) {
    if (item >= universe_) return 0;
  }
  std::int64_t count = 0;
  for (std::size_t w = 0; w < words_; ++w) {
    std::uint64_t acc = ~std::uint64_t{0};
    for (DenseItem item : itemset) {
      acc &= bits_[item * words_ + w];
      if (!acc) break;
    }
    count += std::popcount(acc);
  }
  return count;
}

std::vector<std::int64_t> CountSupportSerial(std::span<const DenseSet> transactions,
                                             std::span<const DenseSet> candidates) {
  std::vector<std::int64_t> counts(candidates.size(), 0);
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    for (const auto &t : transactions) {
      bool all = std::all_of(candidates[c].begin(), candidates[c].end(), [&](DenseItem i) {
        return std::binary_search(t.begin(), t.end(), i);
      });
      if (all) ++counts[c];
    }
  }
  return counts;
}

std::vector<std::int64_t> CountSupportParallel(const TidsetIndex &index,
                                               std::span<const DenseSet> candidates) {
  std::vector<std::int64_t> counts(candidates.size(), 0);
  const auto n = static_cast<std::int64_t>(candidates.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t c = 0; c < n; ++c) {
    counts[c] = index.Support(candidates[c]);
  }
  return counts;
}

int KernelThreads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace evaladvisor
