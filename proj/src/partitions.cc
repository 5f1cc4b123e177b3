//
// Copyright 2026 The dpcc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "dpcc/partitions.h"

#include <algorithm>

#include "dpcc/status.h"

namespace dpcc {

uint64_t CountPartitionsAtMost(int n, int k) {
  Require(n >= 0 && n <= 25, "partition counts are tabulated for n <= 25 only");
  if (k <= 0 || k > n) k = n;
  if (n == 0) return 1;
  // Stirling numbers of the second kind, row by row.
  std::vector<uint64_t> row(n + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= n; ++i) {
    for (int j = i; j >= 1; --j) row[j] = row[j - 1] + j * row[j];
    row[0] = 0;
  }
  uint64_t total = 0;
  for (int j = 1; j <= k; ++j) total += row[j];
  return total;
}

uint64_t BellNumber(int n) { return CountPartitionsAtMost(n, n); }

bool NextPartition(std::vector<int>& rgs, int max_blocks) {
  const int n = static_cast<int>(rgs.size());
  if (max_blocks <= 0) max_blocks = n;
  // prefix_max[i] = max(rgs[0..i-1]).
  std::vector<int> prefix_max(n + 1, -1);
  for (int i = 0; i < n; ++i) prefix_max[i + 1] = std::max(prefix_max[i], rgs[i]);
  for (int i = n - 1; i >= 1; --i) {
    const int limit = std::min(prefix_max[i] + 1, max_blocks - 1);
    if (rgs[i] < limit) {
      ++rgs[i];
      std::fill(rgs.begin() + i + 1, rgs.end(), 0);
      return true;
    }
  }
  return false;
}

void ForEachPartition(int n, int max_blocks,
                      const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> rgs(n, 0);
  do {
    visit(rgs);
  } while (n > 0 && NextPartition(rgs, max_blocks));
}

}  // namespace dpcc
