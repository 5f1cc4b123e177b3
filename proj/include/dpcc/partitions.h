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

// Set partitions as restricted growth strings: a[0] = 0 and
// a[i] <= 1 + max(a[0..i-1]).

#ifndef DPCC_PARTITIONS_H_
#define DPCC_PARTITIONS_H_

#include <cstdint>
#include <functional>
#include <vector>

namespace dpcc {

// Bell number B(n); exact for n <= 25.
uint64_t BellNumber(int n);

// Number of partitions of n elements into at most k blocks.
uint64_t CountPartitionsAtMost(int n, int k);

// Calls visit(rgs) for every partition of {0..n-1} with at most max_blocks
// blocks (max_blocks <= 0 means unrestricted), in increasing lexicographic
// order of the restricted growth string. n = 0 visits the empty partition.
void ForEachPartition(int n, int max_blocks,
                      const std::function<void(const std::vector<int>&)>& visit);

// Advances rgs to the lexicographically next restricted growth string with
// at most max_blocks blocks. Returns false after the last one.
bool NextPartition(std::vector<int>& rgs, int max_blocks);

}  // namespace dpcc

#endif  // DPCC_PARTITIONS_H_
