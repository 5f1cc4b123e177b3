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

// Cluster coarsening and the vertex-splitting reduction for graphs whose
// pairs may carry both a positive and a negative edge.

#ifndef DPCC_CLUSTER_TRANSFORMS_H_
#define DPCC_CLUSTER_TRANSFORMS_H_

#include <utility>
#include <vector>

#include "dpcc/graph.h"
#include "json.hpp"

namespace dpcc {

struct CoarsenReport {
  int k_before = 0;
  int k_after = 0;
  int k_prime = 0;
  // Input cluster ids merged into each bin.
  std::vector<std::vector<int>> bins;
  // Input cluster ids left as they were.
  std::vector<int> kept;
  // sum over bins of C(bin size, 2) * W; bounds the extra disagreement.
  double merge_cost_bound = 0.0;

  nlohmann::json ToJson() const;
};

// ceil(n^(1/4)), at least 1.
int DefaultCoarsenTarget(int n);

// Keeps every cluster with at least n / k_prime vertices and packs the
// others first-fit-decreasing (ties by cluster id) into bins of at most
// 2n / k_prime vertices, each bin becoming one cluster. A clustering with
// at most k_prime clusters is returned unchanged. The result has at most
// 2 k_prime + 1 clusters. max_weight is the largest edge weight W.
// Throws ContractViolation if c is not on n vertices, k_prime < 1 or
// max_weight < 0.
std::pair<Clustering, CoarsenReport> Coarsen(const Clustering& c, int n, int k_prime,
                                             double max_weight);

// Graph on 2n vertices: v+ = v and v- = n + v.
struct SplitGraph {
  SignedGraph graph;
  int original_vertices = 0;
  double coupling_weight = 0.0;

  int plus(int v) const { return v; }
  int minus(int v) const { return original_vertices + v; }
};

// Positive edges {u, v} become {u+, v+}, negative edges become {u-, v-},
// and every v+ is tied to v- by a positive edge of weight
// M = 1 + total weight of h. Separating any v+ from v- costs M, more than
// every other edge together.
SplitGraph SplitTransform(const SignedGraph& h);

// Clustering of h: u and v share a cluster when some chain of couplings and
// shared clusters in c links them. On clusterings that keep every v+ with
// its v- this is plain restriction to the v+ copies.
Clustering Unsplit(const Clustering& c, const SplitGraph& split);

// Clustering of the split graph placing v+ and v- with v.
Clustering LiftToSplit(const Clustering& c);

}  // namespace dpcc

#endif  // DPCC_CLUSTER_TRANSFORMS_H_
