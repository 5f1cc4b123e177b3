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


#include "dpcc/cluster_transforms.h"

#include <gtest/gtest.h>

#include "dpcc/solvers.h"
#include "dpcc/status.h"
#include "oracles/brute_force.h"
#include "oracles/frozen_values.h"

namespace dpcc {
namespace {

Clustering FromSizes(const std::vector<int>& sizes) {
  std::vector<int> labels;
  for (size_t id = 0; id < sizes.size(); ++id) labels.insert(labels.end(), sizes[id], id);
  return Clustering::FromLabels(labels);
}

TEST(DefaultCoarsenTargetTest, FourthRootCeiling) {
  EXPECT_EQ(DefaultCoarsenTarget(1), 1);
  EXPECT_EQ(DefaultCoarsenTarget(2), 2);
  EXPECT_EQ(DefaultCoarsenTarget(16), 2);
  EXPECT_EQ(DefaultCoarsenTarget(17), 3);
  EXPECT_EQ(DefaultCoarsenTarget(81), 3);
  EXPECT_EQ(DefaultCoarsenTarget(82), 4);
  EXPECT_EQ(DefaultCoarsenTarget(10000), 10);
}

TEST(CoarsenTest, FrozenFirstFitDecreasingExample) {
  const auto [out, report] = Coarsen(FromSizes({9, 3, 2, 2}), 16, 2, 1.0);
  EXPECT_EQ(report.kept.size(), frozen::kFfdKept);
  EXPECT_EQ(report.bins.size(), frozen::kFfdBins);
  EXPECT_EQ(out.ClusterSizes()[1], frozen::kFfdBinLoad);
  EXPECT_EQ(report.merge_cost_bound, frozen::kFfdMergeBound);
  EXPECT_EQ(report.k_before, 4);
  EXPECT_EQ(report.k_after, 2);
  EXPECT_EQ(report.ToJson()["k_after"], 2);
}

TEST(CoarsenTest, FewClustersAreLeftAlone) {
  const Clustering c = FromSizes({3, 3, 4});
  const auto [out, report] = Coarsen(c, 10, 3, 2.0);
  EXPECT_EQ(out, c);
  EXPECT_EQ(report.merge_cost_bound, 0.0);
  EXPECT_TRUE(report.bins.empty());
}

TEST(CoarsenTest, RejectsBadArguments) {
  const Clustering c = Clustering::Singletons(5);
  EXPECT_THROW(Coarsen(c, 6, 2, 1.0), ContractViolation);
  EXPECT_THROW(Coarsen(c, 5, 0, 1.0), ContractViolation);
  EXPECT_THROW(Coarsen(c, 5, 2, -1.0), ContractViolation);
}

TEST(CoarsenPropertyTest, Invariants) {
  Rng rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng.UniformIndex(120));
    const int k_prime = 1 + static_cast<int>(rng.UniformIndex(5));
    const Clustering c =
        Clustering::FromLabels(oracle::RandomLabels(n, 1 + rng.UniformIndex(n), rng));
    const auto [out, report] = Coarsen(c, n, k_prime, 1.0);
    ASSERT_EQ(out.num_vertices(), n);
    if (c.num_clusters() <= k_prime) {
      EXPECT_EQ(out, c);
    } else {
      EXPECT_LE(out.num_clusters(), 2 * k_prime + 1);
    }
    // Refinement: clusters are only merged.
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (c.cluster_of(u) == c.cluster_of(v)) EXPECT_EQ(out.cluster_of(u), out.cluster_of(v));
      }
    }
    if (c.num_clusters() <= k_prime) continue;
    const std::vector<int> sizes = c.ClusterSizes();
    for (int id : report.kept) EXPECT_GE(sizes[id] * k_prime, n);
    for (const std::vector<int>& bin : report.bins) {
      int load = 0;
      for (int id : bin) {
        EXPECT_LT(sizes[id] * k_prime, n);
        load += sizes[id];
      }
      EXPECT_LE(load * k_prime, 2 * n);
    }
    // Extra disagreement on a complete unweighted graph is at most the bound.
    const SignedGraph g = oracle::RandomComplete(n, 0.5, rng);
    EXPECT_LE(Disagreement(out, g) - Disagreement(c, g), report.merge_cost_bound + 1e-9);
  }
}

TEST(SplitTransformTest, ShapeAndCoupling) {
  const SignedGraph h(3, {{0, 1, 2.0, Sign::kPositive}});
  const SplitGraph split = SplitTransform(h);
  EXPECT_EQ(split.graph.num_vertices(), 6);
  EXPECT_EQ(split.coupling_weight, frozen::kSplitCoupling);
  EXPECT_FALSE(split.graph.parallel_ok());
  EXPECT_EQ(split.graph.weights(split.plus(0), split.plus(1)).positive, 2.0);
  for (int v = 0; v < 3; ++v) {
    EXPECT_EQ(split.graph.net_weight(split.plus(v), split.minus(v)), split.coupling_weight);
  }
}

TEST(SplitTransformTest, LiftPreservesCost) {
  Rng rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 10;
    const SignedGraph h = oracle::RandomDoubleEdged(n, 0.5, 3.0, rng);
    const SplitGraph split = SplitTransform(h);
    const Clustering c = Clustering::FromLabels(oracle::RandomLabels(n, 4, rng));
    const Clustering lifted = LiftToSplit(c);
    EXPECT_NEAR(Disagreement(lifted, split.graph), Disagreement(c, h), 1e-9);
    EXPECT_EQ(Unsplit(lifted, split), c);
  }
}

TEST(SplitTransformTest, UnsplitOfTheOptimumIsOptimal) {
  Rng rng(3);
  SolverConfig cfg;
  cfg.exact_max_vertices = 12;
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 5;
    const SignedGraph h = oracle::RandomDoubleEdged(n, 0.6, 3.0, rng);
    const SplitGraph split = SplitTransform(h);
    const Clustering best_split = SolveExact(split.graph, cfg);
    const Clustering back = Unsplit(best_split, split);
    EXPECT_NEAR(Disagreement(back, h), oracle::BestPartition(h, true).value,
                1e-9 * (1 + h.total_weight()));
  }
}

TEST(SplitTransformTest, UnsplitJoinsThroughCouplings) {
  const SignedGraph h(2, {});
  const SplitGraph split = SplitTransform(h);
  // 0+ alone with 1-, 1+ alone with 0-: the chain links 0 and 1.
  const Clustering c = Clustering::FromLabels(std::vector<int>{0, 1, 1, 0});
  EXPECT_EQ(Unsplit(c, split), Clustering::SingleCluster(2));
  EXPECT_THROW(Unsplit(Clustering::Singletons(3), split), ContractViolation);
}

}  // namespace
}  // namespace dpcc
