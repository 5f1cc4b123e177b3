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


#include "dpcc/solvers.h"

#include <gtest/gtest.h>

#include <algorithm>

#include "dpcc/status.h"
#include "oracles/brute_force.h"
#include "oracles/frozen_values.h"

namespace dpcc {
namespace {

SignedGraph RandomInstance(int trial, int n, Rng& rng) {
  switch (trial % 3) {
    case 0: return oracle::RandomComplete(n, 0.4, rng);
    case 1: return oracle::RandomWeighted(n, 0.7, 3.0, rng, trial % 2 == 0);
    default: return oracle::RandomDoubleEdged(n, 0.5, 2.0, rng);
  }
}

TEST(ObjectiveNamesTest, RoundTrip) {
  EXPECT_EQ(ParseObjective(ObjectiveName(Objective::kMinDis)), Objective::kMinDis);
  EXPECT_EQ(ParseObjective(ObjectiveName(Objective::kMaxAgr)), Objective::kMaxAgr);
  EXPECT_THROW(ParseObjective("maxcut"), ContractViolation);
  EXPECT_TRUE(Improves(1.0, 2.0, Objective::kMinDis));
  EXPECT_TRUE(Improves(2.0, 1.0, Objective::kMaxAgr));
}

TEST(SolveExactTest, Triangle) {
  const SignedGraph g(3, {{0, 1, 1.0, Sign::kPositive},
                          {0, 2, 1.0, Sign::kPositive},
                          {1, 2, 1.0, Sign::kNegative}});
  EXPECT_EQ(Disagreement(SolveExact(g, {}), g), frozen::kTriangleOptimumErr);
}

TEST(SolveExactTest, MatchesBruteForceIncludingTieBreak) {
  Rng rng(1);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 1 + trial % 8;
    const SignedGraph g = RandomInstance(trial, n, rng);
    for (Objective objective : {Objective::kMinDis, Objective::kMaxAgr}) {
      for (int k : {0, 2}) {
        SolverConfig cfg;
        cfg.objective = objective;
        cfg.max_clusters = k;
        const Clustering c = SolveExact(g, cfg);
        const oracle::Optimum best =
            oracle::BestPartition(g, objective == Objective::kMinDis, k);
        EXPECT_NEAR(ObjectiveValue(c, g, objective), best.value, 1e-9 * (1 + g.total_weight()));
        EXPECT_EQ(c.labels(), best.first) << "trial " << trial;
        if (k > 0) {
          EXPECT_LE(c.num_clusters(), k);
        }
      }
    }
  }
}

TEST(SolveExactTest, RefusesLargeInputs) {
  Rng rng(2);
  const SignedGraph g = oracle::RandomComplete(13, 0.5, rng);
  EXPECT_THROW(SolveExact(g, {}), Refusal);
  SolverConfig cfg;
  cfg.exact_max_vertices = 4;
  EXPECT_THROW(SolveExact(oracle::RandomComplete(5, 0.5, rng), cfg), Refusal);
}

TEST(PivotTest, ExtremeGraphs) {
  Rng rng(3);
  EXPECT_EQ(Pivot(SignedGraph::CompleteUnweighted(6, std::vector<bool>(15, true)), rng),
            Clustering::SingleCluster(6));
  EXPECT_EQ(Pivot(SignedGraph::CompleteUnweighted(6, std::vector<bool>(15, false)), rng),
            Clustering::Singletons(6));
}

// Every cluster has a member with positive net weight to all other members.
TEST(PivotTest, ClustersAreStarsAroundAPivot) {
  Rng rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng.UniformIndex(25));
    const SignedGraph g = RandomInstance(trial, n, rng);
    const Clustering c = Pivot(g, rng);
    ASSERT_EQ(c.num_vertices(), n);
    for (const std::vector<int>& members : c.Clusters()) {
      const bool has_center = std::any_of(members.begin(), members.end(), [&](int p) {
        return std::all_of(members.begin(), members.end(),
                           [&](int u) { return u == p || g.net_weight(p, u) > 0.0; });
      });
      EXPECT_TRUE(has_center);
    }
  }
}

TEST(PivotTest, DeterministicForASeed) {
  Rng gen(5);
  const SignedGraph g = oracle::RandomComplete(40, 0.3, gen);
  Rng a(6), b(6);
  EXPECT_EQ(Pivot(g, a), Pivot(g, b));
}

TEST(LocalSearchTest, MonotoneAndLocallyOptimal) {
  Rng rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 4 + trial % 15;
    const SignedGraph g = RandomInstance(trial, n, rng);
    const Clustering start = Clustering::FromLabels(oracle::RandomLabels(n, 4, rng));
    std::vector<double> passes;
    SolverConfig cfg;
    const Clustering c = LocalSearch(g, start, cfg, &passes);
    ASSERT_GE(passes.size(), 1u);
    EXPECT_EQ(passes.front(), Disagreement(start, g));
    for (size_t i = 1; i < passes.size(); ++i) EXPECT_LE(passes[i], passes[i - 1] + 1e-9);
    const double err = Disagreement(c, g);
    EXPECT_NEAR(err, passes.back(), 1e-9);
    // No single vertex move (to another cluster or alone) improves.
    const double tol = 1e-9 * (1 + g.total_weight());
    for (int v = 0; v < n; ++v) {
      for (int target = 0; target <= c.num_clusters(); ++target) {
        std::vector<int> labels = c.labels();
        labels[v] = target;
        EXPECT_GE(oracle::Err(labels, g), err - tol);
      }
    }
  }
}

TEST(LocalSearchTest, RespectsMaxClusters) {
  Rng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const SignedGraph g = oracle::RandomComplete(15, 0.2, rng);
    SolverConfig cfg;
    cfg.max_clusters = 3;
    const Clustering start = Clustering::FromLabels(oracle::RandomLabels(15, 3, rng));
    EXPECT_LE(LocalSearch(g, start, cfg).num_clusters(), 3);
  }
  SolverConfig cfg;
  cfg.max_clusters = 2;
  EXPECT_THROW(LocalSearch(oracle::RandomComplete(5, 0.5, rng), Clustering::Singletons(5), cfg),
               ContractViolation);
  EXPECT_THROW(LocalSearch(oracle::RandomComplete(5, 0.5, rng), Clustering::Singletons(4), {}),
               ContractViolation);
}

TEST(LocalSearchTest, ClusterMergesJoinSplitBlocks) {
  // Two positive cliques of 4. Across them vertex i is negative to i + 4
  // and positive to the other three, so a vertex move gains 2 and loses 3,
  // while merging the blocks gains 8.
  std::vector<bool> positive(NumPairs(8), true);
  for (int i = 0; i < 4; ++i) positive[PairIndex(8, i, i + 4)] = false;
  const SignedGraph g = SignedGraph::CompleteUnweighted(8, positive);
  const Clustering start = Clustering::FromLabels(std::vector<int>{0, 0, 0, 0, 1, 1, 1, 1});
  SolverConfig off;
  off.cluster_merges = false;
  EXPECT_EQ(LocalSearch(g, start, off), start);
  EXPECT_EQ(LocalSearch(g, start, {}), Clustering::SingleCluster(8));
}

TEST(ReduceClustersTest, ReachesTargetAndNeverSplits) {
  Rng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 5 + trial % 20;
    const SignedGraph g = RandomInstance(trial, n, rng);
    const Clustering c = Clustering::Singletons(n);
    for (int k : {1, 2, 4}) {
      const Clustering r = ReduceClusters(g, c, k);
      EXPECT_LE(r.num_clusters(), k);
    }
    const Clustering s = Clustering::FromLabels(oracle::RandomLabels(n, 5, rng));
    const Clustering r = ReduceClusters(g, s, 2);
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        if (s.cluster_of(u) == s.cluster_of(v)) EXPECT_EQ(r.cluster_of(u), r.cluster_of(v));
      }
    }
    EXPECT_EQ(ReduceClusters(g, s, n), s);
  }
}

TEST(SolveTest, DispatchesToExactOnSmallGraphs) {
  Rng rng(10);
  const SignedGraph g = oracle::RandomWeighted(9, 0.8, 2.0, rng);
  SolverConfig cfg;
  EXPECT_EQ(Solve(g, cfg), SolveExact(g, cfg));
}

TEST(SolveTest, IndependentOfThreadCount) {
  Rng rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const SignedGraph g = RandomInstance(trial, 40, rng);
    SolverConfig one, many;
    one.seed = many.seed = 100 + trial;
    one.threads = 1;
    many.threads = 4;
    EXPECT_EQ(Solve(g, one), Solve(g, many));
  }
}

TEST(SolveTest, HeuristicsShareOptimaAcrossObjectives) {
  Rng rng(12);
  const SignedGraph g = oracle::RandomComplete(30, 0.3, rng);
  SolverConfig mindis, maxagr;
  maxagr.objective = Objective::kMaxAgr;
  const Clustering a = Solve(g, mindis), b = Solve(g, maxagr);
  EXPECT_EQ(Disagreement(a, g), Disagreement(b, g));
}

TEST(SolveTest, BadConfig) {
  Rng rng(13);
  const SignedGraph g = oracle::RandomComplete(20, 0.3, rng);
  SolverConfig cfg;
  cfg.restarts = 0;
  EXPECT_THROW(Solve(g, cfg), ContractViolation);
  cfg.restarts = 1;
  cfg.max_clusters = -1;
  EXPECT_THROW(Solve(g, cfg), ContractViolation);
}

}  // namespace
}  // namespace dpcc
