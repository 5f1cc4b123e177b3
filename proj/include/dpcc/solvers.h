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

// Non-private correlation clustering solvers.
//
// All solvers work on the net pair weight w+ - w-. Since
//   err(C) = W+ - sum over same-cluster pairs of (w+ - w-)
// and agr = W - err, MinDis and MaxAgr share their optimal partitions on
// every graph, parallel edges included; the objective only selects what is
// reported.

#ifndef DPCC_SOLVERS_H_
#define DPCC_SOLVERS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "dpcc/graph.h"
#include "dpcc/rng.h"

namespace dpcc {

enum class Objective { kMinDis, kMaxAgr };

std::string ObjectiveName(Objective objective);
Objective ParseObjective(const std::string& name);

// err for kMinDis, agr for kMaxAgr.
double ObjectiveValue(const Clustering& c, const SignedGraph& g, Objective objective);

// True if a is strictly better than b under the objective.
bool Improves(double a, double b, Objective objective);

struct SolverConfig {
  Objective objective = Objective::kMinDis;
  int max_clusters = 0;  // 0: unrestricted
  uint64_t seed = 0;
  int max_passes = 50;
  int restarts = 8;
  // solve() and solve_exact() refuse graphs larger than this.
  int exact_max_vertices = 12;
  // solve() dispatches to the exact solver up to this size.
  int exact_dispatch_vertices = 12;
  int threads = 0;  // restart workers; 0 picks the hardware concurrency
  // When a local search pass moves no vertex, greedily merge cluster pairs
  // with positive net weight between them and keep going.
  bool cluster_merges = true;
};

// Globally optimal partition (with at most max_clusters clusters when set),
// by depth-first search over restricted growth strings with a bound on the
// remaining positive net weight. Among optima the lexicographically
// smallest restricted growth string is returned. Objective values within
// 1e-9 relative are treated as ties. Throws Refusal when
// n > cfg.exact_max_vertices.
Clustering SolveExact(const SignedGraph& g, const SolverConfig& cfg);

// KwikCluster: pick a uniformly random remaining vertex as pivot, cluster it
// with its remaining positive neighbors (net weight > 0; ties count as
// negative), remove them, repeat.
Clustering Pivot(const SignedGraph& g, Rng& rng);

// Repeated passes over the vertices in index order; each vertex takes its
// best strictly improving move to another cluster or to a new singleton.
// A pass without vertex moves instead merges clusters while that helps
// (unless cfg.cluster_merges is off).
// With cfg.max_clusters = k, moves that would open cluster k + 1 are not
// considered and the start must already have at most k clusters. Stops
// after a pass without moves or cfg.max_passes passes. If pass_objectives
// is given it receives the objective of the start and after every pass.
Clustering LocalSearch(const SignedGraph& g, const Clustering& start, const SolverConfig& cfg,
                       std::vector<double>* pass_objectives = nullptr);

// Greedily merges the pair of clusters whose merge costs least until at
// most k clusters remain.
Clustering ReduceClusters(const SignedGraph& g, const Clustering& c, int k);

// Exact when n <= cfg.exact_dispatch_vertices; otherwise the best of
// cfg.restarts runs of pivot, reduction to max_clusters if set, and local
// search, each on its own random stream. Ties go to the smaller restricted
// growth string, so the result does not depend on the thread count.
Clustering Solve(const SignedGraph& g, const SolverConfig& cfg);

}  // namespace dpcc

#endif  // DPCC_SOLVERS_H_
