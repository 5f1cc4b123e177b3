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

// Signed paths, distance codes and a packing experiment showing that
// private correlation clustering must incur error linear in n / epsilon.
//
// The path for a sign vector sigma runs v_0 - v_1 - ... - v_n and its i-th
// edge has sign sigma_i. It always has a zero-error clustering, and two sign vectors at
// Hamming distance d cannot both be clustered with fewer than d / 2
// disagreements. A code with many pairwise-far sign vectors therefore
// yields many inputs with disjoint sets of good outputs; an epsilon-DP
// mechanism cannot put much mass on all of them.

#ifndef DPCC_LOWER_BOUND_H_
#define DPCC_LOWER_BOUND_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dpcc/graph.h"
#include "dpcc/rng.h"

namespace dpcc {

using SignVector = std::vector<Sign>;

// Path on sigma.size() + 1 vertices, edge i - 1 -- i with sign sigma[i - 1]
// and weight edge_weight. Throws ContractViolation unless edge_weight > 0.
SignedGraph PathGraph(const SignVector& sigma, double edge_weight = 1.0);

// Consecutive vertices joined by positive edges share a cluster; every
// negative edge starts a new one. Zero error on PathGraph(sigma).
Clustering OptimalPathClustering(const SignVector& sigma);

int HammingDistance(const SignVector& a, const SignVector& b);

// ceil(d / 2) for d the Hamming distance: no clustering has fewer
// disagreements than this on both paths. Throws ContractViolation on a
// length mismatch.
int PairwiseConfusionBound(const SignVector& a, const SignVector& b);

struct Codebook {
  int n = 0;
  double beta = 0.0;
  int min_distance = 0;  // ceil(beta * n)
  // Bit i set means sigma_i = +1.
  std::vector<uint64_t> words;
  bool reached_target = false;
  int64_t samples_drawn = 0;

  SignVector Word(size_t i) const;
  size_t size() const { return words.size(); }
  // log2 |A| / n, the rate of the code.
  double RateBits() const;
  // ln |A| / n, so that |A| = exp(alpha n).
  double AlphaNatural() const;
  // Smallest pairwise distance, by exhaustive check (n + 1 if < 2 words).
  int MeasuredMinDistance() const;
};

// Randomized greedy: draws uniform sign vectors and keeps those at distance
// at least ceil(beta n) from every kept word (and distinct from all of
// them) until `target` words or `budget` draws. Falls short with
// reached_target = false rather than breaking the distance invariant.
// Requires 1 <= n <= 64 and beta in [0, 1/2).
Codebook BruteForceCode(int n, double beta, size_t target, Rng& rng, int64_t budget);

using ClusteringMechanism = std::function<Clustering(const SignedGraph&, Rng&)>;

struct PackingRow {
  size_t codeword = 0;
  double mean_err = 0.0;
  double frac_in_b = 0.0;
};

inline constexpr double kPackingMaxEpsilon = 0.2;

struct PackingReport {
  int n = 0;
  double epsilon = 0.0;
  double lambda = 1.0;
  double beta = 0.0;
  double alpha = 0.0;  // natural-log rate of the codebook actually used
  int repetitions = 0;
  // A run counts as good for its codeword when its error is below
  // lambda * beta * n / 2.
  double good_threshold = 0.0;
  // alpha * beta * n / (4 epsilon). The packing argument behind it needs
  // epsilon <= kPackingMaxEpsilon; above that bound_applies is false and
  // the value is reported for reference only.
  double theory_bound = 0.0;
  bool bound_applies = false;
  std::vector<PackingRow> rows;

  double MeanError() const;
  // codeword,mean_err,frac_in_b,theory_bound
  std::string ToCsv() const;
};

// Runs the mechanism `repetitions` times on PathGraph(sigma, lambda) for
// every codeword sigma. Codeword i uses Rng(seed).Stream(i), so rows do not
// depend on the thread count.
PackingReport PackingExperiment(const ClusteringMechanism& mechanism, const Codebook& code,
                                double epsilon, double lambda, int repetitions, uint64_t seed,
                                int threads = 1);

}  // namespace dpcc

#endif  // DPCC_LOWER_BOUND_H_
