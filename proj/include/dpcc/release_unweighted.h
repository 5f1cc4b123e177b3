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

// Pure-DP synthetic release of unweighted complete signed graphs.
//
// The graph is split into its positive and negative indicator channels.
// Each channel gets independent Laplace noise on every pair. One edge flip
// moves both channels by 1 in the same coordinate (L1 sensitivity 2 over
// the two channels together), so the scale is 2/epsilon per coordinate and
// the joint release is epsilon-DP. The noisy channels are merged into
// fractional labels x_e in [0, 1] whose cut sums track both channels, and
// each edge is finally signed positive with probability x_e. Merging and
// rounding only see the noisy channels.

#ifndef DPCC_RELEASE_UNWEIGHTED_H_
#define DPCC_RELEASE_UNWEIGHTED_H_

#include <string>
#include <utility>
#include <vector>

#include "dpcc/graph.h"
#include "dpcc/release_report.h"
#include "dpcc/rng.h"

namespace dpcc {

struct LaplaceReleaseOutput {
  WeightedChannel channel;
  double noise_scale = 0.0;
  uint64_t seed = 0;
};

// w'_e = w_e + Laplace(noise_scale) on every pair, including weight-0 pairs.
// Throws ParameterError unless noise_scale > 0.
LaplaceReleaseOutput LaplaceRelease(const WeightedChannel& channel, double noise_scale,
                                    Rng& rng);

// Returns the channel untouched. NOT PRIVATE: exists so pipelines can be
// tested end to end without noise.
LaplaceReleaseOutput UnsafeNoiselessRelease(const WeightedChannel& channel);

enum class MergeStrategy { kSampledLp, kPerEdge };

std::string MergeStrategyName(MergeStrategy strategy);
MergeStrategy ParseMergeStrategy(const std::string& name);

struct MergeOptions {
  MergeStrategy strategy = MergeStrategy::kSampledLp;
  int constraint_budget = -1;  // -1 means 4n; 0 falls back to kPerEdge
  int iterations = 2000;
  int audit_budget = -1;  // fresh constraints for the lambda audit; -1 means 4n
};

struct MergeSolution {
  int n = 0;
  std::vector<double> x;  // triangular pair order, each in [0, 1]
  double lambda = 0.0;    // audited on a fresh constraint sample
  double training_lambda = 0.0;
  size_t constraints_checked = 0;
  MergeStrategy strategy = MergeStrategy::kSampledLp;
};

// Fractional labels x minimizing the maximum violation of
//   |x(S x T) - W+(S x T)| <= lambda  and  |(1 - x)(S x T) - W-(S x T)| <= lambda
// over a sampled family of (S, T). The per-edge strategy is the exact
// minimizer over singleton constraints: x_e = clamp((W+_e + 1 - W-_e) / 2).
MergeSolution SolveMergeLp(const WeightedChannel& w_plus, const WeightedChannel& w_minus,
                           const MergeOptions& options, Rng& rng);

// Complete unweighted graph, edge e independently positive w.p. x_e.
SignedGraph RoundToSigned(const MergeSolution& solution, Rng& rng);

struct UnweightedReleaseConfig {
  MergeOptions merge;
  // Skip the noise entirely. NOT PRIVATE; for pipeline tests only.
  bool unsafe_zero_noise = false;
};

// Throws ContractViolation unless g is complete, unweighted and simple;
// ParameterError unless epsilon > 0 and delta == 0.
std::pair<SignedGraph, ReleaseReport> ReleaseUnweighted(const SignedGraph& g,
                                                        const PrivacyParams& params,
                                                        const UnweightedReleaseConfig& config,
                                                        Rng& rng);

// Laplace scale per coordinate and channel for a given total epsilon.
double UnweightedNoiseScale(double epsilon);

}  // namespace dpcc

#endif  // DPCC_RELEASE_UNWEIGHTED_H_
