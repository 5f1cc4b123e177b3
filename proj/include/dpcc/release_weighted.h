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

// (epsilon, delta)-DP release of weighted or incomplete signed graphs.
//
// The positive and negative channels are released separately by a
// cut-preserving engine with half the budget each and recombined into a
// double-edged graph: every pair may carry one positive and one negative
// edge. For any clustering C with k clusters,
//   |err(C, G) - err(C, H)| <= k (d_cut(G+, H+) + d_cut(G-, H-)),
// so the engine's cut-distance bound carries over to clustering costs.

#ifndef DPCC_RELEASE_WEIGHTED_H_
#define DPCC_RELEASE_WEIGHTED_H_

#include <functional>
#include <memory>
#include <string>
#include <utility>

#include "dpcc/cut_fit.h"
#include "dpcc/graph.h"
#include "dpcc/release_report.h"
#include "dpcc/rng.h"

namespace dpcc {

// Releases one non-negative weight channel under a per-channel budget.
class CutReleaser {
 public:
  virtual ~CutReleaser() = default;

  virtual std::string name() const = 0;
  // Output weights are always >= 0.
  virtual WeightedChannel Release(const WeightedChannel& channel,
                                  const PrivacyParams& channel_params, Rng& rng) const = 0;
  // Bound on the cut distance between input and output for graphs on n
  // vertices with total weight m.
  virtual double AdvertisedError(int n, double m, const PrivacyParams& channel_params) const = 0;
  virtual double NoiseScale(const PrivacyParams& /*channel_params*/) const { return 0.0; }
  virtual bool RequiresDelta() const { return false; }
  // Admissible total budget: epsilon in (0, 1/2], delta in [0, 1/2], and
  // delta > 0 for engines that need it. Throws ParameterError otherwise.
  virtual void ValidateBudget(const PrivacyParams& params) const;
};

// Per-pair Laplace noise followed by a post-processing step that makes the
// weights non-negative. A channel moves by at most 2 in L1 between
// neighboring graphs, so the scale is 2 / channel_epsilon.
//
// kClip clips at 0. Clipping biases every weight-0 pair upwards by
// scale / 2 on average. kCutFit starts from the clipped weights and refits
// them, within [0, inf), to the cut sums of the raw noisy channel with the
// sampled-constraint solver, removing that bias. Both are post-processing.
class LaplaceCutReleaser : public CutReleaser {
 public:
  enum class PostProcess { kClip, kCutFit };

  explicit LaplaceCutReleaser(PostProcess post = PostProcess::kCutFit,
                              CutFitOptions fit = {});

  std::string name() const override;
  WeightedChannel Release(const WeightedChannel& channel, const PrivacyParams& channel_params,
                          Rng& rng) const override;
  // Noisy channel before post-processing; may be negative. Unbiased.
  WeightedChannel ReleaseRaw(const WeightedChannel& channel,
                             const PrivacyParams& channel_params, Rng& rng) const;
  // 2 b sqrt(2 N (n ln 4 + ln 40)) with b the Laplace scale and N = C(n,2):
  // a sub-exponential tail for one Laplace sum, union bounded over all 4^n
  // set pairs at confidence 0.95. Of order n^{3/2} / epsilon.
  double AdvertisedError(int n, double m, const PrivacyParams& channel_params) const override;
  double NoiseScale(const PrivacyParams& channel_params) const override;

 private:
  PostProcess post_;
  CutFitOptions fit_;
};

// Returns the channel unchanged. NOT PRIVATE; for tests only.
class ZeroNoiseTestReleaser : public CutReleaser {
 public:
  std::string name() const override { return "zero-noise-test"; }
  WeightedChannel Release(const WeightedChannel& channel, const PrivacyParams&,
                          Rng&) const override {
    return channel;
  }
  double AdvertisedError(int, double, const PrivacyParams&) const override { return 0.0; }
};

using CutReleaserFactory = std::function<std::unique_ptr<CutReleaser>()>;

// Makes an engine available as "external:<name>".
void RegisterCutReleaser(const std::string& name, CutReleaserFactory factory);

// "laplace", "laplace-clip", "zero-noise-test" or "external:<name>".
// Throws ContractViolation for unknown names.
std::unique_ptr<CutReleaser> MakeCutReleaser(const std::string& name);

// Output graph has parallel_ok set; each pair carries at most one edge per
// sign. Throws ParameterError if the budget is outside the engine's range.
std::pair<SignedGraph, ReleaseReport> ReleaseWeighted(const SignedGraph& g,
                                                      const PrivacyParams& params,
                                                      const CutReleaser& engine, Rng& rng);

// Combines a positive and a negative non-negative channel into one
// double-edged graph.
SignedGraph CombineChannels(const WeightedChannel& plus, const WeightedChannel& minus);

struct CutDistanceOptions {
  int samples = 256;
  // Greedy ascents started from the best singleton and the best samples.
  int ascent_starts = 8;
  // Up to this many vertices all 4^n set pairs are enumerated instead.
  int exhaustive_max_vertices = 10;
};

// Lower bound on d_cut(A, B) = max_{S,T} |A(S x T) - B(S x T)|: the maximum
// over every singleton pair, `samples` random (S, T) pairs and `samples`
// random cuts (S, V \ S), the best few of them then improved by greedy
// single-vertex toggles of S or T membership. Exact on small vertex sets.
// Throws ContractViolation if samples <= 0 or the vertex sets differ.
double SampledCutDistance(const WeightedChannel& a, const WeightedChannel& b, int samples,
                          Rng& rng);
double SampledCutDistance(const WeightedChannel& a, const WeightedChannel& b,
                          const CutDistanceOptions& options, Rng& rng);

}  // namespace dpcc

#endif  // DPCC_RELEASE_WEIGHTED_H_
