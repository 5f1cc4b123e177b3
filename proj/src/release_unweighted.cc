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

#include "dpcc/release_unweighted.h"

#include <algorithm>
#include <cmath>

#include "dpcc/cut_fit.h"
#include "dpcc/status.h"

namespace dpcc {
namespace {

// Child streams of one release call.
enum Stream : uint64_t {
  kNoisePlus = 0,
  kNoiseMinus = 1,
  kMergeFamily = 2,
  kMergeAudit = 3,
  kRounding = 4,
};

int DefaultBudget(int requested, int n) { return requested < 0 ? 4 * n : requested; }

}  // namespace

nlohmann::json ReleaseReport::ToJson() const {
  return {
      {"mechanism", mechanism},
      {"epsilon", epsilon},
      {"delta", delta},
      {"epsilon_per_channel", epsilon_per_channel},
      {"delta_per_channel", delta_per_channel},
      {"noise_scale", noise_scale},
      {"merge_strategy", merge_strategy},
      {"lambda", lambda},
      {"training_lambda", training_lambda},
      {"constraints_checked", constraints_checked},
      {"advertised_error", advertised_error},
      {"seed", seed},
      {"unsafe_zero_noise", unsafe_zero_noise},
  };
}

nlohmann::json ReleaseReport::AuditJson() const {
  return {{"lambda", lambda}, {"constraints_checked", constraints_checked}, {"seed", seed}};
}

LaplaceReleaseOutput LaplaceRelease(const WeightedChannel& channel, double noise_scale,
                                    Rng& rng) {
  if (!(noise_scale > 0) || !std::isfinite(noise_scale)) {
    throw ParameterError("Laplace noise scale must be positive and finite");
  }
  LaplaceReleaseOutput out{channel, noise_scale, rng.seed()};
  for (double& w : out.channel.mutable_values()) w += rng.Laplace(noise_scale);
  return out;
}

LaplaceReleaseOutput UnsafeNoiselessRelease(const WeightedChannel& channel) {
  return {channel, 0.0, 0};
}

std::string MergeStrategyName(MergeStrategy strategy) {
  return strategy == MergeStrategy::kSampledLp ? "sampled-lp" : "per-edge";
}

MergeStrategy ParseMergeStrategy(const std::string& name) {
  if (name == "sampled-lp") return MergeStrategy::kSampledLp;
  if (name == "per-edge") return MergeStrategy::kPerEdge;
  throw ContractViolation("unknown merge strategy '" + name + "'");
}

MergeSolution SolveMergeLp(const WeightedChannel& w_plus, const WeightedChannel& w_minus,
                           const MergeOptions& options, Rng& rng) {
  const int n = w_plus.num_vertices();
  Require(w_minus.num_vertices() == n, "merge channels are on different vertex sets");
  const int budget = DefaultBudget(options.constraint_budget, n);
  const int audit_budget = DefaultBudget(options.audit_budget, n);

  MergeSolution solution;
  solution.n = n;
  solution.strategy = budget == 0 ? MergeStrategy::kPerEdge : options.strategy;

  // The positive channel asks for x, the negative one for 1 - x; both are
  // expressed as targets for x.
  CutFitProblem problem{n, {w_plus, WeightedChannel(n)}, 0.0, 1.0};
  auto& complement = problem.targets[1].mutable_values();
  for (size_t e = 0; e < complement.size(); ++e) complement[e] = 1.0 - w_minus.values()[e];

  // Midpoint of the two singleton targets, clamped: the exact singleton-LP
  // optimum and the starting point of the descent.
  std::vector<double> per_edge(w_plus.num_pairs());
  for (size_t e = 0; e < per_edge.size(); ++e) {
    per_edge[e] = std::clamp((w_plus.values()[e] + 1.0 - w_minus.values()[e]) / 2.0, 0.0, 1.0);
  }

  Rng family_rng = rng.Stream(kMergeFamily);
  if (solution.strategy == MergeStrategy::kPerEdge) {
    solution.x = std::move(per_edge);
  } else {
    CutFitOptions fit;
    fit.constraint_budget = budget;
    fit.iterations = options.iterations;
    CutFitResult result = FitCutSums(problem, std::move(per_edge), fit, family_rng);
    solution.x = std::move(result.x);
    solution.training_lambda = result.training_violation;
  }
  Rng audit_rng = rng.Stream(kMergeAudit);
  const ViolationAudit audit = AuditCutViolation(problem, solution.x, audit_budget, audit_rng);
  solution.lambda = audit.max_violation;
  solution.constraints_checked = audit.constraints_checked;
  if (solution.strategy == MergeStrategy::kPerEdge) {
    solution.training_lambda = solution.lambda;
  }
  return solution;
}

SignedGraph RoundToSigned(const MergeSolution& solution, Rng& rng) {
  Require(solution.x.size() == NumPairs(solution.n), "merge solution has the wrong size");
  std::vector<bool> positive(solution.x.size());
  for (size_t e = 0; e < positive.size(); ++e) {
    const double p = solution.x[e];
    Require(p >= 0 && p <= 1, "merge solution outside [0, 1]");
    positive[e] = rng.Bernoulli(p);
  }
  return SignedGraph::CompleteUnweighted(solution.n, positive);
}

double UnweightedNoiseScale(double epsilon) { return 2.0 / epsilon; }

std::pair<SignedGraph, ReleaseReport> ReleaseUnweighted(const SignedGraph& g,
                                                        const PrivacyParams& params,
                                                        const UnweightedReleaseConfig& config,
                                                        Rng& rng) {
  params.Validate(/*pure=*/true);
  Require(g.is_complete() && g.is_unweighted() && !g.parallel_ok(),
          "the unweighted release needs a complete, unweighted, simple graph");
  Rng call_rng(rng.Next());
  ReleaseReport report;
  report.mechanism = "unweighted-laplace";
  report.epsilon = params.epsilon;
  report.epsilon_per_channel = params.epsilon / 2.0;
  report.seed = call_rng.seed();
  report.unsafe_zero_noise = config.unsafe_zero_noise;

  const WeightedChannel g_plus = WeightedChannel::FromGraph(g, Sign::kPositive);
  const WeightedChannel g_minus = WeightedChannel::FromGraph(g, Sign::kNegative);
  LaplaceReleaseOutput h_plus, h_minus;
  if (config.unsafe_zero_noise) {
    h_plus = UnsafeNoiselessRelease(g_plus);
    h_minus = UnsafeNoiselessRelease(g_minus);
  } else {
    report.noise_scale = UnweightedNoiseScale(params.epsilon);
    Rng plus_rng = call_rng.Stream(kNoisePlus);
    Rng minus_rng = call_rng.Stream(kNoiseMinus);
    h_plus = LaplaceRelease(g_plus, report.noise_scale, plus_rng);
    h_minus = LaplaceRelease(g_minus, report.noise_scale, minus_rng);
  }

  // Everything below sees only the noisy channels.
  const MergeSolution merged = SolveMergeLp(h_plus.channel, h_minus.channel, config.merge,
                                            call_rng);
  report.merge_strategy = MergeStrategyName(merged.strategy);
  report.lambda = merged.lambda;
  report.training_lambda = merged.training_lambda;
  report.constraints_checked = merged.constraints_checked;
  Rng rounding_rng = call_rng.Stream(kRounding);
  return {RoundToSigned(merged, rounding_rng), report};
}

}  // namespace dpcc
