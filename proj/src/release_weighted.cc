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

#include "dpcc/release_weighted.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

#include "dpcc/status.h"

namespace dpcc {
namespace {

enum Stream : uint64_t {
  kPlus = 0,
  kMinus = 1,
  kFit = 2,
};

std::mutex& RegistryMutex() {
  static std::mutex mu;
  return mu;
}

std::map<std::string, CutReleaserFactory>& Registry() {
  static std::map<std::string, CutReleaserFactory> registry;
  return registry;
}

// Every (S, T) pair, via per-subset prefix sums. 4^n work.
double ExhaustiveCutDistance(const PairMatrix& d) {
  const int n = d.n();
  const size_t subsets = size_t{1} << n;
  // inner[B] = sum over pairs inside B.
  std::vector<double> inner(subsets, 0.0);
  for (size_t b = 1; b < subsets; ++b) {
    const int low = std::countr_zero(b);
    const size_t rest = b & (b - 1);
    double add = 0.0;
    for (int v = 0; v < n; ++v) {
      if (rest >> v & 1) add += d.at(low, v);
    }
    inner[b] = inner[rest] + add;
  }
  std::vector<double> row_sum(n), t_sum(subsets);
  double best = 0.0;
  for (size_t s = 1; s < subsets; ++s) {
    std::fill(row_sum.begin(), row_sum.end(), 0.0);
    for (int u = 0; u < n; ++u) {
      if (!(s >> u & 1)) continue;
      const double* row = d.row(u);
      for (int v = 0; v < n; ++v) row_sum[v] += row[v];
    }
    t_sum[0] = 0.0;
    for (size_t t = 1; t < subsets; ++t) {
      t_sum[t] = t_sum[t & (t - 1)] + row_sum[std::countr_zero(t)];
      // Ordered sum counts pairs inside S ∩ T twice.
      best = std::max(best, std::abs(t_sum[t] - inner[s & t]));
    }
  }
  return best;
}

}  // namespace

void CutReleaser::ValidateBudget(const PrivacyParams& params) const {
  if (!(params.epsilon > 0.0) || params.epsilon > 0.5) {
    throw ParameterError("epsilon must lie in (0, 1/2] for the weighted release");
  }
  if (!(params.delta >= 0.0) || params.delta > 0.5) {
    throw ParameterError("delta must lie in [0, 1/2] for the weighted release");
  }
  if (RequiresDelta() && params.delta == 0.0) {
    throw ParameterError("engine '" + name() + "' needs delta > 0");
  }
}

LaplaceCutReleaser::LaplaceCutReleaser(PostProcess post, CutFitOptions fit)
    : post_(post), fit_(fit) {}

std::string LaplaceCutReleaser::name() const {
  return post_ == PostProcess::kClip ? "laplace-clip" : "laplace";
}

double LaplaceCutReleaser::NoiseScale(const PrivacyParams& channel_params) const {
  return 2.0 / channel_params.epsilon;
}

WeightedChannel LaplaceCutReleaser::ReleaseRaw(const WeightedChannel& channel,
                                               const PrivacyParams& channel_params,
                                               Rng& rng) const {
  if (!(channel_params.epsilon > 0.0) || !std::isfinite(channel_params.epsilon)) {
    throw ParameterError("channel epsilon must be positive and finite");
  }
  for (double w : channel.values()) Require(w >= 0.0, "channel weights must be non-negative");
  const double scale = NoiseScale(channel_params);
  WeightedChannel out = channel;
  for (double& w : out.mutable_values()) w += rng.Laplace(scale);
  return out;
}

WeightedChannel LaplaceCutReleaser::Release(const WeightedChannel& channel,
                                            const PrivacyParams& channel_params,
                                            Rng& rng) const {
  Rng fit_rng = rng.Stream(kFit);
  const WeightedChannel raw = ReleaseRaw(channel, channel_params, rng);
  std::vector<double> clipped = raw.values();
  for (double& w : clipped) w = std::max(w, 0.0);
  const int n = raw.num_vertices();
  if (post_ == PostProcess::kClip || n < 2) return WeightedChannel(n, std::move(clipped));

  CutFitProblem problem{n, {raw}, 0.0, std::numeric_limits<double>::infinity()};
  CutFitOptions fit = fit_;
  if (fit.constraint_budget <= 0) fit.constraint_budget = 4 * n;
  CutFitResult result = FitCutSums(problem, std::move(clipped), fit, fit_rng);
  return WeightedChannel(n, std::move(result.x));
}

double LaplaceCutReleaser::AdvertisedError(int n, double /*m*/,
                                           const PrivacyParams& channel_params) const {
  const double b = NoiseScale(channel_params);
  const double pairs = static_cast<double>(NumPairs(n));
  return 2.0 * b * std::sqrt(2.0 * pairs * (n * std::log(4.0) + std::log(40.0)));
}

void RegisterCutReleaser(const std::string& name, CutReleaserFactory factory) {
  Require(!name.empty(), "engine name must be non-empty");
  std::lock_guard<std::mutex> lock(RegistryMutex());
  Registry()[name] = std::move(factory);
}

std::unique_ptr<CutReleaser> MakeCutReleaser(const std::string& name) {
  if (name == "laplace") return std::make_unique<LaplaceCutReleaser>();
  if (name == "laplace-clip") {
    return std::make_unique<LaplaceCutReleaser>(LaplaceCutReleaser::PostProcess::kClip);
  }
  if (name == "zero-noise-test") return std::make_unique<ZeroNoiseTestReleaser>();
  const std::string prefix = "external:";
  if (name.rfind(prefix, 0) == 0) {
    std::lock_guard<std::mutex> lock(RegistryMutex());
    auto it = Registry().find(name.substr(prefix.size()));
    if (it != Registry().end()) return it->second();
  }
  throw ContractViolation("unknown release engine '" + name + "'");
}

SignedGraph CombineChannels(const WeightedChannel& plus, const WeightedChannel& minus) {
  const int n = plus.num_vertices();
  Require(minus.num_vertices() == n, "channels are on different vertex sets");
  std::vector<Edge> edges;
  size_t idx = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v, ++idx) {
      const double p = plus.values()[idx];
      const double q = minus.values()[idx];
      Require(p >= 0.0 && q >= 0.0, "combined channels must be non-negative");
      if (p > 0.0) edges.push_back({u, v, p, Sign::kPositive});
      if (q > 0.0) edges.push_back({u, v, q, Sign::kNegative});
    }
  }
  return SignedGraph(n, std::move(edges), {.complete = false, .parallel_ok = true});
}

std::pair<SignedGraph, ReleaseReport> ReleaseWeighted(const SignedGraph& g,
                                                      const PrivacyParams& params,
                                                      const CutReleaser& engine, Rng& rng) {
  engine.ValidateBudget(params);
  const int n = g.num_vertices();
  const PrivacyParams channel_params{params.epsilon / 2.0, params.delta / 2.0};
  Rng call_rng(rng.Next());

  ReleaseReport report;
  report.mechanism = "weighted-" + engine.name();
  report.epsilon = params.epsilon;
  report.delta = params.delta;
  report.epsilon_per_channel = channel_params.epsilon;
  report.delta_per_channel = channel_params.delta;
  report.noise_scale = engine.NoiseScale(channel_params);
  report.advertised_error = engine.AdvertisedError(n, g.total_weight(), channel_params);
  report.seed = call_rng.seed();
  report.unsafe_zero_noise = engine.name() == "zero-noise-test";

  const WeightedChannel g_plus = WeightedChannel::FromGraph(g, Sign::kPositive);
  const WeightedChannel g_minus = WeightedChannel::FromGraph(g, Sign::kNegative);
  Rng plus_rng = call_rng.Stream(kPlus);
  Rng minus_rng = call_rng.Stream(kMinus);
  const WeightedChannel h_plus = engine.Release(g_plus, channel_params, plus_rng);
  const WeightedChannel h_minus = engine.Release(g_minus, channel_params, minus_rng);
  return {CombineChannels(h_plus, h_minus), report};
}

double SampledCutDistance(const WeightedChannel& a, const WeightedChannel& b, int samples,
                          Rng& rng) {
  CutDistanceOptions options;
  options.samples = samples;
  return SampledCutDistance(a, b, options, rng);
}

double SampledCutDistance(const WeightedChannel& a, const WeightedChannel& b,
                          const CutDistanceOptions& options, Rng& rng) {
  Require(options.samples > 0, "cut distance needs at least one sample");
  const int n = a.num_vertices();
  Require(b.num_vertices() == n, "cut distance between different vertex sets");
  if (n < 2) return 0.0;
  std::vector<double> diff(a.num_pairs());
  for (size_t e = 0; e < diff.size(); ++e) diff[e] = a.values()[e] - b.values()[e];
  const PairMatrix d(n, diff);
  if (n <= options.exhaustive_max_vertices) return ExhaustiveCutDistance(d);

  struct Start {
    double value;
    CutConstraint c;
  };
  std::vector<Start> starts;

  // Every singleton pair, exactly.
  double best = 0.0;
  int best_u = 0, best_v = 1;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (std::abs(d.at(u, v)) > best) {
        best = std::abs(d.at(u, v));
        best_u = u;
        best_v = v;
      }
    }
  }
  {
    CutConstraint c{std::vector<char>(n, 0), std::vector<char>(n, 0)};
    c.in_s[best_u] = 1;
    c.in_t[best_v] = 1;
    starts.push_back({d.at(best_u, best_v), std::move(c)});
  }
  for (CutConstraint& c : SampleCutConstraints(n, options.samples, options.samples, rng)) {
    const double value = d.PairSetSum(c);
    best = std::max(best, std::abs(value));
    starts.push_back({value, std::move(c)});
  }
  const size_t ascents = std::min<size_t>(starts.size(), std::max(options.ascent_starts, 1));
  std::partial_sort(starts.begin(), starts.begin() + ascents, starts.end(),
                    [](const Start& x, const Start& y) {
                      return std::abs(x.value) > std::abs(y.value);
                    });
  for (size_t i = 0; i < ascents; ++i) {
    CutConstraint c = starts[i].c;
    const double sign = starts[i].value < 0 ? -1.0 : 1.0;
    best = std::max(best, std::abs(AscendCutSum(d, c, sign)));
  }
  return best;
}

}  // namespace dpcc
