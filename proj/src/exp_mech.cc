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

#include "dpcc/exp_mech.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dpcc/partitions.h"
#include "dpcc/status.h"

namespace dpcc {
namespace {

void CheckInput(const SignedGraph& g, const PrivacyParams& params, int max_vertices) {
  Require(g.is_unweighted() && !g.parallel_ok(),
          "the exponential mechanism needs an unweighted simple graph (score sensitivity 1)");
  Require(std::isfinite(params.epsilon) && params.epsilon >= 0.0,
          "epsilon must be finite and non-negative");
  Require(params.delta == 0.0, "the exponential mechanism is pure DP; delta must be 0");
  if (g.num_vertices() > max_vertices) {
    throw Refusal("partition enumeration refuses n = " + std::to_string(g.num_vertices()) +
                  " > " + std::to_string(max_vertices));
  }
}

// Integer disagreement of every partition, by signed pair tables.
class PartitionScorer {
 public:
  explicit PartitionScorer(const SignedGraph& g) : n_(g.num_vertices()) {
    g.ForEachEdge([&](const Edge& e) {
      (e.sign == Sign::kPositive ? positive_ : negative_).push_back({e.u, e.v});
    });
  }

  int64_t Disagreement(const std::vector<int>& rgs) const {
    int64_t err = 0;
    for (const auto& [u, v] : positive_) err += rgs[u] != rgs[v];
    for (const auto& [u, v] : negative_) err += rgs[u] == rgs[v];
    return err;
  }

  int64_t total() const { return static_cast<int64_t>(positive_.size() + negative_.size()); }
  int n() const { return n_; }

 private:
  int n_;
  std::vector<std::pair<int, int>> positive_;
  std::vector<std::pair<int, int>> negative_;
};

int64_t MinDisagreement(const PartitionScorer& scorer) {
  int64_t best = std::numeric_limits<int64_t>::max();
  ForEachPartition(scorer.n(), 0, [&](const std::vector<int>& rgs) {
    best = std::min(best, scorer.Disagreement(rgs));
  });
  return best;
}

// Unnormalized weight relative to the best partition; the same for both
// objectives since they differ by a constant.
double Weight(double epsilon, int64_t err, int64_t min_err) {
  return std::exp(-epsilon * static_cast<double>(err - min_err) / 2.0);
}

uint64_t Pack(const std::vector<int>& rgs) {
  uint64_t packed = 0;
  for (size_t i = 0; i < rgs.size(); ++i) packed |= static_cast<uint64_t>(rgs[i]) << (4 * i);
  return packed;
}

std::vector<int> Unpack(uint64_t packed, int n) {
  std::vector<int> rgs(n);
  for (int i = 0; i < n; ++i) rgs[i] = static_cast<int>(packed >> (4 * i) & 0xF);
  return rgs;
}

}  // namespace

std::vector<PartitionProbability> ExactOutputDistribution(const SignedGraph& g,
                                                          const PrivacyParams& params,
                                                          Objective objective) {
  CheckInput(g, params, kExactDistributionMaxVertices);
  const PartitionScorer scorer(g);
  std::vector<PartitionProbability> out;
  std::vector<int64_t> errs;
  ForEachPartition(g.num_vertices(), 0, [&](const std::vector<int>& rgs) {
    out.push_back({Clustering::FromLabels(rgs), 0.0, 0.0, 0.0});
    errs.push_back(scorer.Disagreement(rgs));
  });
  const int64_t min_err = *std::min_element(errs.begin(), errs.end());
  // log Z = log sum exp(-eps (err - min) / 2); every term is <= 1 and the
  // best is exactly 1.
  double z = 0.0;
  for (int64_t err : errs) z += Weight(params.epsilon, err, min_err);
  const double log_z = std::log(z);
  for (size_t i = 0; i < out.size(); ++i) {
    const double err = static_cast<double>(errs[i]);
    out[i].objective = objective == Objective::kMinDis
                           ? err
                           : static_cast<double>(scorer.total()) - err;
    out[i].log_probability =
        -params.epsilon * static_cast<double>(errs[i] - min_err) / 2.0 - log_z;
    out[i].probability = std::exp(out[i].log_probability);
  }
  return out;
}

Clustering ExponentialMechanism(const SignedGraph& g, const PrivacyParams& params,
                                Objective /*objective*/, Rng& rng) {
  CheckInput(g, params, kExpMechMaxVertices);
  const PartitionScorer scorer(g);
  const int n = g.num_vertices();
  const int64_t min_err = MinDisagreement(scorer);
  double z = 0.0;
  ForEachPartition(n, 0, [&](const std::vector<int>& rgs) {
    z += Weight(params.epsilon, scorer.Disagreement(rgs), min_err);
  });
  const double target = rng.Uniform() * z;
  double cumulative = 0.0;
  std::vector<int> chosen, last;
  ForEachPartition(n, 0, [&](const std::vector<int>& rgs) {
    if (!chosen.empty()) return;
    cumulative += Weight(params.epsilon, scorer.Disagreement(rgs), min_err);
    if (cumulative > target) chosen = rgs;
    last = rgs;
  });
  return Clustering::FromLabels(chosen.empty() ? last : chosen);
}

ExpMechSampler::ExpMechSampler(const SignedGraph& g, const PrivacyParams& params,
                               Objective /*objective*/)
    : n_(g.num_vertices()) {
  CheckInput(g, params, kExpMechMaxVertices);
  const PartitionScorer scorer(g);
  std::vector<int64_t> errs;
  ForEachPartition(n_, 0, [&](const std::vector<int>& rgs) {
    partitions_.push_back(Pack(rgs));
    errs.push_back(scorer.Disagreement(rgs));
  });
  const int64_t min_err = *std::min_element(errs.begin(), errs.end());
  cumulative_.resize(errs.size());
  double cumulative = 0.0;
  for (size_t i = 0; i < errs.size(); ++i) {
    cumulative += Weight(params.epsilon, errs[i], min_err);
    cumulative_[i] = cumulative;
  }
}

Clustering ExpMechSampler::Sample(Rng& rng) const {
  const double target = rng.Uniform() * cumulative_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
  if (it == cumulative_.end()) --it;
  return Clustering::FromLabels(Unpack(partitions_[it - cumulative_.begin()], n_));
}

double ExpectedObjective(const std::vector<PartitionProbability>& distribution) {
  double sum = 0.0;
  for (const PartitionProbability& p : distribution) sum += p.probability * p.objective;
  return sum;
}

}  // namespace dpcc
