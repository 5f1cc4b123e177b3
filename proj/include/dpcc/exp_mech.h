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

// Exponential mechanism over all partitions of a small unweighted graph.
//
// A partition C is drawn with probability proportional to
// exp(-epsilon * err(C, G) / 2) (MinDis) or exp(epsilon * agr(C, G) / 2)
// (MaxAgr). One sign flip changes every err and agr by exactly 1, so the
// mechanism is epsilon-DP. Since agr = W - err both objectives define the
// same distribution. Weights are handled in log space.

#ifndef DPCC_EXP_MECH_H_
#define DPCC_EXP_MECH_H_

#include <cstdint>
#include <vector>

#include "dpcc/graph.h"
#include "dpcc/rng.h"
#include "dpcc/solvers.h"

namespace dpcc {

inline constexpr int kExpMechMaxVertices = 12;
inline constexpr int kExactDistributionMaxVertices = 10;

struct PartitionProbability {
  Clustering clustering;
  double objective = 0.0;  // err or agr
  double log_probability = 0.0;
  double probability = 0.0;
};

// Every partition with its probability, in lexicographic order of the
// restricted growth string. epsilon may be 0 (uniform). Throws Refusal when
// n > kExactDistributionMaxVertices and ContractViolation unless g is
// unweighted and simple, epsilon >= 0 is finite and delta == 0.
std::vector<PartitionProbability> ExactOutputDistribution(const SignedGraph& g,
                                                          const PrivacyParams& params,
                                                          Objective objective);

// One draw by streaming over all partitions three times: for the smallest
// err, for the normalizer Z and to locate u * Z for one uniform u. Throws
// Refusal when n > kExpMechMaxVertices.
Clustering ExponentialMechanism(const SignedGraph& g, const PrivacyParams& params,
                                Objective objective, Rng& rng);

// Precomputed cumulative weights for repeated draws from one graph. Draws
// the same partitions as ExponentialMechanism for the same generator state.
class ExpMechSampler {
 public:
  ExpMechSampler(const SignedGraph& g, const PrivacyParams& params, Objective objective);

  Clustering Sample(Rng& rng) const;
  size_t num_partitions() const { return cumulative_.size(); }

 private:
  int n_ = 0;
  std::vector<double> cumulative_;
  std::vector<uint64_t> partitions_;  // 4 bits per vertex
};

// sum over the distribution of probability * objective.
double ExpectedObjective(const std::vector<PartitionProbability>& distribution);

}  // namespace dpcc

#endif  // DPCC_EXP_MECH_H_
