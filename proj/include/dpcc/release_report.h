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

#ifndef DPCC_RELEASE_REPORT_H_
#define DPCC_RELEASE_REPORT_H_

#include <cstddef>
#include <cstdint>
#include <string>

#include "json.hpp"

namespace dpcc {

// Audit metadata accompanying a released graph.
struct ReleaseReport {
  std::string mechanism;
  double epsilon = 0.0;
  double delta = 0.0;
  double epsilon_per_channel = 0.0;
  double delta_per_channel = 0.0;
  double noise_scale = 0.0;  // Laplace scale per pair and channel
  std::string merge_strategy;
  // Postprocessing residual: maximum cut-sum violation over a freshly
  // sampled constraint family (0 when the mechanism has no such step).
  double lambda = 0.0;
  double training_lambda = 0.0;
  size_t constraints_checked = 0;
  double advertised_error = 0.0;  // per-channel cut-distance bound, if any
  uint64_t seed = 0;
  bool unsafe_zero_noise = false;

  nlohmann::json ToJson() const;
  // The short audit record {lambda, constraints_checked, seed}.
  nlohmann::json AuditJson() const;
};

}  // namespace dpcc

#endif  // DPCC_RELEASE_REPORT_H_
