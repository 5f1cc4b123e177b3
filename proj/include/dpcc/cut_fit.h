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

// Cut constraints over pair weights and a projected subgradient solver that
// fits box-constrained pair weights to the cut sums of one or more target
// channels:
//
//   minimize  lambda
//   s.t.      |sum_{e in S x T} x_e - sum_{e in S x T} target_j(e)| <= lambda
//             for every target j and every (S, T) in a sampled family,
//             lower <= x_e <= upper.
//
// S x T denotes the unordered pairs {u, v}, u != v, with u in S and v in T
// or u in T and v in S, each counted once. The family always includes every
// singleton pair ({u}, {v}).

#ifndef DPCC_CUT_FIT_H_
#define DPCC_CUT_FIT_H_

#include <cstdint>
#include <limits>
#include <vector>

#include "dpcc/graph.h"
#include "dpcc/rng.h"

namespace dpcc {

struct CutConstraint {
  std::vector<char> in_s;
  std::vector<char> in_t;

  // Number of unordered pairs covered: |S||T| - |S∩T|(|S∩T|+1)/2.
  int64_t NumPairs() const;
};

// Symmetric n x n matrix with zero diagonal holding one value per pair.
class PairMatrix {
 public:
  PairMatrix() = default;
  explicit PairMatrix(const WeightedChannel& channel);
  PairMatrix(int n, const std::vector<double>& triangle);

  int n() const { return n_; }
  double at(int u, int v) const { return data_[static_cast<size_t>(u) * n_ + v]; }
  void set(int u, int v, double value) {
    data_[static_cast<size_t>(u) * n_ + v] = value;
    data_[static_cast<size_t>(v) * n_ + u] = value;
  }
  const double* row(int u) const { return data_.data() + static_cast<size_t>(u) * n_; }

  // Sum over the pairs of c.
  double PairSetSum(const CutConstraint& c) const;

  std::vector<double> Triangle() const;

 private:
  int n_ = 0;
  std::vector<double> data_;
};

// `random_pairs` random (S, T) pairs, alternating between independent
// (overlapping) halves and disjoint three-way splits, plus `random_cuts`
// cuts (S, V \ S) for uniformly random S. Constraints covering no pair are
// redrawn.
std::vector<CutConstraint> SampleCutConstraints(int n, int random_pairs,
                                                int random_cuts, Rng& rng);

// Greedy single-vertex toggles of S and T membership while they increase
// sign * d(S x T), starting from c. Leaves the final sets in c and returns
// d(S x T) for them.
double AscendCutSum(const PairMatrix& d, CutConstraint& c, double sign);

struct CutFitOptions {
  int constraint_budget = 0;  // random (S,T) pairs, and again random cuts
  int iterations = 2000;
  // Constraints re-evaluated every iteration; the whole family is
  // re-evaluated every refresh_every iterations.
  int working_set = 32;
  int refresh_every = 50;
  // At every full evaluation, this many random starts per target and sign
  // are pushed uphill on the residual |x - target| by AscendCutSum and the
  // resulting constraints are added to the family. 0 keeps the family fixed.
  int separation_starts = 2;
};

struct CutFitResult {
  std::vector<double> x;  // triangular order, in [lower, upper]
  double training_violation = 0.0;
  int iterations_run = 0;
  size_t family_size = 0;  // singletons + sampled constraints
};

struct CutFitProblem {
  int n = 0;
  std::vector<WeightedChannel> targets;
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
};

// Projected subgradient descent on the maximum violation over a sampled
// family, started from `initial` (clamped into the box). Each step moves the
// pairs of the currently most violated constraint by |r| / (|c| sqrt(t))
// towards feasibility, where r is the signed residual and |c| the number of
// pairs covered, then projects onto the box. The best iterate seen at a
// full evaluation is returned.
CutFitResult FitCutSums(const CutFitProblem& problem, std::vector<double> initial,
                        const CutFitOptions& options, Rng& rng);

struct ViolationAudit {
  double max_violation = 0.0;
  size_t constraints_checked = 0;
};

// Maximum violation of x against the targets over every singleton pair and
// a freshly sampled family of `budget` random pairs and `budget` cuts.
ViolationAudit AuditCutViolation(const CutFitProblem& problem,
                                 const std::vector<double>& x, int budget, Rng& rng);

}  // namespace dpcc

#endif  // DPCC_CUT_FIT_H_
