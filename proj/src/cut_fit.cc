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

#include "dpcc/cut_fit.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dpcc/status.h"

namespace dpcc {
namespace {

double Dot(const double* a, const double* b, int n) {
  double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
  int i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += a[i] * b[i];
    s1 += a[i + 1] * b[i + 1];
    s2 += a[i + 2] * b[i + 2];
    s3 += a[i + 3] * b[i + 3];
  }
  for (; i < n; ++i) s0 += a[i] * b[i];
  return (s0 + s1) + (s2 + s3);
}

struct Violation {
  double magnitude = -1.0;
  double residual = 0.0;  // fitted sum minus target sum
  int constraint = -1;    // index into the sampled family, or -1 for a pair
  size_t pair = 0;
};

// Largest |x_e - target_j(e)| over all pairs and targets.
Violation SingletonViolation(const PairMatrix& x,
                             const std::vector<WeightedChannel>& targets) {
  Violation best;
  const int n = x.n();
  size_t idx = 0;
  for (int u = 0; u < n; ++u) {
    const double* row = x.row(u);
    for (int v = u + 1; v < n; ++v, ++idx) {
      for (const WeightedChannel& target : targets) {
        const double r = row[v] - target.values()[idx];
        if (std::abs(r) > best.magnitude) {
          best = {std::abs(r), r, -1, idx};
        }
      }
    }
  }
  return best;
}

double Clamp(double value, double lower, double upper) {
  return std::min(std::max(value, lower), upper);
}

}  // namespace

int64_t CutConstraint::NumPairs() const {
  int64_t s = 0, t = 0, b = 0;
  for (size_t v = 0; v < in_s.size(); ++v) {
    s += in_s[v];
    t += in_t[v];
    b += in_s[v] && in_t[v];
  }
  return s * t - b * (b + 1) / 2;
}

PairMatrix::PairMatrix(const WeightedChannel& channel)
    : PairMatrix(channel.num_vertices(), channel.values()) {}

PairMatrix::PairMatrix(int n, const std::vector<double>& triangle)
    : n_(n), data_(static_cast<size_t>(n) * n, 0.0) {
  Require(triangle.size() == dpcc::NumPairs(n), "pair vector size must be C(n,2)");
  size_t idx = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) set(u, v, triangle[idx++]);
  }
}

double PairMatrix::PairSetSum(const CutConstraint& c) const {
  std::vector<double> t_mask(n_), b_mask(n_);
  for (int v = 0; v < n_; ++v) {
    t_mask[v] = c.in_t[v] ? 1.0 : 0.0;
    b_mask[v] = (c.in_s[v] && c.in_t[v]) ? 1.0 : 0.0;
  }
  double cross = 0.0, inner = 0.0;
  for (int u = 0; u < n_; ++u) {
    if (c.in_s[u]) cross += Dot(row(u), t_mask.data(), n_);
    if (b_mask[u] != 0.0) inner += Dot(row(u), b_mask.data(), n_);
  }
  return cross - 0.5 * inner;
}

std::vector<double> PairMatrix::Triangle() const {
  std::vector<double> out;
  out.reserve(dpcc::NumPairs(n_));
  for (int u = 0; u < n_; ++u) {
    for (int v = u + 1; v < n_; ++v) out.push_back(at(u, v));
  }
  return out;
}

double AscendCutSum(const PairMatrix& d, CutConstraint& c, double sign) {
  const int n = d.n();
  Require(static_cast<int>(c.in_s.size()) == n && static_cast<int>(c.in_t.size()) == n,
          "constraint has the wrong vertex count");
  std::vector<char>& s = c.in_s;
  std::vector<char>& t = c.in_t;
  // ds[x] = d({x}, S) summed over S, and likewise for T and S∩T.
  std::vector<double> ds(n, 0.0), dt(n, 0.0), db(n, 0.0);
  for (int x = 0; x < n; ++x) {
    const double* row = d.row(x);
    for (int v = 0; v < n; ++v) {
      if (s[v]) ds[x] += row[v];
      if (t[v]) dt[x] += row[v];
      if (s[v] && t[v]) db[x] += row[v];
    }
  }
  double value = d.PairSetSum(c);
  const double tolerance = 1e-12 * (1.0 + std::abs(value));
  for (int step = 0; step < 20 * n; ++step) {
    double best_gain = tolerance;
    int best_vertex = -1;
    bool best_in_s = false;
    for (int x = 0; x < n; ++x) {
      const double delta_s = s[x] ? -1.0 : 1.0;
      const double gain_s = sign * delta_s * (dt[x] - (t[x] ? db[x] : 0.0));
      if (gain_s > best_gain) {
        best_gain = gain_s;
        best_vertex = x;
        best_in_s = true;
      }
      const double delta_t = t[x] ? -1.0 : 1.0;
      const double gain_t = sign * delta_t * (ds[x] - (s[x] ? db[x] : 0.0));
      if (gain_t > best_gain) {
        best_gain = gain_t;
        best_vertex = x;
        best_in_s = false;
      }
    }
    if (best_vertex < 0) break;
    const int x = best_vertex;
    const double* row = d.row(x);
    if (best_in_s) {
      const double delta = s[x] ? -1.0 : 1.0;
      s[x] = !s[x];
      for (int v = 0; v < n; ++v) ds[v] += delta * row[v];
      if (t[x]) {
        for (int v = 0; v < n; ++v) db[v] += delta * row[v];
      }
    } else {
      const double delta = t[x] ? -1.0 : 1.0;
      t[x] = !t[x];
      for (int v = 0; v < n; ++v) dt[v] += delta * row[v];
      if (s[x]) {
        for (int v = 0; v < n; ++v) db[v] += delta * row[v];
      }
    }
    value += sign * best_gain;
  }
  return value;
}

std::vector<CutConstraint> SampleCutConstraints(int n, int random_pairs,
                                                int random_cuts, Rng& rng) {
  std::vector<CutConstraint> out;
  if (n < 2) return out;
  out.reserve(random_pairs + random_cuts);
  auto draw = [&](int kind) {
    while (true) {
      CutConstraint c{std::vector<char>(n, 0), std::vector<char>(n, 0)};
      for (int v = 0; v < n; ++v) {
        if (kind == 0) {  // independent halves, may overlap
          const uint64_t bits = rng.Next();
          c.in_s[v] = bits & 1;
          c.in_t[v] = (bits >> 1) & 1;
        } else if (kind == 1) {  // disjoint: S, T or neither
          const uint64_t which = rng.UniformIndex(3);
          c.in_s[v] = which == 0;
          c.in_t[v] = which == 1;
        } else {  // cut (S, V \ S)
          c.in_s[v] = rng.Next() & 1;
          c.in_t[v] = !c.in_s[v];
        }
      }
      if (c.NumPairs() > 0) return c;
    }
  };
  for (int i = 0; i < random_pairs; ++i) out.push_back(draw(i % 2));
  for (int i = 0; i < random_cuts; ++i) out.push_back(draw(2));
  return out;
}

CutFitResult FitCutSums(const CutFitProblem& problem, std::vector<double> initial,
                        const CutFitOptions& options, Rng& rng) {
  const int n = problem.n;
  Require(!problem.targets.empty(), "cut fitting needs at least one target");
  for (const WeightedChannel& t : problem.targets) {
    Require(t.num_vertices() == n, "target channel has the wrong vertex count");
  }
  Require(initial.size() == NumPairs(n), "initial point has the wrong size");
  Require(problem.lower <= problem.upper, "empty box");
  Require(options.iterations >= 0 && options.constraint_budget >= 0,
          "iteration count and constraint budget must be non-negative");
  for (double& value : initial) value = Clamp(value, problem.lower, problem.upper);

  CutFitResult result;
  PairMatrix x(n, initial);
  std::vector<CutConstraint> family = SampleCutConstraints(
      n, options.constraint_budget, options.constraint_budget, rng);
  if (n < 2) {
    result.family_size = NumPairs(n) + family.size();
    result.x = std::move(initial);
    return result;
  }

  const size_t num_targets = problem.targets.size();
  std::vector<PairMatrix> targets;
  for (const WeightedChannel& target : problem.targets) targets.emplace_back(target);
  std::vector<int64_t> sizes;
  std::vector<double> target_sums;
  std::vector<double> sums;
  auto register_constraint = [&](const CutConstraint& c) {
    sizes.push_back(c.NumPairs());
    for (const PairMatrix& target : targets) target_sums.push_back(target.PairSetSum(c));
    sums.push_back(0.0);
  };
  for (const CutConstraint& c : family) register_constraint(c);

  auto constraint_violation = [&](size_t c) {
    Violation best;
    for (size_t j = 0; j < num_targets; ++j) {
      const double r = sums[c] - target_sums[c * num_targets + j];
      if (std::abs(r) > best.magnitude) best = {std::abs(r), r, static_cast<int>(c), 0};
    }
    return best;
  };

  const int refresh = std::max(options.refresh_every, 1);
  std::vector<size_t> working;
  double best_violation = std::numeric_limits<double>::infinity();
  PairMatrix best_x = x;

  // Local ascent on the residual x - target from a few starts; each cut it
  // ends on joins the family.
  auto separate = [&]() {
    const int starts = options.separation_starts;
    if (starts <= 0) return;
    std::vector<double> residual(static_cast<size_t>(NumPairs(n)));
    const std::vector<double> current = x.Triangle();
    for (const WeightedChannel& target : problem.targets) {
      for (size_t e = 0; e < residual.size(); ++e) residual[e] = current[e] - target.values()[e];
      const PairMatrix r(n, residual);
      for (double sign : {1.0, -1.0}) {
        for (CutConstraint& c : SampleCutConstraints(n, starts, 0, rng)) {
          AscendCutSum(r, c, sign);
          if (c.NumPairs() == 0) continue;
          family.push_back(std::move(c));
          register_constraint(family.back());
        }
      }
    }
  };

  // Maximum violation of a point over the current family.
  auto max_violation = [&](const PairMatrix& point) {
    double worst = SingletonViolation(point, problem.targets).magnitude;
    for (size_t c = 0; c < family.size(); ++c) {
      const double sum = point.PairSetSum(family[c]);
      for (size_t j = 0; j < num_targets; ++j) {
        worst = std::max(worst, std::abs(sum - target_sums[c * num_targets + j]));
      }
    }
    return worst;
  };

  auto full_evaluation = [&]() {
    const size_t before = family.size();
    separate();
    // New constraints may raise the incumbent's violation.
    if (family.size() != before && std::isfinite(best_violation)) {
      best_violation = max_violation(best_x);
    }
    for (size_t c = 0; c < family.size(); ++c) sums[c] = x.PairSetSum(family[c]);
    Violation worst = SingletonViolation(x, problem.targets);
    for (size_t c = 0; c < family.size(); ++c) {
      const Violation v = constraint_violation(c);
      if (v.magnitude > worst.magnitude) worst = v;
    }
    if (worst.magnitude < best_violation) {
      best_violation = worst.magnitude;
      best_x = x;
    }
    const size_t working_size =
        std::min<size_t>(std::max(options.working_set, 1), family.size());
    std::vector<size_t> order(family.size());
    std::iota(order.begin(), order.end(), 0);
    std::partial_sort(order.begin(), order.begin() + working_size, order.end(),
                      [&](size_t a, size_t b) {
                        return constraint_violation(a).magnitude >
                               constraint_violation(b).magnitude;
                      });
    working.assign(order.begin(), order.begin() + working_size);
    return worst;
  };

  int t = 1;
  for (; t <= options.iterations; ++t) {
    Violation worst;
    if ((t - 1) % refresh == 0) {
      worst = full_evaluation();
      if (worst.magnitude <= 0.0) break;
    } else {
      for (size_t c : working) sums[c] = x.PairSetSum(family[c]);
      worst = SingletonViolation(x, problem.targets);
      for (size_t c : working) {
        const Violation v = constraint_violation(c);
        if (v.magnitude > worst.magnitude) worst = v;
      }
    }
    if (worst.magnitude <= 0.0) continue;
    const double direction = worst.residual > 0 ? -1.0 : 1.0;
    const double damping = 1.0 / std::sqrt(static_cast<double>(t));
    if (worst.constraint < 0) {
      // Locate the pair from its triangular index.
      size_t idx = 0;
      for (int u = 0; u < n; ++u) {
        const size_t row_len = static_cast<size_t>(n - u - 1);
        if (worst.pair < idx + row_len) {
          const int v = u + 1 + static_cast<int>(worst.pair - idx);
          x.set(u, v, Clamp(x.at(u, v) + direction * worst.magnitude * damping,
                            problem.lower, problem.upper));
          break;
        }
        idx += row_len;
      }
    } else {
      const CutConstraint& c = family[worst.constraint];
      const double step =
          direction * worst.magnitude * damping / static_cast<double>(sizes[worst.constraint]);
      for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
          if ((c.in_s[u] && c.in_t[v]) || (c.in_t[u] && c.in_s[v])) {
            x.set(u, v, Clamp(x.at(u, v) + step, problem.lower, problem.upper));
          }
        }
      }
    }
  }
  full_evaluation();
  result.x = best_x.Triangle();
  result.training_violation = best_violation;
  result.family_size = NumPairs(n) + family.size();
  result.iterations_run = std::min(t - 1, options.iterations);
  return result;
}

ViolationAudit AuditCutViolation(const CutFitProblem& problem,
                                 const std::vector<double>& x, int budget, Rng& rng) {
  const int n = problem.n;
  Require(x.size() == NumPairs(n), "audited point has the wrong size");
  const PairMatrix fitted(n, x);
  ViolationAudit audit;
  const std::vector<CutConstraint> family = SampleCutConstraints(n, budget, budget, rng);
  audit.constraints_checked = NumPairs(n) + family.size();
  if (n < 2) return audit;
  audit.max_violation = std::max(0.0, SingletonViolation(fitted, problem.targets).magnitude);
  std::vector<PairMatrix> targets;
  for (const WeightedChannel& t : problem.targets) targets.emplace_back(t);
  for (const CutConstraint& c : family) {
    const double sum = fitted.PairSetSum(c);
    for (const PairMatrix& t : targets) {
      audit.max_violation = std::max(audit.max_violation, std::abs(sum - t.PairSetSum(c)));
    }
  }
  return audit;
}

}  // namespace dpcc
