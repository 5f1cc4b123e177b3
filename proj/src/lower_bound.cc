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

#include "dpcc/lower_bound.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "dpcc/edge_list.h"
#include "dpcc/status.h"

namespace dpcc {

SignedGraph PathGraph(const SignVector& sigma, double edge_weight) {
  Require(edge_weight > 0.0 && std::isfinite(edge_weight), "path edge weight must be positive");
  std::vector<Edge> edges;
  edges.reserve(sigma.size());
  for (size_t i = 0; i < sigma.size(); ++i) {
    edges.push_back({static_cast<int>(i), static_cast<int>(i + 1), edge_weight, sigma[i]});
  }
  return SignedGraph(static_cast<int>(sigma.size()) + 1, std::move(edges));
}

Clustering OptimalPathClustering(const SignVector& sigma) {
  std::vector<int> labels(sigma.size() + 1, 0);
  for (size_t i = 0; i < sigma.size(); ++i) {
    labels[i + 1] = labels[i] + (sigma[i] == Sign::kNegative ? 1 : 0);
  }
  return Clustering::FromLabels(labels);
}

int HammingDistance(const SignVector& a, const SignVector& b) {
  Require(a.size() == b.size(), "sign vectors have different lengths");
  int d = 0;
  for (size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

int PairwiseConfusionBound(const SignVector& a, const SignVector& b) {
  return (HammingDistance(a, b) + 1) / 2;
}

SignVector Codebook::Word(size_t i) const {
  SignVector sigma(n);
  for (int b = 0; b < n; ++b) {
    sigma[b] = (words[i] >> b & 1) ? Sign::kPositive : Sign::kNegative;
  }
  return sigma;
}

double Codebook::RateBits() const {
  return words.empty() ? 0.0 : std::log2(static_cast<double>(words.size())) / n;
}

double Codebook::AlphaNatural() const {
  return words.empty() ? 0.0 : std::log(static_cast<double>(words.size())) / n;
}

int Codebook::MeasuredMinDistance() const {
  int best = n + 1;
  for (size_t i = 0; i < words.size(); ++i) {
    for (size_t j = i + 1; j < words.size(); ++j) {
      best = std::min(best, std::popcount(words[i] ^ words[j]));
    }
  }
  return best;
}

Codebook BruteForceCode(int n, double beta, size_t target, Rng& rng, int64_t budget) {
  Require(n >= 1 && n <= 64, "code length must lie in [1, 64]");
  Require(beta >= 0.0 && beta < 0.5, "relative distance must lie in [0, 1/2)");
  Require(budget >= 0, "sample budget must be non-negative");
  Codebook code;
  code.n = n;
  code.beta = beta;
  code.min_distance = static_cast<int>(std::ceil(beta * n - 1e-12));
  const uint64_t mask = n == 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1;
  std::unordered_set<uint64_t> seen;
  while (code.words.size() < target && code.samples_drawn < budget) {
    const uint64_t word = rng.Next() & mask;
    ++code.samples_drawn;
    if (seen.count(word)) continue;
    bool far = true;
    for (uint64_t kept : code.words) {
      if (std::popcount(word ^ kept) < code.min_distance) {
        far = false;
        break;
      }
    }
    if (!far) continue;
    seen.insert(word);
    code.words.push_back(word);
  }
  code.reached_target = code.words.size() >= target;
  return code;
}

double PackingReport::MeanError() const {
  if (rows.empty()) return 0.0;
  double sum = 0.0;
  for (const PackingRow& row : rows) sum += row.mean_err;
  return sum / static_cast<double>(rows.size());
}

std::string PackingReport::ToCsv() const {
  std::ostringstream out;
  out << "codeword,mean_err,frac_in_b,theory_bound\n";
  for (const PackingRow& row : rows) {
    out << row.codeword << ',' << FormatDouble(row.mean_err) << ','
        << FormatDouble(row.frac_in_b) << ',' << FormatDouble(theory_bound) << '\n';
  }
  return out.str();
}

PackingReport PackingExperiment(const ClusteringMechanism& mechanism, const Codebook& code,
                                double epsilon, double lambda, int repetitions, uint64_t seed,
                                int threads) {
  Require(epsilon > 0.0, "epsilon must be positive");
  Require(lambda > 0.0, "edge weight must be positive");
  Require(repetitions >= 1, "need at least one repetition");
  PackingReport report;
  report.n = code.n;
  report.epsilon = epsilon;
  report.lambda = lambda;
  report.beta = code.beta;
  report.alpha = code.AlphaNatural();
  report.repetitions = repetitions;
  report.good_threshold = lambda * code.beta * code.n / 2.0;
  report.theory_bound = report.alpha * code.beta * code.n / (4.0 * epsilon);
  report.bound_applies = epsilon <= kPackingMaxEpsilon;
  report.rows.resize(code.size());

  const Rng master(seed);
  auto run = [&](size_t i) {
    const SignedGraph path = PathGraph(code.Word(i), lambda);
    Rng rng = master.Stream(i);
    double total = 0.0;
    int good = 0;
    for (int r = 0; r < repetitions; ++r) {
      const double err = Disagreement(mechanism(path, rng), path);
      total += err;
      good += err < report.good_threshold;
    }
    report.rows[i] = {i, total / repetitions, static_cast<double>(good) / repetitions};
  };
  threads = std::clamp<int>(threads, 1, std::max<int>(1, static_cast<int>(code.size())));
  if (threads == 1) {
    for (size_t i = 0; i < code.size(); ++i) run(i);
  } else {
    std::vector<std::thread> workers;
    for (int w = 0; w < threads; ++w) {
      workers.emplace_back([&, w] {
        for (size_t i = w; i < code.size(); i += threads) run(i);
      });
    }
    for (std::thread& t : workers) t.join();
  }
  return report;
}

}  // namespace dpcc
