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

#include "dpcc/cluster_transforms.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dpcc/status.h"

namespace dpcc {

nlohmann::json CoarsenReport::ToJson() const {
  return {{"k_before", k_before}, {"k_after", k_after},
          {"k_prime", k_prime},   {"bins", bins},
          {"kept", kept},         {"merge_cost_bound", merge_cost_bound}};
}

int DefaultCoarsenTarget(int n) {
  if (n <= 1) return 1;
  auto fourth = [](int64_t k) { return k * k * k * k; };
  int64_t k = static_cast<int64_t>(std::ceil(std::pow(static_cast<double>(n), 0.25)));
  while (k > 1 && fourth(k - 1) >= n) --k;
  while (fourth(k) < n) ++k;
  return static_cast<int>(k);
}

std::pair<Clustering, CoarsenReport> Coarsen(const Clustering& c, int n, int k_prime,
                                             double max_weight) {
  Require(c.num_vertices() == n, "clustering does not cover exactly n vertices");
  Require(k_prime >= 1, "coarsening target must be at least 1");
  Require(max_weight >= 0.0, "max edge weight must be non-negative");
  CoarsenReport report;
  report.k_before = c.num_clusters();
  report.k_prime = k_prime;
  if (c.num_clusters() <= k_prime) {
    report.k_after = report.k_before;
    report.kept.resize(report.k_before);
    std::iota(report.kept.begin(), report.kept.end(), 0);
    return {c, report};
  }

  const std::vector<int> sizes = c.ClusterSizes();
  const int64_t capacity_scaled = 2 * static_cast<int64_t>(n);  // capacity * k_prime
  std::vector<int> small;
  for (int id = 0; id < c.num_clusters(); ++id) {
    // size >= n / k_prime, in integers.
    if (static_cast<int64_t>(sizes[id]) * k_prime >= n) {
      report.kept.push_back(id);
    } else {
      small.push_back(id);
    }
  }
  std::stable_sort(small.begin(), small.end(),
                   [&](int a, int b) { return sizes[a] > sizes[b]; });
  std::vector<int64_t> load;
  auto fits = [&](size_t bin, int id) {
    return (load[bin] + sizes[id]) * static_cast<int64_t>(k_prime) <= capacity_scaled;
  };
  for (int id : small) {
    size_t bin = 0;
    while (bin < load.size() && !fits(bin, id)) ++bin;
    if (bin == load.size()) {
      load.push_back(0);
      report.bins.emplace_back();
    }
    load[bin] += sizes[id];
    report.bins[bin].push_back(id);
  }

  std::vector<int> new_id(c.num_clusters(), -1);
  int next = 0;
  for (int id : report.kept) new_id[id] = next++;
  for (size_t bin = 0; bin < report.bins.size(); ++bin) {
    for (int id : report.bins[bin]) new_id[id] = next;
    ++next;
    const double size = static_cast<double>(load[bin]);
    report.merge_cost_bound += size * (size - 1.0) / 2.0 * max_weight;
  }
  std::vector<int> labels(n);
  for (int v = 0; v < n; ++v) labels[v] = new_id[c.cluster_of(v)];
  Clustering out = Clustering::FromLabels(labels);
  report.k_after = out.num_clusters();
  return {std::move(out), report};
}

SplitGraph SplitTransform(const SignedGraph& h) {
  const int n = h.num_vertices();
  SplitGraph split;
  split.original_vertices = n;
  split.coupling_weight = 1.0 + h.total_weight();
  std::vector<Edge> edges;
  edges.reserve(h.num_edges() + n);
  h.ForEachEdge([&](const Edge& e) {
    if (e.sign == Sign::kPositive) {
      edges.push_back({e.u, e.v, e.weight, Sign::kPositive});
    } else {
      edges.push_back({n + e.u, n + e.v, e.weight, Sign::kNegative});
    }
  });
  for (int v = 0; v < n; ++v) {
    edges.push_back({v, n + v, split.coupling_weight, Sign::kPositive});
  }
  split.graph = SignedGraph(2 * n, std::move(edges));
  return split;
}

Clustering Unsplit(const Clustering& c, const SplitGraph& split) {
  const int n = split.original_vertices;
  Require(c.num_vertices() == 2 * n, "clustering is not on the split graph");
  std::vector<int> parent(c.num_clusters());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (int v = 0; v < n; ++v) {
    const int a = find(c.cluster_of(split.plus(v)));
    const int b = find(c.cluster_of(split.minus(v)));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<int> labels(n);
  for (int v = 0; v < n; ++v) labels[v] = find(c.cluster_of(split.plus(v)));
  return Clustering::FromLabels(labels);
}

Clustering LiftToSplit(const Clustering& c) {
  const int n = c.num_vertices();
  std::vector<int> labels(2 * n);
  for (int v = 0; v < n; ++v) labels[v] = labels[n + v] = c.cluster_of(v);
  return Clustering::FromLabels(labels);
}

}  // namespace dpcc
