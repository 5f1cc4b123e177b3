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

#include "dpcc/graph.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <tuple>

#include "dpcc/status.h"

namespace dpcc {
namespace {

std::string PairName(int u, int v) {
  return "{" + std::to_string(u) + "," + std::to_string(v) + "}";
}

std::vector<char> Membership(int n, std::span<const int> vertices) {
  std::vector<char> in(n, 0);
  for (int v : vertices) {
    Require(v >= 0 && v < n, "vertex " + std::to_string(v) + " out of range");
    in[v] = 1;
  }
  return in;
}

}  // namespace

SignedGraph::SignedGraph(int num_vertices, std::vector<Edge> edges,
                         Options options)
    : n_(num_vertices), options_(options), dense_(options.complete) {
  Require(n_ >= 0, "negative vertex count");
  for (Edge& e : edges) {
    Require(e.u >= 0 && e.u < n_ && e.v >= 0 && e.v < n_,
            "edge " + PairName(e.u, e.v) + " has an endpoint out of range");
    Require(e.u != e.v, "self-loop at vertex " + std::to_string(e.u));
    Require(std::isfinite(e.weight) && e.weight >= 0,
            "edge " + PairName(e.u, e.v) + " has a negative or non-finite weight");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::erase_if(edges, [](const Edge& e) { return e.weight == 0; });
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::tuple(a.u, a.v, -static_cast<int>(a.sign)) <
           std::tuple(b.u, b.v, -static_cast<int>(b.sign));
  });
  for (size_t i = 1; i < edges.size(); ++i) {
    const Edge& a = edges[i - 1];
    const Edge& b = edges[i];
    if (a.u != b.u || a.v != b.v) continue;
    Require(a.sign != b.sign,
            "duplicate " + std::string(1, SignChar(a.sign)) + " edge " +
                PairName(a.u, a.v));
    Require(options_.parallel_ok,
            "pair " + PairName(a.u, a.v) + " has both signs but parallel edges are not allowed");
  }

  num_edges_ = edges.size();
  for (const Edge& e : edges) {
    total_weight_ += e.weight;
    max_weight_ = std::max(max_weight_, e.weight);
    if (e.weight != 1.0) unweighted_ = false;
  }

  if (dense_) {
    const size_t pairs = NumPairs(n_);
    dense_pos_.assign(pairs, 0.0);
    dense_neg_.assign(pairs, 0.0);
    for (const Edge& e : edges) {
      const size_t idx = PairIndex(n_, e.u, e.v);
      (e.sign == Sign::kPositive ? dense_pos_ : dense_neg_)[idx] = e.weight;
    }
    for (size_t idx = 0; idx < pairs; ++idx) {
      Require(dense_pos_[idx] > 0 || dense_neg_[idx] > 0,
              "graph declared complete but a pair has no edge");
    }
  } else {
    sparse_ = std::move(edges);
  }
}

SignedGraph SignedGraph::CompleteUnweighted(int n,
                                            const std::vector<bool>& positive) {
  Require(positive.size() == NumPairs(n), "sign vector size must be C(n,2)");
  std::vector<Edge> edges;
  edges.reserve(positive.size());
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      edges.push_back({u, v, 1.0,
                       positive[PairIndex(n, u, v)] ? Sign::kPositive : Sign::kNegative});
    }
  }
  return SignedGraph(n, std::move(edges), Options{.complete = true});
}

PairWeights SignedGraph::weights(int u, int v) const {
  Require(u >= 0 && u < n_ && v >= 0 && v < n_ && u != v,
          "invalid pair " + PairName(u, v));
  if (dense_) {
    const size_t idx = PairIndex(n_, u, v);
    return {dense_pos_[idx], dense_neg_[idx]};
  }
  if (u > v) std::swap(u, v);
  PairWeights out;
  auto it = std::lower_bound(sparse_.begin(), sparse_.end(), std::pair(u, v),
                             [](const Edge& e, const std::pair<int, int>& key) {
                               return std::pair(e.u, e.v) < key;
                             });
  for (; it != sparse_.end() && it->u == u && it->v == v; ++it) {
    (it->sign == Sign::kPositive ? out.positive : out.negative) = it->weight;
  }
  return out;
}

std::vector<Edge> SignedGraph::Edges() const {
  if (!dense_) return sparse_;
  std::vector<Edge> out;
  out.reserve(num_edges_);
  ForEachEdge([&](const Edge& e) { out.push_back(e); });
  return out;
}

Clustering Clustering::FromLabels(std::span<const int> labels) {
  Clustering c;
  c.labels_.resize(labels.size());
  std::vector<int> remap;
  for (size_t v = 0; v < labels.size(); ++v) {
    const int label = labels[v];
    Require(label >= 0, "cluster labels must be non-negative");
    if (static_cast<size_t>(label) >= remap.size()) remap.resize(label + 1, -1);
    if (remap[label] < 0) remap[label] = c.num_clusters_++;
    c.labels_[v] = remap[label];
  }
  return c;
}

Clustering Clustering::SingleCluster(int n) {
  std::vector<int> labels(n, 0);
  return FromLabels(labels);
}

Clustering Clustering::Singletons(int n) {
  std::vector<int> labels(n);
  std::iota(labels.begin(), labels.end(), 0);
  return FromLabels(labels);
}

Clustering Clustering::FromClusters(int n,
                                    const std::vector<std::vector<int>>& clusters) {
  std::vector<int> labels(n, -1);
  for (size_t id = 0; id < clusters.size(); ++id) {
    for (int v : clusters[id]) {
      Require(v >= 0 && v < n, "vertex " + std::to_string(v) + " out of range");
      Require(labels[v] < 0, "vertex " + std::to_string(v) + " is in two clusters");
      labels[v] = static_cast<int>(id);
    }
  }
  for (int v = 0; v < n; ++v) {
    Require(labels[v] >= 0, "vertex " + std::to_string(v) + " is unassigned");
  }
  return FromLabels(labels);
}

std::vector<std::vector<int>> Clustering::Clusters() const {
  std::vector<std::vector<int>> out(num_clusters_);
  for (int v = 0; v < num_vertices(); ++v) out[labels_[v]].push_back(v);
  return out;
}

std::vector<int> Clustering::ClusterSizes() const {
  std::vector<int> sizes(num_clusters_, 0);
  for (int label : labels_) ++sizes[label];
  return sizes;
}

std::string Clustering::ToString() const {
  std::ostringstream out;
  for (size_t v = 0; v < labels_.size(); ++v) {
    if (v) out << ' ';
    out << labels_[v];
  }
  return out.str();
}

void PrivacyParams::Validate(bool pure) const {
  if (!(epsilon > 0) || !std::isfinite(epsilon)) {
    throw ParameterError("epsilon must be positive and finite");
  }
  if (!(delta >= 0 && delta < 1)) throw ParameterError("delta must be in [0, 1)");
  if (pure && delta != 0) {
    throw ParameterError("this mechanism is pure DP and requires delta = 0");
  }
}

WeightedChannel::WeightedChannel(int n) : n_(n), values_(NumPairs(n), 0.0) {
  Require(n >= 0, "negative vertex count");
}

WeightedChannel::WeightedChannel(int n, std::vector<double> values)
    : n_(n), values_(std::move(values)) {
  Require(values_.size() == NumPairs(n), "channel size must be C(n,2)");
  for (double w : values_) Require(std::isfinite(w), "channel weights must be finite");
}

WeightedChannel WeightedChannel::FromGraph(const SignedGraph& graph, Sign sign) {
  WeightedChannel out(graph.num_vertices());
  graph.ForEachEdge([&](const Edge& e) {
    if (e.sign == sign) out.values_[PairIndex(out.n_, e.u, e.v)] = e.weight;
  });
  return out;
}

void WeightedChannel::set(int u, int v, double value) {
  Require(std::isfinite(value), "channel weights must be finite");
  values_[PairIndex(n_, u, v)] = value;
}

double WeightedChannel::Sum() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0);
}

double Disagreement(const Clustering& c, const SignedGraph& g) {
  Require(c.num_vertices() == g.num_vertices(),
          "clustering has " + std::to_string(c.num_vertices()) +
              " vertices but the graph has " + std::to_string(g.num_vertices()));
  const auto& label = c.labels();
  if (g.is_unweighted()) {
    int64_t count = 0;
    g.ForEachEdge([&](const Edge& e) {
      const bool same = label[e.u] == label[e.v];
      count += (e.sign == Sign::kPositive) != same;
    });
    return static_cast<double>(count);
  }
  double total = 0.0;
  g.ForEachEdge([&](const Edge& e) {
    const bool same = label[e.u] == label[e.v];
    if ((e.sign == Sign::kPositive) != same) total += e.weight;
  });
  return total;
}

double Agreement(const Clustering& c, const SignedGraph& g) {
  Require(c.num_vertices() == g.num_vertices(),
          "clustering has " + std::to_string(c.num_vertices()) +
              " vertices but the graph has " + std::to_string(g.num_vertices()));
  const auto& label = c.labels();
  if (g.is_unweighted()) {
    int64_t count = 0;
    g.ForEachEdge([&](const Edge& e) {
      const bool same = label[e.u] == label[e.v];
      count += (e.sign == Sign::kPositive) == same;
    });
    return static_cast<double>(count);
  }
  double total = 0.0;
  g.ForEachEdge([&](const Edge& e) {
    const bool same = label[e.u] == label[e.v];
    if ((e.sign == Sign::kPositive) == same) total += e.weight;
  });
  return total;
}

double SignedCutWeight(const SignedGraph& g, std::span<const int> s,
                       std::span<const int> t, Sign sign) {
  const std::vector<char> in_s = Membership(g.num_vertices(), s);
  const std::vector<char> in_t = Membership(g.num_vertices(), t);
  double total = 0.0;
  g.ForEachEdge([&](const Edge& e) {
    if (e.sign != sign) return;
    if ((in_s[e.u] && in_t[e.v]) || (in_t[e.u] && in_s[e.v])) total += e.weight;
  });
  return total;
}

double NeighborDistance(const SignedGraph& a, const SignedGraph& b) {
  Require(a.num_vertices() == b.num_vertices(),
          "graphs are on different vertex sets");
  // Merge the two canonical edge sequences keyed by (u, v, sign).
  const std::vector<Edge> ea = a.Edges();
  const std::vector<Edge> eb = b.Edges();
  auto key = [](const Edge& e) {
    return std::tuple(e.u, e.v, -static_cast<int>(e.sign));
  };
  double total = 0.0;
  size_t i = 0, j = 0;
  while (i < ea.size() || j < eb.size()) {
    if (j == eb.size() || (i < ea.size() && key(ea[i]) < key(eb[j]))) {
      total += ea[i++].weight;
    } else if (i == ea.size() || key(eb[j]) < key(ea[i])) {
      total += eb[j++].weight;
    } else {
      total += std::abs(ea[i++].weight - eb[j++].weight);
    }
  }
  return total;
}

std::pair<SignedGraph, SignedGraph> SplitSigns(const SignedGraph& g) {
  std::vector<Edge> plus, minus;
  g.ForEachEdge([&](const Edge& e) {
    (e.sign == Sign::kPositive ? plus : minus).push_back(e);
  });
  const size_t pairs = NumPairs(g.num_vertices());
  const SignedGraph::Options plus_opts{.complete = pairs > 0 && plus.size() == pairs};
  const SignedGraph::Options minus_opts{.complete = pairs > 0 && minus.size() == pairs};
  return {SignedGraph(g.num_vertices(), std::move(plus), plus_opts),
          SignedGraph(g.num_vertices(), std::move(minus), minus_opts)};
}

}  // namespace dpcc
