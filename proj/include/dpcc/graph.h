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

// Signed graphs, clusterings, and the correlation-clustering objectives.

#ifndef DPCC_GRAPH_H_
#define DPCC_GRAPH_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dpcc {

enum class Sign : int8_t { kNegative = -1, kPositive = 1 };

inline Sign Flip(Sign s) {
  return s == Sign::kPositive ? Sign::kNegative : Sign::kPositive;
}
inline char SignChar(Sign s) { return s == Sign::kPositive ? '+' : '-'; }

// Position of the unordered pair {u, v}, u != v, in the row-major upper
// triangle of an n x n matrix.
inline size_t PairIndex(int n, int u, int v) {
  if (u > v) std::swap(u, v);
  const size_t uu = static_cast<size_t>(u);
  return uu * (2 * static_cast<size_t>(n) - uu - 1) / 2 +
         static_cast<size_t>(v - u - 1);
}

inline size_t NumPairs(int n) {
  return n < 2 ? 0 : static_cast<size_t>(n) * (n - 1) / 2;
}

struct Edge {
  int u = 0;
  int v = 0;
  double weight = 1.0;
  Sign sign = Sign::kPositive;

  double signed_weight() const { return static_cast<int>(sign) * weight; }
};

struct PairWeights {
  double positive = 0.0;
  double negative = 0.0;

  double net() const { return positive - negative; }
};

// Vertex count plus, per unordered pair, a non-negative weight and a sign.
// With parallel_ok a pair may carry one positive and one negative edge.
//
// Complete graphs are stored as two dense upper-triangular arrays; all other
// graphs as a sorted edge list. Zero-weight edges are dropped on
// construction: an absent pair and a pair of weight 0 are the same thing.
// Immutable after construction.
class SignedGraph {
 public:
  struct Options {
    bool complete = false;
    bool parallel_ok = false;
  };

  SignedGraph() = default;
  // Throws ContractViolation on out-of-range or self-loop endpoints,
  // negative or non-finite weights, duplicate (pair, sign) entries, a pair
  // with both signs when !parallel_ok, or a missing pair when complete.
  SignedGraph(int num_vertices, std::vector<Edge> edges, Options options);
  SignedGraph(int num_vertices, std::vector<Edge> edges)
      : SignedGraph(num_vertices, std::move(edges), Options{}) {}

  // Complete graph with every pair weight 1. positive[PairIndex(n,u,v)]
  // selects the sign of {u, v}.
  static SignedGraph CompleteUnweighted(int n, const std::vector<bool>& positive);

  int num_vertices() const { return n_; }
  bool is_complete() const { return options_.complete; }
  bool parallel_ok() const { return options_.parallel_ok; }
  // All edge weights equal 1 (objectives are then computed in integers).
  bool is_unweighted() const { return unweighted_; }
  size_t num_edges() const { return num_edges_; }
  double total_weight() const { return total_weight_; }
  double max_weight() const { return max_weight_; }

  PairWeights weights(int u, int v) const;
  double net_weight(int u, int v) const { return weights(u, v).net(); }

  // Visits every edge once, ordered by (u, v) with u < v, positive before
  // negative on parallel pairs.
  template <typename Fn>
  void ForEachEdge(Fn&& fn) const {
    if (dense_) {
      Edge e;
      size_t idx = 0;
      for (int u = 0; u < n_; ++u) {
        for (int v = u + 1; v < n_; ++v, ++idx) {
          e.u = u;
          e.v = v;
          if (dense_pos_[idx] > 0) {
            e.weight = dense_pos_[idx];
            e.sign = Sign::kPositive;
            fn(static_cast<const Edge&>(e));
          }
          if (dense_neg_[idx] > 0) {
            e.weight = dense_neg_[idx];
            e.sign = Sign::kNegative;
            fn(static_cast<const Edge&>(e));
          }
        }
      }
    } else {
      for (const Edge& e : sparse_) fn(e);
    }
  }

  std::vector<Edge> Edges() const;

 private:
  int n_ = 0;
  Options options_;
  bool dense_ = false;
  bool unweighted_ = true;
  size_t num_edges_ = 0;
  double total_weight_ = 0.0;
  double max_weight_ = 0.0;
  std::vector<double> dense_pos_;
  std::vector<double> dense_neg_;
  std::vector<Edge> sparse_;
};

// A partition of {0, ..., n-1}. Labels are kept in canonical restricted
// growth form (vertex 0 is in cluster 0, each new cluster takes the next
// id), so two Clusterings compare equal iff they induce the same partition,
// and operator< orders partitions by their restricted growth strings.
class Clustering {
 public:
  Clustering() = default;

  // Any non-negative labels; relabeled canonically.
  static Clustering FromLabels(std::span<const int> labels);
  static Clustering SingleCluster(int n);
  static Clustering Singletons(int n);
  static Clustering FromClusters(int n, const std::vector<std::vector<int>>& clusters);

  int num_vertices() const { return static_cast<int>(labels_.size()); }
  int num_clusters() const { return num_clusters_; }
  int cluster_of(int v) const { return labels_[v]; }
  const std::vector<int>& labels() const { return labels_; }

  // Members of each cluster in increasing order, indexed by cluster id.
  std::vector<std::vector<int>> Clusters() const;
  std::vector<int> ClusterSizes() const;
  // Space separated restricted growth string.
  std::string ToString() const;

  bool operator==(const Clustering&) const = default;
  bool operator<(const Clustering& other) const { return labels_ < other.labels_; }

 private:
  std::vector<int> labels_;
  int num_clusters_ = 0;
};

struct PrivacyParams {
  double epsilon = 1.0;
  double delta = 0.0;

  // epsilon > 0 and finite, delta in [0, 1); pure requires delta == 0.
  void Validate(bool pure) const;
};

// Real weight per unordered pair over all C(n, 2) pairs. Values may be
// negative (raw Laplace output) but must be finite.
class WeightedChannel {
 public:
  WeightedChannel() = default;
  explicit WeightedChannel(int n);
  WeightedChannel(int n, std::vector<double> values);

  // Weights of the edges of one sign; 0 elsewhere.
  static WeightedChannel FromGraph(const SignedGraph& graph, Sign sign);

  int num_vertices() const { return n_; }
  size_t num_pairs() const { return values_.size(); }
  double at(int u, int v) const { return values_[PairIndex(n_, u, v)]; }
  void set(int u, int v, double value);
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& mutable_values() { return values_; }
  double Sum() const;

 private:
  int n_ = 0;
  std::vector<double> values_;
};

// Total weight of positive edges across clusters plus negative edges inside
// clusters. Throws ContractViolation if c and g disagree on vertex count.
double Disagreement(const Clustering& c, const SignedGraph& g);

// Positive edges inside clusters plus negative edges across clusters.
double Agreement(const Clustering& c, const SignedGraph& g);

// Weight of edges of the given sign over unordered pairs {u, v} with
// (u in S and v in T) or (u in T and v in S), each pair counted once. S and
// T may overlap, so SignedCutWeight(g, C, C, sign) is the same-sign weight
// inside C.
double SignedCutWeight(const SignedGraph& g, std::span<const int> s,
                       std::span<const int> t, Sign sign);

// Sum over (pair, sign) of |w - w'|. For simple graphs this is
// sum_e |sigma_e w_e - sigma'_e w'_e|; neighbors are at distance <= 2.
double NeighborDistance(const SignedGraph& a, const SignedGraph& b);

// (positive edges only, negative edges only), both on the full vertex set.
std::pair<SignedGraph, SignedGraph> SplitSigns(const SignedGraph& g);

}  // namespace dpcc

#endif  // DPCC_GRAPH_H_
