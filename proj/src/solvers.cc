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

#include "dpcc/solvers.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "dpcc/status.h"

namespace dpcc {
namespace {

// Dense symmetric net weights w+ - w-, zero diagonal.
class NetMatrix {
 public:
  explicit NetMatrix(const SignedGraph& g)
      : n_(g.num_vertices()), data_(static_cast<size_t>(n_) * n_, 0.0) {
    g.ForEachEdge([&](const Edge& e) {
      const double w = e.signed_weight();
      data_[static_cast<size_t>(e.u) * n_ + e.v] += w;
      data_[static_cast<size_t>(e.v) * n_ + e.u] += w;
    });
  }

  int n() const { return n_; }
  double at(int u, int v) const { return data_[static_cast<size_t>(u) * n_ + v]; }
  const double* row(int u) const { return data_.data() + static_cast<size_t>(u) * n_; }

  double AbsSum() const {
    double s = 0.0;
    for (double w : data_) s += std::abs(w);
    return s / 2.0;
  }

 private:
  int n_;
  std::vector<double> data_;
};

void CheckConfig(const SolverConfig& cfg) {
  Require(cfg.max_clusters >= 0, "max_clusters must be non-negative");
  Require(cfg.max_passes >= 0, "max_passes must be non-negative");
  Require(cfg.restarts >= 1, "restarts must be at least 1");
}

class ExactSearch {
 public:
  ExactSearch(const NetMatrix& net, int max_clusters)
      : net_(net),
        n_(net.n()),
        k_(max_clusters > 0 ? max_clusters : net.n()),
        labels_(n_, 0),
        remaining_(n_ + 1, 0.0),
        gains_(static_cast<size_t>(n_) * (n_ + 1), 0.0) {
    for (int v = n_ - 1; v >= 0; --v) {
      double pos = 0.0;
      for (int u = 0; u < v; ++u) pos += std::max(0.0, net.at(u, v));
      remaining_[v] = remaining_[v + 1] + pos;
    }
    tolerance_ = 1e-9 * (1.0 + net.AbsSum());
  }

  std::vector<int> Run() {
    if (n_ == 0) return {};
    best_ = -std::numeric_limits<double>::infinity();
    Visit(1, 0.0, 1);
    return best_labels_;
  }

 private:
  // Vertex 0 always sits in cluster 0.
  void Visit(int v, double current, int used) {
    if (v == n_) {
      if (current > best_ + tolerance_) {
        best_ = current;
        best_labels_ = labels_;
      }
      return;
    }
    if (current + remaining_[v] <= best_ + tolerance_) return;
    double* gain = gains_.data() + static_cast<size_t>(v) * (n_ + 1);
    std::fill(gain, gain + used + 1, 0.0);
    const double* row = net_.row(v);
    for (int u = 0; u < v; ++u) gain[labels_[u]] += row[u];
    const int options = std::min(used + 1, k_);
    for (int c = 0; c < options; ++c) {
      labels_[v] = c;
      Visit(v + 1, current + gain[c], std::max(used, c + 1));
    }
    labels_[v] = 0;
  }

  const NetMatrix& net_;
  int n_;
  int k_;
  std::vector<int> labels_;
  std::vector<double> remaining_;
  std::vector<double> gains_;
  double tolerance_ = 0.0;
  double best_ = 0.0;
  std::vector<int> best_labels_;
};

Clustering LocalSearchOnNet(const NetMatrix& net, const SignedGraph& g, const Clustering& start,
                            const SolverConfig& cfg, std::vector<double>* pass_objectives) {
  const int n = net.n();
  const int k = cfg.max_clusters;
  std::vector<int> label = start.labels();
  std::vector<int> size(n + 1, 0);
  for (int v = 0; v < n; ++v) ++size[label[v]];
  int clusters = start.num_clusters();
  // score[v * n + c] = sum of net(v, u) over u != v in cluster c.
  std::vector<double> score(static_cast<size_t>(n) * n, 0.0);
  for (int v = 0; v < n; ++v) {
    const double* row = net.row(v);
    double* sv = score.data() + static_cast<size_t>(v) * n;
    for (int u = 0; u < n; ++u) sv[label[u]] += row[u];  // row[v] == 0
  }
  const double tolerance = 1e-12 * (1.0 + net.AbsSum());

  if (pass_objectives) {
    pass_objectives->push_back(ObjectiveValue(start, g, cfg.objective));
  }
  for (int pass = 0; pass < cfg.max_passes; ++pass) {
    bool moved = false;
    for (int v = 0; v < n; ++v) {
      const double* sv = score.data() + static_cast<size_t>(v) * n;
      const int from = label[v];
      double best_gain = tolerance;
      int target = -1;
      for (int c = 0; c < n; ++c) {
        if (c == from || size[c] == 0) continue;
        const double gain = sv[c] - sv[from];
        if (gain > best_gain) {
          best_gain = gain;
          target = c;
        }
      }
      const bool may_open = size[from] > 1 && (k == 0 || clusters < k);
      if (may_open && -sv[from] > best_gain) {
        target = static_cast<int>(std::find(size.begin(), size.end(), 0) - size.begin());
        best_gain = -sv[from];
      }
      if (target < 0) continue;
      if (size[target] == 0) ++clusters;
      --size[from];
      ++size[target];
      if (size[from] == 0) --clusters;
      label[v] = target;
      const double* row = net.row(v);
      for (int u = 0; u < n; ++u) {
        double* su = score.data() + static_cast<size_t>(u) * n;
        su[from] -= row[u];
        su[target] += row[u];
      }
      moved = true;
    }
    if (!moved && cfg.cluster_merges) {
      // cross[a * n + b]: net weight between clusters a and b.
      std::vector<double> cross(static_cast<size_t>(n) * n, 0.0);
      for (int v = 0; v < n; ++v) {
        const double* sv = score.data() + static_cast<size_t>(v) * n;
        double* row = cross.data() + static_cast<size_t>(label[v]) * n;
        for (int c = 0; c < n; ++c) row[c] += sv[c];
      }
      std::vector<int> target(n);
      for (int c = 0; c < n; ++c) target[c] = c;
      while (true) {
        double best = tolerance;
        int ba = -1, bb = -1;
        for (int a = 0; a < n; ++a) {
          if (size[a] == 0) continue;
          for (int b = a + 1; b < n; ++b) {
            if (size[b] == 0) continue;
            if (cross[static_cast<size_t>(a) * n + b] > best) {
              best = cross[static_cast<size_t>(a) * n + b];
              ba = a;
              bb = b;
            }
          }
        }
        if (ba < 0) break;
        for (int c = 0; c < n; ++c) {
          cross[static_cast<size_t>(ba) * n + c] += cross[static_cast<size_t>(bb) * n + c];
          cross[static_cast<size_t>(c) * n + ba] += cross[static_cast<size_t>(c) * n + bb];
        }
        size[ba] += size[bb];
        size[bb] = 0;
        --clusters;
        target[bb] = ba;
        moved = true;
      }
      if (moved) {
        for (int v = 0; v < n; ++v) {
          while (target[label[v]] != label[v]) label[v] = target[label[v]];
        }
        for (int v = 0; v < n; ++v) {
          double* sv = score.data() + static_cast<size_t>(v) * n;
          for (int c = 0; c < n; ++c) {
            if (target[c] != c) {
              int root = c;
              while (target[root] != root) root = target[root];
              sv[root] += sv[c];
              sv[c] = 0.0;
            }
          }
        }
      }
    }
    if (pass_objectives) {
      pass_objectives->push_back(
          ObjectiveValue(Clustering::FromLabels(label), g, cfg.objective));
    }
    if (!moved) break;
  }
  return Clustering::FromLabels(label);
}

Clustering ReduceOnNet(const NetMatrix& net, const Clustering& c, int k) {
  Require(k >= 1, "cluster limit must be at least 1");
  if (c.num_clusters() <= k) return c;
  const int m = c.num_clusters();
  std::vector<double> cross(static_cast<size_t>(m) * m, 0.0);
  const int n = net.n();
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const int a = c.cluster_of(u), b = c.cluster_of(v);
      if (a == b) continue;
      cross[static_cast<size_t>(a) * m + b] += net.at(u, v);
      cross[static_cast<size_t>(b) * m + a] += net.at(u, v);
    }
  }
  std::vector<int> parent(m);
  for (int i = 0; i < m; ++i) parent[i] = i;
  std::vector<char> alive(m, 1);
  for (int remaining = m; remaining > k; --remaining) {
    // Merging a and b changes the same-cluster net sum by cross(a, b).
    double best = -std::numeric_limits<double>::infinity();
    int ba = -1, bb = -1;
    for (int a = 0; a < m; ++a) {
      if (!alive[a]) continue;
      for (int b = a + 1; b < m; ++b) {
        if (!alive[b]) continue;
        const double value = cross[static_cast<size_t>(a) * m + b];
        if (value > best) {
          best = value;
          ba = a;
          bb = b;
        }
      }
    }
    alive[bb] = 0;
    parent[bb] = ba;
    for (int x = 0; x < m; ++x) {
      if (!alive[x] || x == ba) continue;
      cross[static_cast<size_t>(ba) * m + x] += cross[static_cast<size_t>(bb) * m + x];
      cross[static_cast<size_t>(x) * m + ba] = cross[static_cast<size_t>(ba) * m + x];
    }
  }
  auto root = [&](int x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };
  std::vector<int> labels(n);
  for (int v = 0; v < n; ++v) labels[v] = root(c.cluster_of(v));
  return Clustering::FromLabels(labels);
}

}  // namespace

std::string ObjectiveName(Objective objective) {
  return objective == Objective::kMinDis ? "mindis" : "maxagr";
}

Objective ParseObjective(const std::string& name) {
  if (name == "mindis") return Objective::kMinDis;
  if (name == "maxagr") return Objective::kMaxAgr;
  throw ContractViolation("unknown objective '" + name + "'");
}

double ObjectiveValue(const Clustering& c, const SignedGraph& g, Objective objective) {
  return objective == Objective::kMinDis ? Disagreement(c, g) : Agreement(c, g);
}

bool Improves(double a, double b, Objective objective) {
  return objective == Objective::kMinDis ? a < b : a > b;
}

Clustering SolveExact(const SignedGraph& g, const SolverConfig& cfg) {
  CheckConfig(cfg);
  const int n = g.num_vertices();
  if (n > cfg.exact_max_vertices) {
    throw Refusal("exact solver refuses n = " + std::to_string(n) + " > " +
                  std::to_string(cfg.exact_max_vertices));
  }
  const NetMatrix net(g);
  ExactSearch search(net, cfg.max_clusters);
  return Clustering::FromLabels(search.Run());
}

Clustering Pivot(const SignedGraph& g, Rng& rng) {
  const NetMatrix net(g);
  const int n = net.n();
  std::vector<int> remaining(n);
  for (int v = 0; v < n; ++v) remaining[v] = v;
  std::vector<int> labels(n, -1);
  int next = 0;
  std::vector<int> rest;
  while (!remaining.empty()) {
    const int pivot = remaining[rng.UniformIndex(remaining.size())];
    const double* row = net.row(pivot);
    rest.clear();
    for (int u : remaining) {
      if (u == pivot || row[u] > 0.0) {
        labels[u] = next;
      } else {
        rest.push_back(u);
      }
    }
    ++next;
    remaining.swap(rest);
  }
  return Clustering::FromLabels(labels);
}

Clustering LocalSearch(const SignedGraph& g, const Clustering& start, const SolverConfig& cfg,
                       std::vector<double>* pass_objectives) {
  CheckConfig(cfg);
  Require(start.num_vertices() == g.num_vertices(), "start clustering has the wrong size");
  Require(cfg.max_clusters == 0 || start.num_clusters() <= cfg.max_clusters,
          "start clustering exceeds max_clusters");
  return LocalSearchOnNet(NetMatrix(g), g, start, cfg, pass_objectives);
}

Clustering ReduceClusters(const SignedGraph& g, const Clustering& c, int k) {
  Require(c.num_vertices() == g.num_vertices(), "clustering has the wrong size");
  return ReduceOnNet(NetMatrix(g), c, k);
}

Clustering Solve(const SignedGraph& g, const SolverConfig& cfg) {
  CheckConfig(cfg);
  const int n = g.num_vertices();
  if (n <= std::min(cfg.exact_dispatch_vertices, cfg.exact_max_vertices)) {
    return SolveExact(g, cfg);
  }
  const NetMatrix net(g);
  const Rng master(cfg.seed);
  std::vector<Clustering> results(cfg.restarts);
  std::vector<double> values(cfg.restarts);
  auto run = [&](int r) {
    Rng rng = master.Stream(static_cast<uint64_t>(r));
    Clustering c = Pivot(g, rng);
    if (cfg.max_clusters > 0) c = ReduceOnNet(net, c, cfg.max_clusters);
    c = LocalSearchOnNet(net, g, c, cfg, nullptr);
    values[r] = ObjectiveValue(c, g, cfg.objective);
    results[r] = std::move(c);
  };
  int threads = cfg.threads > 0 ? cfg.threads
                                : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, cfg.restarts);
  if (threads == 1) {
    for (int r = 0; r < cfg.restarts; ++r) run(r);
  } else {
    std::vector<std::thread> workers;
    for (int w = 0; w < threads; ++w) {
      workers.emplace_back([&, w] {
        for (int r = w; r < cfg.restarts; r += threads) run(r);
      });
    }
    for (std::thread& t : workers) t.join();
  }
  int best = 0;
  for (int r = 1; r < cfg.restarts; ++r) {
    if (Improves(values[r], values[best], cfg.objective) ||
        (values[r] == values[best] && results[r] < results[best])) {
      best = r;
    }
  }
  return results[best];
}

}  // namespace dpcc
