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

#include "dpcc/edge_list.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "dpcc/status.h"

namespace dpcc {
namespace {

bool NextContentLine(std::istream& in, std::string& line, int& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

[[noreturn]] void Fail(int line_no, const std::string& what) {
  throw ContractViolation("edge list line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

std::string FormatDouble(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

SignedGraph ReadEdgeList(std::istream& in) {
  std::string line;
  int line_no = 0;
  if (!NextContentLine(in, line, line_no)) Fail(line_no, "missing header");
  long long n = -1, m = -1;
  {
    std::istringstream header(line);
    if (!(header >> n >> m) || n < 0 || m < 0) Fail(line_no, "expected 'n m'");
  }
  std::vector<Edge> edges;
  edges.reserve(m);
  bool declared_complete = false;
  for (long long i = 0; i < m; ++i) {
    if (!NextContentLine(in, line, line_no)) Fail(line_no, "fewer edges than declared");
    if (i == 0 && !declared_complete && line.find("complete") != std::string::npos) {
      declared_complete = true;
      --i;
      continue;
    }
    std::istringstream fields(line);
    long long u, v;
    std::string sign;
    if (!(fields >> u >> v >> sign)) Fail(line_no, "expected 'u v sign [weight]'");
    if (sign != "+" && sign != "-") Fail(line_no, "sign must be '+' or '-'");
    double weight = 1.0;
    std::string weight_text;
    if (fields >> weight_text) {
      auto [ptr, ec] = std::from_chars(weight_text.data(),
                                       weight_text.data() + weight_text.size(), weight);
      if (ec != std::errc() || ptr != weight_text.data() + weight_text.size()) {
        Fail(line_no, "bad weight '" + weight_text + "'");
      }
    }
    if (u < 0 || v < 0 || u >= n || v >= n) Fail(line_no, "vertex out of range");
    edges.push_back({static_cast<int>(u), static_cast<int>(v), weight,
                     sign == "+" ? Sign::kPositive : Sign::kNegative});
  }
  // A "complete" line may also follow a header with m = 0.
  if (m == 0 && NextContentLine(in, line, line_no) &&
      line.find("complete") != std::string::npos) {
    declared_complete = true;
  }

  const int nv = static_cast<int>(n);
  // Pairs listed with both signs make the graph double-edged.
  std::vector<char> seen(NumPairs(nv), 0);
  bool parallel = false;
  for (const Edge& e : edges) {
    if (e.u == e.v) continue;  // reported by the SignedGraph constructor
    char& mask = seen[PairIndex(nv, e.u, e.v)];
    const char bit = e.sign == Sign::kPositive ? 1 : 2;
    if ((mask | bit) == 3) parallel = true;
    mask |= bit;
  }
  if (declared_complete) {
    for (int u = 0; u < nv; ++u) {
      for (int v = u + 1; v < nv; ++v) {
        if (!seen[PairIndex(nv, u, v)]) edges.push_back({u, v, 1.0, Sign::kNegative});
      }
    }
  }
  bool complete = true;
  for (int u = 0; u < nv && complete; ++u) {
    for (int v = u + 1; v < nv; ++v) {
      if (!seen[PairIndex(nv, u, v)] && !declared_complete) {
        complete = false;
        break;
      }
    }
  }
  for (const Edge& e : edges) {
    if (e.weight == 0) complete = false;
  }
  return SignedGraph(nv, std::move(edges),
                     {.complete = complete && nv >= 2, .parallel_ok = parallel});
}

SignedGraph ReadEdgeListFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ContractViolation("cannot open " + path);
  return ReadEdgeList(in);
}

void WriteEdgeList(const SignedGraph& g, std::ostream& out) {
  if (g.is_complete() && g.is_unweighted() && !g.parallel_ok()) {
    size_t positives = 0;
    g.ForEachEdge([&](const Edge& e) { positives += e.sign == Sign::kPositive; });
    out << g.num_vertices() << ' ' << positives << "\ncomplete\n";
    g.ForEachEdge([&](const Edge& e) {
      if (e.sign == Sign::kPositive) out << e.u << ' ' << e.v << " +\n";
    });
    return;
  }
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  g.ForEachEdge([&](const Edge& e) {
    out << e.u << ' ' << e.v << ' ' << SignChar(e.sign) << ' ' << FormatDouble(e.weight)
        << '\n';
  });
}

void WriteEdgeListFile(const SignedGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ContractViolation("cannot write " + path);
  WriteEdgeList(g, out);
}

}  // namespace dpcc
