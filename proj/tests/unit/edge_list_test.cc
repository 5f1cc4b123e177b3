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

#include <gtest/gtest.h>

#include <sstream>
#include <string>

#include "dpcc/status.h"
#include "oracles/brute_force.h"

namespace dpcc {
namespace {

SignedGraph Parse(const std::string& text) {
  std::istringstream in(text);
  return ReadEdgeList(in);
}

std::string Write(const SignedGraph& g) {
  std::ostringstream out;
  WriteEdgeList(g, out);
  return out.str();
}

void ExpectSameGraph(const SignedGraph& a, const SignedGraph& b) {
  ASSERT_EQ(a.num_vertices(), b.num_vertices());
  EXPECT_EQ(a.num_edges(), b.num_edges());
  for (int u = 0; u < a.num_vertices(); ++u) {
    for (int v = u + 1; v < a.num_vertices(); ++v) {
      EXPECT_EQ(a.weights(u, v).positive, b.weights(u, v).positive);
      EXPECT_EQ(a.weights(u, v).negative, b.weights(u, v).negative);
    }
  }
}

TEST(EdgeListTest, ParsesWeightsCommentsAndDefaults) {
  const SignedGraph g = Parse("# tiny\n3 2\n0 1 + 2.5\n\n1 2 -\n");
  EXPECT_EQ(g.num_vertices(), 3);
  EXPECT_EQ(g.num_edges(), 2u);
  EXPECT_FALSE(g.is_complete());
  EXPECT_EQ(g.weights(0, 1).positive, 2.5);
  EXPECT_EQ(g.weights(1, 2).negative, 1.0);
}

TEST(EdgeListTest, CompleteShorthandFillsNegatives) {
  const SignedGraph g = Parse("4 1\ncomplete\n0 3 +\n");
  EXPECT_TRUE(g.is_complete());
  EXPECT_EQ(g.num_edges(), 6u);
  EXPECT_EQ(g.net_weight(0, 3), 1.0);
  EXPECT_EQ(g.net_weight(1, 2), -1.0);
}

TEST(EdgeListTest, BothSignsMakeADoubleEdgedGraph) {
  const SignedGraph g = Parse("2 2\n0 1 + 3\n0 1 - 1\n");
  EXPECT_TRUE(g.parallel_ok());
  EXPECT_EQ(g.net_weight(0, 1), 2.0);
}

TEST(EdgeListTest, MalformedInputReportsTheLine) {
  for (const char* bad : {"", "x y\n", "3 2\n0 1 +\n", "3 1\n0 1 *\n", "3 1\n0 5 +\n",
                          "3 1\n0 1 + abc\n", "3 1\n1 1 +\n"}) {
    EXPECT_THROW(Parse(bad), ContractViolation) << bad;
  }
  try {
    Parse("3 2\n0 1 +\n0 2 ?\n");
    FAIL();
  } catch (const ContractViolation& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(EdgeListTest, RoundTripsRandomGraphs) {
  Rng rng(4);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 11;
    SignedGraph g;
    switch (trial % 3) {
      case 0: g = oracle::RandomComplete(n, 0.4, rng); break;
      case 1: g = oracle::RandomWeighted(n, 0.5, 3.0, rng); break;
      default: g = oracle::RandomDoubleEdged(n, 0.5, 3.0, rng); break;
    }
    const std::string text = Write(g);
    const SignedGraph parsed = Parse(text);
    ExpectSameGraph(g, parsed);
    // The reader marks a graph complete once every pair carries an edge.
    bool covers_all_pairs = true;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        covers_all_pairs &= g.weights(u, v).positive + g.weights(u, v).negative > 0;
      }
    }
    EXPECT_EQ(parsed.is_complete(), g.is_complete() || covers_all_pairs);
    EXPECT_EQ(text, Write(Parse(text)));
  }
}

TEST(EdgeListTest, CompleteUnweightedUsesShorthand) {
  const SignedGraph g = SignedGraph::CompleteUnweighted(3, {true, false, false});
  EXPECT_EQ(Write(g), "3 1\ncomplete\n0 1 +\n");
}

TEST(FormatDoubleTest, ShortestRoundTrip) {
  EXPECT_EQ(FormatDouble(1.0), "1");
  EXPECT_EQ(FormatDouble(0.1), "0.1");
  EXPECT_EQ(std::stod(FormatDouble(1.0 / 3.0)), 1.0 / 3.0);
}

}  // namespace
}  // namespace dpcc
