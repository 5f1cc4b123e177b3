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

// Edge-list text format.
//
//   n m
//   [complete]
//   u v sign [weight]      (m lines; sign is '+' or '-', weight defaults to 1)
//
// Without the "complete" line the graph holds exactly the listed edges and
// is complete iff every pair is listed once. With it, every unlisted pair is
// a negative edge of weight 1, so a complete unweighted graph can be written
// by listing its positive edges only. A pair listed with both signs makes
// the graph double-edged.

#ifndef DPCC_EDGE_LIST_H_
#define DPCC_EDGE_LIST_H_

#include <iosfwd>
#include <string>

#include "dpcc/graph.h"

namespace dpcc {

// Throws ContractViolation with the offending line number on malformed input.
SignedGraph ReadEdgeList(std::istream& in);
SignedGraph ReadEdgeListFile(const std::string& path);

// Complete unweighted graphs use the "complete" shorthand; everything else
// is written edge by edge with shortest round-trip weights.
void WriteEdgeList(const SignedGraph& g, std::ostream& out);
void WriteEdgeListFile(const SignedGraph& g, const std::string& path);

// Shortest decimal representation that parses back to the same double.
std::string FormatDouble(double value);

}  // namespace dpcc

#endif  // DPCC_EDGE_LIST_H_
