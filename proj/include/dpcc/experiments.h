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

// Instance generators, release-then-solve pipelines and the experiment
// matrix runner.
//
// A pipeline releases a synthetic graph H from the private graph G, solves
// correlation clustering on H and optionally coarsens the result. Only the
// evaluation step reads G again, to report err and agr on the true graph;
// records carry nonprivate_eval = true to say so.

#ifndef DPCC_EXPERIMENTS_H_
#define DPCC_EXPERIMENTS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dpcc/graph.h"
#include "dpcc/release_unweighted.h"
#include "dpcc/rng.h"
#include "dpcc/solvers.h"
#include "json.hpp"

namespace dpcc {

struct InstanceSpec {
  // planted, random-signs, path, weighted-random or file.
  std::string kind = "planted";
  int n = 50;
  int k = 4;                    // planted clusters (planted, weighted-random)
  double p = 0.05;              // sign flip probability (planted, weighted-random)
  double positive_prob = 0.5;   // random-signs and path
  double density = 0.3;         // weighted-random: probability a pair has an edge
  double max_weight = 4.0;      // weighted-random: weights uniform in (0, max_weight]
  std::string path;             // file
  uint64_t seed = 1;

  // Throws ContractViolation on bad fields.
  void Validate() const;
  // Short stable description, e.g. "planted(n=50,k=4,p=0.05,seed=1)".
  std::string Descriptor() const;
  nlohmann::json ToJson() const;
  static InstanceSpec FromJson(const nlohmann::json& j);
};

struct GeneratedInstance {
  SignedGraph graph;
  std::optional<Clustering> planted;
};

// planted: k near-equal contiguous blocks, every pair signed to agree with
// them, then each sign flipped with probability p. random-signs: complete,
// positive with probability positive_prob. path: n - 1 edges with random
// signs. weighted-random: planted signs on a random subset of pairs with
// uniform weights. file: read from an edge list.
GeneratedInstance GenerateInstance(const InstanceSpec& spec);

struct PipelineConfig {
  // unweighted (release, solve, coarsen), weighted (release, split, solve,
  // unsplit), expmech (exponential mechanism on G) or nonprivate (solve G).
  std::string mechanism = "unweighted";
  // auto (exact when small, else restarts), exact, pivot or local.
  std::string solver = "auto";
  SolverConfig solver_config;
  MergeOptions merge;
  std::string engine = "laplace";
  bool unsafe_zero_noise = false;
  // Coarsen the solver output; -1 means on for the unweighted mechanism only.
  int coarsen = -1;
  int k_prime = 0;  // 0: ceil(n^(1/4))
  bool timing = false;

  nlohmann::json ToJson() const;
  static PipelineConfig FromJson(const nlohmann::json& j);
  std::string Id() const;
};

struct ExperimentRecord {
  std::string key;
  std::string instance;
  uint64_t instance_seed = 0;
  std::string mechanism;
  std::string solver;
  std::string objective;
  double epsilon = 0.0;
  double delta = 0.0;
  uint64_t seed = 0;
  // Evaluated on the private graph.
  double err = 0.0;
  double agr = 0.0;
  double total_weight = 0.0;
  int k_out = 0;
  std::optional<double> planted_cost;
  // Decomposition terms: cost of the output on the released graph and the
  // deviations |err(C, G) - err(C, H)| for the output and planted clusterings.
  double err_release = 0.0;
  double eta_output = 0.0;
  std::optional<double> eta_planted;
  double release_lambda = 0.0;
  double noise_scale = 0.0;
  double advertised_error = 0.0;
  int coarsen_k_before = 0;
  int coarsen_k_after = 0;
  double merge_cost_bound = 0.0;
  bool nonprivate_eval = true;
  bool unsafe_zero_noise = false;
  std::string status = "ok";
  std::optional<double> wall_ms;

  static std::string CsvHeader();
  std::string ToCsv() const;
  nlohmann::json ToJson() const;
};

struct PipelineResult {
  Clustering clustering;
  ExperimentRecord record;
};

// Runs the configured pipeline on g. The release stage is the only one that
// sees g; solving and coarsening see the released graph. Throws
// ContractViolation for a mechanism that does not fit g (for example the
// unweighted release on a weighted graph).
PipelineResult RunPipeline(const SignedGraph& g, const PrivacyParams& params,
                           const PipelineConfig& config, Rng& rng,
                           const std::optional<Clustering>& planted = std::nullopt);

struct MatrixConfig {
  std::vector<InstanceSpec> instances;
  std::vector<double> epsilons;
  double delta = 0.0;
  std::vector<PipelineConfig> pipelines;
  std::vector<uint64_t> seeds;
  uint64_t master_seed = 1;
  int threads = 0;  // 0: hardware concurrency
  bool timing = false;

  static MatrixConfig FromJson(const nlohmann::json& j);
  static MatrixConfig FromFile(const std::string& path);
  size_t NumCells() const;
};

enum class OutputFormat { kCsv, kJsonl };
OutputFormat ParseOutputFormat(const std::string& name);

struct MatrixSummary {
  size_t cells = 0;
  size_t resumed = 0;  // already present in the output
  size_t written = 0;
  size_t failed = 0;   // written with an error status
};

// Runs every (instance, epsilon, pipeline, seed) cell, in that nesting
// order, writing records to output_path in cell order. Cell keys are
// "i:j:p:s". With resume, complete records already in the file are kept
// (a partial trailing line is dropped) and only the missing cells run; the
// result is identical to an uninterrupted run. A cell that throws is
// written with its error in the status field. Throws ContractViolation if
// the existing file does not match the matrix.
MatrixSummary RunMatrix(const MatrixConfig& config, const std::string& output_path,
                        OutputFormat format, bool resume);

}  // namespace dpcc

#endif  // DPCC_EXPERIMENTS_H_
