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

// dpcc: private correlation clustering from the command line.
//
// Exit codes: 0 ok, 1 other failure, 2 contract violation (bad input or
// flags), 3 refusal (size limit of an exhaustive algorithm).

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "dpcc/cluster_transforms.h"
#include "dpcc/edge_list.h"
#include "dpcc/exp_mech.h"
#include "dpcc/experiments.h"
#include "dpcc/lower_bound.h"
#include "dpcc/partitions.h"
#include "dpcc/release_unweighted.h"
#include "dpcc/release_weighted.h"
#include "dpcc/solvers.h"
#include "dpcc/status.h"
#include "json.hpp"

namespace dpcc {
namespace {

// Writes to the --output path, or stdout when it is empty.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw ContractViolation("cannot open output '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

struct CommonFlags {
  double epsilon = 1.0;
  double delta = 0.0;
  uint64_t seed = 1;
  std::string input;
  std::string output;
  std::string format = "csv";
  std::string mechanism = "unweighted";
  std::string solver = "auto";
  int k = 0;
};

void AddInstanceFlags(CLI::App* app, InstanceSpec& spec) {
  app->add_option("--kind", spec.kind, "planted, random-signs, path or weighted-random")
      ->capture_default_str();
  app->add_option("--n", spec.n, "vertex count")->capture_default_str();
  app->add_option("--clusters", spec.k, "planted cluster count")->capture_default_str();
  app->add_option("--p", spec.p, "sign flip probability")->capture_default_str();
  app->add_option("--positive-prob", spec.positive_prob)->capture_default_str();
  app->add_option("--density", spec.density)->capture_default_str();
  app->add_option("--max-weight", spec.max_weight)->capture_default_str();
  app->add_option("--instance-seed", spec.seed)->capture_default_str();
}

void AddMergeFlags(CLI::App* app, std::string& strategy, MergeOptions& merge) {
  app->add_option("--merge-strategy", strategy, "sampled-lp or per-edge")
      ->capture_default_str();
  app->add_option("--constraint-budget", merge.constraint_budget, "-1 means 4n")
      ->capture_default_str();
  app->add_option("--iterations", merge.iterations)->capture_default_str();
}

std::string LabelsJson(const Clustering& c) { return nlohmann::json(c.labels()).dump(); }

int RunVerifyDp(int n, int instances, const std::vector<double>& epsilons, uint64_t seed,
                std::ostream& out) {
  const Rng master(seed);
  bool all_ok = true;
  out << "epsilon,instances,neighbors,max_log_ratio,bound,ok\n";
  for (double eps : epsilons) {
    double worst = 0.0;
    int neighbors = 0;
    for (int i = 0; i < instances; ++i) {
      Rng rng = master.Stream(i);
      std::vector<bool> positive(NumPairs(n));
      for (size_t e = 0; e < positive.size(); ++e) positive[e] = rng.Bernoulli(0.5);
      const SignedGraph g = SignedGraph::CompleteUnweighted(n, positive);
      const auto base = ExactOutputDistribution(g, {eps, 0.0}, Objective::kMinDis);
      for (size_t e = 0; e < positive.size(); ++e) {
        std::vector<bool> flipped = positive;
        flipped[e] = !flipped[e];
        const auto other = ExactOutputDistribution(SignedGraph::CompleteUnweighted(n, flipped),
                                                   {eps, 0.0}, Objective::kMinDis);
        for (size_t c = 0; c < base.size(); ++c) {
          worst = std::max(worst,
                           std::abs(base[c].log_probability - other[c].log_probability));
        }
        ++neighbors;
      }
    }
    const bool ok = worst <= eps + 1e-9;
    all_ok = all_ok && ok;
    out << FormatDouble(eps) << ',' << instances << ',' << neighbors << ','
        << FormatDouble(worst) << ',' << FormatDouble(eps) << ',' << (ok ? "true" : "false")
        << '\n';
  }
  return all_ok ? 0 : 1;
}

int Main(int argc, char** argv) {
  CLI::App app{"Differentially private correlation clustering via synthetic graph release"};
  app.require_subcommand(1);
  CommonFlags f;

  // generate
  InstanceSpec gen_spec;
  std::string truth_path;
  CLI::App* generate = app.add_subcommand("generate", "write a random instance as an edge list");
  AddInstanceFlags(generate, gen_spec);
  generate->add_option("--output", f.output, "edge-list path (default stdout)");
  generate->add_option("--truth", truth_path, "write the planted clustering labels here");

  // release
  std::string release_strategy = "sampled-lp";
  MergeOptions release_merge;
  std::string engine = "laplace";
  std::string report_path;
  bool unsafe = false;
  CLI::App* release = app.add_subcommand("release", "release a private synthetic graph");
  release->add_option("--input", f.input, "edge-list of the private graph")->required();
  release->add_option("--mechanism", f.mechanism, "unweighted or weighted")
      ->capture_default_str();
  release->add_option("--epsilon", f.epsilon)->capture_default_str();
  release->add_option("--delta", f.delta)->capture_default_str();
  release->add_option("--seed", f.seed)->capture_default_str();
  release->add_option("--engine", engine, "laplace, laplace-clip, zero-noise-test")
      ->capture_default_str();
  AddMergeFlags(release, release_strategy, release_merge);
  release->add_option("--output", f.output, "edge-list path (default stdout)");
  release->add_option("--report", report_path, "write the release report JSON here");
  release->add_flag("--unsafe-zero-noise", unsafe, "skip the noise (NOT PRIVATE)");

  // cluster
  SolverConfig cluster_cfg;
  std::string objective = "mindis";
  CLI::App* cluster = app.add_subcommand("cluster", "solve correlation clustering (non-private)");
  cluster->add_option("--input", f.input)->required();
  cluster->add_option("--solver", f.solver, "auto, exact, pivot or local")->capture_default_str();
  cluster->add_option("--objective", objective, "mindis or maxagr")->capture_default_str();
  cluster->add_option("--k", f.k, "maximum cluster count (0: any)")->capture_default_str();
  cluster->add_option("--seed", f.seed)->capture_default_str();
  cluster->add_option("--restarts", cluster_cfg.restarts)->capture_default_str();
  cluster->add_option("--output", f.output);

  // pipeline
  InstanceSpec pipe_spec;
  std::string pipe_strategy = "sampled-lp";
  PipelineConfig pipe_cfg;
  std::string pipe_objective = "mindis";
  int pipe_coarsen = -1;
  CLI::App* pipeline = app.add_subcommand("pipeline", "release, solve and evaluate one run");
  pipeline->add_option("--input", f.input, "edge-list (otherwise an instance is generated)");
  AddInstanceFlags(pipeline, pipe_spec);
  pipeline->add_option("--mechanism", pipe_cfg.mechanism,
                       "unweighted, weighted, expmech or nonprivate")
      ->capture_default_str();
  pipeline->add_option("--solver", pipe_cfg.solver)->capture_default_str();
  pipeline->add_option("--objective", pipe_objective)->capture_default_str();
  pipeline->add_option("--k", pipe_cfg.solver_config.max_clusters)->capture_default_str();
  pipeline->add_option("--engine", pipe_cfg.engine)->capture_default_str();
  pipeline->add_option("--coarsen", pipe_coarsen, "1 on, 0 off, -1 default")
      ->capture_default_str();
  pipeline->add_option("--k-prime", pipe_cfg.k_prime, "coarsening target (0: n^(1/4))");
  AddMergeFlags(pipeline, pipe_strategy, pipe_cfg.merge);
  pipeline->add_option("--epsilon", f.epsilon)->capture_default_str();
  pipeline->add_option("--delta", f.delta)->capture_default_str();
  pipeline->add_option("--seed", f.seed)->capture_default_str();
  pipeline->add_option("--format", f.format, "csv or jsonl")->capture_default_str();
  pipeline->add_option("--output", f.output);
  pipeline->add_flag("--unsafe-zero-noise", pipe_cfg.unsafe_zero_noise,
                     "skip the noise (NOT PRIVATE)");
  pipeline->add_flag("--timing", pipe_cfg.timing, "record wall time (breaks byte identity)");

  // matrix
  std::string matrix_path;
  bool resume = false;
  int matrix_threads = -1;
  CLI::App* matrix = app.add_subcommand("matrix", "run an experiment matrix");
  matrix->add_option("--config", matrix_path, "matrix JSON file")->required();
  matrix->add_option("--output", f.output)->required();
  matrix->add_option("--format", f.format, "csv or jsonl")->capture_default_str();
  matrix->add_option("--threads", matrix_threads, "override the worker count");
  matrix->add_flag("--resume", resume, "keep complete records already in --output");

  // verify-dp
  int dp_n = 5, dp_instances = 50;
  std::vector<double> dp_eps{0.1, 1.0, 5.0};
  CLI::App* verify =
      app.add_subcommand("verify-dp", "check the exponential mechanism's DP ratio exactly");
  verify->add_option("--n", dp_n)->capture_default_str();
  verify->add_option("--instances", dp_instances)->capture_default_str();
  verify->add_option("--epsilon", dp_eps)->capture_default_str();
  verify->add_option("--seed", f.seed)->capture_default_str();
  verify->add_option("--output", f.output);

  // lowerbound
  int lb_n = 10, lb_reps = 5, lb_threads = 0;
  double lb_beta = 0.1, lb_lambda = 1.0;
  size_t lb_target = 256;
  int64_t lb_budget = 1000000;
  std::string lb_mechanism = "expmech";
  CLI::App* lowerbound = app.add_subcommand("lowerbound", "packing experiment on signed paths");
  lowerbound->add_option("--n", lb_n, "path edges")->capture_default_str();
  lowerbound->add_option("--beta", lb_beta)->capture_default_str();
  lowerbound->add_option("--target", lb_target, "codewords wanted")->capture_default_str();
  lowerbound->add_option("--budget", lb_budget, "codeword draws")->capture_default_str();
  lowerbound->add_option("--lambda", lb_lambda, "path edge weight")->capture_default_str();
  lowerbound->add_option("--reps", lb_reps)->capture_default_str();
  lowerbound->add_option("--mechanism", lb_mechanism, "expmech or nonprivate")
      ->capture_default_str();
  lowerbound->add_option("--epsilon", f.epsilon)->capture_default_str();
  lowerbound->add_option("--seed", f.seed)->capture_default_str();
  lowerbound->add_option("--threads", lb_threads)->capture_default_str();
  lowerbound->add_option("--output", f.output);

  // audit-cuts
  std::string released_path;
  int samples = 256;
  std::string audit_strategy = "sampled-lp";
  MergeOptions audit_merge;
  CLI::App* audit = app.add_subcommand(
      "audit-cuts", "sampled cut distance between two graphs, or of a fresh release");
  audit->add_option("--input", f.input)->required();
  audit->add_option("--released", released_path, "compare against this edge list");
  audit->add_option("--samples", samples)->capture_default_str();
  audit->add_option("--epsilon", f.epsilon)->capture_default_str();
  audit->add_option("--seed", f.seed)->capture_default_str();
  AddMergeFlags(audit, audit_strategy, audit_merge);
  audit->add_option("--output", f.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  if (generate->parsed()) {
    const GeneratedInstance inst = GenerateInstance(gen_spec);
    Output out(f.output);
    WriteEdgeList(inst.graph, out.stream());
    if (!truth_path.empty()) {
      Require(inst.planted.has_value(), "this instance kind has no planted clustering");
      Output truth(truth_path);
      truth.stream() << LabelsJson(*inst.planted) << "\n";
    }
    return 0;
  }

  if (release->parsed()) {
    const SignedGraph g = ReadEdgeListFile(f.input);
    Rng rng(f.seed);
    const PrivacyParams params{f.epsilon, f.delta};
    std::pair<SignedGraph, ReleaseReport> result;
    if (f.mechanism == "unweighted") {
      release_merge.strategy = ParseMergeStrategy(release_strategy);
      result = ReleaseUnweighted(g, params, {release_merge, unsafe}, rng);
    } else if (f.mechanism == "weighted") {
      const auto releaser = MakeCutReleaser(unsafe ? "zero-noise-test" : engine);
      result = ReleaseWeighted(g, params, *releaser, rng);
    } else {
      throw ContractViolation("release mechanism must be unweighted or weighted");
    }
    Output out(f.output);
    WriteEdgeList(result.first, out.stream());
    if (!report_path.empty()) {
      Output report(report_path);
      report.stream() << result.second.ToJson().dump(2) << "\n";
    } else if (!f.output.empty()) {
      std::cout << result.second.ToJson().dump(2) << "\n";
    }
    return 0;
  }

  if (cluster->parsed()) {
    const SignedGraph g = ReadEdgeListFile(f.input);
    PipelineConfig cfg;
    cfg.mechanism = "nonprivate";
    cfg.solver = f.solver;
    cfg.solver_config = cluster_cfg;
    cfg.solver_config.objective = ParseObjective(objective);
    cfg.solver_config.max_clusters = f.k;
    cfg.coarsen = 0;
    Rng rng(f.seed);
    const PipelineResult result = RunPipeline(g, {1.0, 0.0}, cfg, rng);
    Output out(f.output);
    nlohmann::json j{{"labels", result.clustering.labels()},
                     {"k", result.clustering.num_clusters()},
                     {"err", result.record.err},
                     {"agr", result.record.agr}};
    out.stream() << j.dump() << "\n";
    return 0;
  }

  if (pipeline->parsed()) {
    pipe_cfg.solver_config.objective = ParseObjective(pipe_objective);
    pipe_cfg.merge.strategy = ParseMergeStrategy(pipe_strategy);
    pipe_cfg.coarsen = pipe_coarsen;
    GeneratedInstance inst;
    std::string descriptor;
    if (!f.input.empty()) {
      inst.graph = ReadEdgeListFile(f.input);
      descriptor = "file(path=" + f.input + ")";
    } else {
      inst = GenerateInstance(pipe_spec);
      descriptor = pipe_spec.Descriptor();
    }
    Rng rng(f.seed);
    PipelineResult result =
        RunPipeline(inst.graph, {f.epsilon, f.delta}, pipe_cfg, rng, inst.planted);
    result.record.key = "0:0:0:0";
    result.record.instance = descriptor;
    result.record.instance_seed = f.input.empty() ? pipe_spec.seed : 0;
    Output out(f.output);
    if (ParseOutputFormat(f.format) == OutputFormat::kCsv) {
      out.stream() << ExperimentRecord::CsvHeader() << "\n" << result.record.ToCsv() << "\n";
    } else {
      out.stream() << result.record.ToJson().dump() << "\n";
    }
    return 0;
  }

  if (matrix->parsed()) {
    MatrixConfig config = MatrixConfig::FromFile(matrix_path);
    if (matrix_threads >= 0) config.threads = matrix_threads;
    const MatrixSummary s = RunMatrix(config, f.output, ParseOutputFormat(f.format), resume);
    std::cerr << "cells " << s.cells << ", resumed " << s.resumed << ", written " << s.written
              << ", failed " << s.failed << "\n";
    return 0;
  }

  if (verify->parsed()) {
    Require(dp_instances >= 1, "need at least one instance");
    Output out(f.output);
    return RunVerifyDp(dp_n, dp_instances, dp_eps, f.seed, out.stream());
  }

  if (lowerbound->parsed()) {
    Rng rng(f.seed);
    Rng code_rng = rng.Stream(0);
    const Codebook code = BruteForceCode(lb_n, lb_beta, lb_target, code_rng, lb_budget);
    ClusteringMechanism mechanism;
    const double eps = f.epsilon;
    if (lb_mechanism == "expmech") {
      mechanism = [eps](const SignedGraph& g, Rng& r) {
        return ExponentialMechanism(g, {eps, 0.0}, Objective::kMinDis, r);
      };
    } else if (lb_mechanism == "nonprivate") {
      mechanism = [](const SignedGraph& g, Rng& r) {
        SolverConfig cfg;
        cfg.seed = r.Next();
        cfg.threads = 1;
        return Solve(g, cfg);
      };
    } else {
      throw ContractViolation("lowerbound mechanism must be expmech or nonprivate");
    }
    const PackingReport report =
        PackingExperiment(mechanism, code, eps, lb_lambda, lb_reps, rng.Stream(1).seed(),
                          lb_threads > 0 ? lb_threads
                                         : static_cast<int>(std::thread::hardware_concurrency()));
    Output out(f.output);
    out.stream() << report.ToCsv();
    std::cerr << "codewords " << code.size() << (code.reached_target ? "" : " (target missed)")
              << ", rate " << FormatDouble(code.RateBits()) << " bits, alpha "
              << FormatDouble(report.alpha) << ", mean error "
              << FormatDouble(report.MeanError()) << ", theory bound "
              << FormatDouble(report.theory_bound)
              << (report.bound_applies ? "" : " (not implied above epsilon 0.2)") << "\n";
    return 0;
  }

  if (audit->parsed()) {
    const SignedGraph g = ReadEdgeListFile(f.input);
    Rng rng(f.seed);
    nlohmann::json j;
    SignedGraph h;
    if (!released_path.empty()) {
      h = ReadEdgeListFile(released_path);
    } else {
      audit_merge.strategy = ParseMergeStrategy(audit_strategy);
      auto [released, report] = ReleaseUnweighted(g, {f.epsilon, 0.0}, {audit_merge, false}, rng);
      h = std::move(released);
      j = report.AuditJson();
    }
    Require(h.num_vertices() == g.num_vertices(), "graphs have different vertex counts");
    Rng cut_rng = rng.Stream(7);
    j["samples"] = samples;
    j["d_cut_plus"] = SampledCutDistance(WeightedChannel::FromGraph(g, Sign::kPositive),
                                         WeightedChannel::FromGraph(h, Sign::kPositive),
                                         samples, cut_rng);
    j["d_cut_minus"] = SampledCutDistance(WeightedChannel::FromGraph(g, Sign::kNegative),
                                          WeightedChannel::FromGraph(h, Sign::kNegative),
                                          samples, cut_rng);
    Output out(f.output);
    out.stream() << j.dump(2) << "\n";
    return 0;
  }
  return 0;
}

}  // namespace
}  // namespace dpcc

int main(int argc, char** argv) {
  try {
    return dpcc::Main(argc, argv);
  } catch (const dpcc::ContractViolation& e) {
    std::cerr << "contract violation: " << e.what() << "\n";
    return 2;
  } catch (const dpcc::Refusal& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
