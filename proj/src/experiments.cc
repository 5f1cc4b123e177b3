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

#include "dpcc/experiments.h"

#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "dpcc/cluster_transforms.h"
#include "dpcc/edge_list.h"
#include "dpcc/exp_mech.h"
#include "dpcc/lower_bound.h"
#include "dpcc/release_weighted.h"
#include "dpcc/status.h"

namespace dpcc {
namespace {

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string Optional(const std::optional<double>& value) {
  return value ? FormatDouble(*value) : "";
}

nlohmann::json OptionalJson(const std::optional<double>& value) {
  return value ? nlohmann::json(*value) : nlohmann::json(nullptr);
}

bool CoarsenEnabled(const PipelineConfig& config) {
  return config.coarsen < 0 ? config.mechanism == "unweighted" : config.coarsen > 0;
}

Clustering RunSolver(const SignedGraph& h, const PipelineConfig& config, uint64_t seed) {
  SolverConfig cfg = config.solver_config;
  cfg.seed = seed;
  if (config.solver == "auto") return Solve(h, cfg);
  if (config.solver == "exact") return SolveExact(h, cfg);
  Rng rng(seed);
  Clustering c = Pivot(h, rng);
  if (cfg.max_clusters > 0) c = ReduceClusters(h, c, cfg.max_clusters);
  if (config.solver == "pivot") return c;
  if (config.solver == "local") return LocalSearch(h, c, cfg);
  throw ContractViolation("unknown solver '" + config.solver + "'");
}

}  // namespace

void InstanceSpec::Validate() const {
  Require(kind == "planted" || kind == "random-signs" || kind == "path" ||
              kind == "weighted-random" || kind == "file",
          "unknown instance kind '" + kind + "'");
  if (kind == "file") {
    Require(!path.empty(), "file instances need a path");
    return;
  }
  Require(n >= 2, "instances need n >= 2");
  Require(p >= 0.0 && p <= 1.0, "flip probability must lie in [0, 1]");
  Require(positive_prob >= 0.0 && positive_prob <= 1.0,
          "positive probability must lie in [0, 1]");
  Require(density >= 0.0 && density <= 1.0, "density must lie in [0, 1]");
  Require(max_weight > 0.0 && std::isfinite(max_weight), "max weight must be positive");
  if (kind == "planted" || kind == "weighted-random") {
    Require(k >= 1 && k <= n, "planted cluster count must lie in [1, n]");
  }
}

std::string InstanceSpec::Descriptor() const {
  std::ostringstream out;
  out << kind << '(';
  if (kind == "file") {
    out << "path=" << path;
  } else {
    out << "n=" << n;
    if (kind == "planted" || kind == "weighted-random") {
      out << ",k=" << k << ",p=" << FormatDouble(p);
    }
    if (kind == "random-signs" || kind == "path") {
      out << ",positive=" << FormatDouble(positive_prob);
    }
    if (kind == "weighted-random") {
      out << ",density=" << FormatDouble(density) << ",max_weight=" << FormatDouble(max_weight);
    }
    out << ",seed=" << seed;
  }
  out << ')';
  return out.str();
}

nlohmann::json InstanceSpec::ToJson() const {
  return {{"kind", kind},         {"n", n},
          {"k", k},               {"p", p},
          {"positive_prob", positive_prob}, {"density", density},
          {"max_weight", max_weight}, {"path", path},
          {"seed", seed}};
}

InstanceSpec InstanceSpec::FromJson(const nlohmann::json& j) {
  InstanceSpec spec;
  spec.kind = j.value("kind", spec.kind);
  spec.n = j.value("n", spec.n);
  spec.k = j.value("k", spec.k);
  spec.p = j.value("p", spec.p);
  spec.positive_prob = j.value("positive_prob", spec.positive_prob);
  spec.density = j.value("density", spec.density);
  spec.max_weight = j.value("max_weight", spec.max_weight);
  spec.path = j.value("path", spec.path);
  spec.seed = j.value("seed", spec.seed);
  spec.Validate();
  return spec;
}

GeneratedInstance GenerateInstance(const InstanceSpec& spec) {
  spec.Validate();
  if (spec.kind == "file") return {ReadEdgeListFile(spec.path), std::nullopt};
  Rng rng(spec.seed);
  const int n = spec.n;
  if (spec.kind == "path") {
    SignVector sigma(n - 1);
    for (Sign& s : sigma) {
      s = rng.Bernoulli(spec.positive_prob) ? Sign::kPositive : Sign::kNegative;
    }
    return {PathGraph(sigma), OptimalPathClustering(sigma)};
  }
  if (spec.kind == "random-signs") {
    std::vector<bool> positive(NumPairs(n));
    for (size_t e = 0; e < positive.size(); ++e) positive[e] = rng.Bernoulli(spec.positive_prob);
    return {SignedGraph::CompleteUnweighted(n, positive), std::nullopt};
  }
  std::vector<int> labels(n);
  for (int v = 0; v < n; ++v) {
    labels[v] = static_cast<int>(static_cast<int64_t>(v) * spec.k / n);
  }
  Clustering planted = Clustering::FromLabels(labels);
  if (spec.kind == "planted") {
    std::vector<bool> positive(NumPairs(n));
    size_t idx = 0;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v, ++idx) {
        const bool agree = labels[u] == labels[v];
        positive[idx] = rng.Bernoulli(spec.p) ? !agree : agree;
      }
    }
    return {SignedGraph::CompleteUnweighted(n, positive), std::move(planted)};
  }
  // weighted-random
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (!rng.Bernoulli(spec.density)) continue;
      const bool agree = labels[u] == labels[v];
      const bool positive = rng.Bernoulli(spec.p) ? !agree : agree;
      const double w = spec.max_weight * rng.UniformOpen();
      edges.push_back({u, v, w, positive ? Sign::kPositive : Sign::kNegative});
    }
  }
  return {SignedGraph(n, std::move(edges)), std::move(planted)};
}

nlohmann::json PipelineConfig::ToJson() const {
  return {{"mechanism", mechanism},
          {"solver", solver},
          {"objective", ObjectiveName(solver_config.objective)},
          {"k", solver_config.max_clusters},
          {"restarts", solver_config.restarts},
          {"max_passes", solver_config.max_passes},
          {"merge_strategy", MergeStrategyName(merge.strategy)},
          {"constraint_budget", merge.constraint_budget},
          {"iterations", merge.iterations},
          {"engine", engine},
          {"unsafe_zero_noise", unsafe_zero_noise},
          {"coarsen", coarsen},
          {"k_prime", k_prime}};
}

PipelineConfig PipelineConfig::FromJson(const nlohmann::json& j) {
  PipelineConfig c;
  c.mechanism = j.value("mechanism", c.mechanism);
  c.solver = j.value("solver", c.solver);
  c.solver_config.objective = ParseObjective(j.value("objective", std::string("mindis")));
  c.solver_config.max_clusters = j.value("k", 0);
  c.solver_config.restarts = j.value("restarts", c.solver_config.restarts);
  c.solver_config.max_passes = j.value("max_passes", c.solver_config.max_passes);
  c.merge.strategy = ParseMergeStrategy(j.value("merge_strategy", std::string("sampled-lp")));
  c.merge.constraint_budget = j.value("constraint_budget", c.merge.constraint_budget);
  c.merge.iterations = j.value("iterations", c.merge.iterations);
  c.engine = j.value("engine", c.engine);
  c.unsafe_zero_noise = j.value("unsafe_zero_noise", c.unsafe_zero_noise);
  c.coarsen = j.value("coarsen", c.coarsen);
  c.k_prime = j.value("k_prime", c.k_prime);
  Require(c.mechanism == "unweighted" || c.mechanism == "weighted" ||
              c.mechanism == "expmech" || c.mechanism == "nonprivate",
          "unknown mechanism '" + c.mechanism + "'");
  Require(c.solver == "auto" || c.solver == "exact" || c.solver == "pivot" ||
              c.solver == "local",
          "unknown solver '" + c.solver + "'");
  return c;
}

std::string PipelineConfig::Id() const { return mechanism + "/" + solver; }

std::string ExperimentRecord::CsvHeader() {
  return "key,instance,instance_seed,mechanism,solver,objective,epsilon,delta,seed,err,agr,"
         "total_weight,k_out,planted_cost,err_release,eta_output,eta_planted,release_lambda,"
         "noise_scale,advertised_error,coarsen_k_before,coarsen_k_after,merge_cost_bound,"
         "nonprivate_eval,unsafe_zero_noise,status,wall_ms";
}

std::string ExperimentRecord::ToCsv() const {
  std::ostringstream out;
  out << CsvField(key) << ',' << CsvField(instance) << ',' << instance_seed << ','
      << CsvField(mechanism) << ',' << CsvField(solver) << ',' << objective << ','
      << FormatDouble(epsilon) << ',' << FormatDouble(delta) << ',' << seed << ','
      << FormatDouble(err) << ',' << FormatDouble(agr) << ',' << FormatDouble(total_weight)
      << ',' << k_out << ',' << Optional(planted_cost) << ',' << FormatDouble(err_release)
      << ',' << FormatDouble(eta_output) << ',' << Optional(eta_planted) << ','
      << FormatDouble(release_lambda) << ',' << FormatDouble(noise_scale) << ','
      << FormatDouble(advertised_error) << ',' << coarsen_k_before << ',' << coarsen_k_after
      << ',' << FormatDouble(merge_cost_bound) << ',' << (nonprivate_eval ? "true" : "false")
      << ',' << (unsafe_zero_noise ? "true" : "false") << ',' << CsvField(status) << ','
      << Optional(wall_ms);
  return out.str();
}

nlohmann::json ExperimentRecord::ToJson() const {
  nlohmann::json j;
  j["key"] = key;
  j["instance"] = instance;
  j["instance_seed"] = instance_seed;
  j["mechanism"] = mechanism;
  j["solver"] = solver;
  j["objective"] = objective;
  j["epsilon"] = epsilon;
  j["delta"] = delta;
  j["seed"] = seed;
  j["err"] = err;
  j["agr"] = agr;
  j["total_weight"] = total_weight;
  j["k_out"] = k_out;
  j["planted_cost"] = OptionalJson(planted_cost);
  j["err_release"] = err_release;
  j["eta_output"] = eta_output;
  j["eta_planted"] = OptionalJson(eta_planted);
  j["release_lambda"] = release_lambda;
  j["noise_scale"] = noise_scale;
  j["advertised_error"] = advertised_error;
  j["coarsen"] = {{"k_before", coarsen_k_before},
                  {"k_after", coarsen_k_after},
                  {"merge_cost_bound", merge_cost_bound}};
  j["nonprivate_eval"] = nonprivate_eval;
  j["unsafe_zero_noise"] = unsafe_zero_noise;
  j["status"] = status;
  j["wall_ms"] = OptionalJson(wall_ms);
  return j;
}

PipelineResult RunPipeline(const SignedGraph& g, const PrivacyParams& params,
                           const PipelineConfig& config, Rng& rng,
                           const std::optional<Clustering>& planted) {
  const auto start = std::chrono::steady_clock::now();
  const int n = g.num_vertices();
  if (planted) Require(planted->num_vertices() == n, "planted clustering has the wrong size");
  ExperimentRecord record;
  record.solver = config.solver;
  record.objective = ObjectiveName(config.solver_config.objective);
  record.epsilon = params.epsilon;
  record.delta = params.delta;
  record.seed = rng.seed();
  record.unsafe_zero_noise = config.unsafe_zero_noise;

  Rng release_rng = rng.Stream(0);
  const uint64_t solver_seed = rng.Stream(1).Next();

  // h is the only graph the solving stages see.
  SignedGraph h;
  Clustering c;
  double weight_cap = 1.0;
  if (config.mechanism == "unweighted") {
    UnweightedReleaseConfig release_config{config.merge, config.unsafe_zero_noise};
    auto [released, report] = ReleaseUnweighted(g, params, release_config, release_rng);
    h = std::move(released);
    record.mechanism = report.mechanism;
    record.release_lambda = report.lambda;
    record.noise_scale = report.noise_scale;
    c = RunSolver(h, config, solver_seed);
  } else if (config.mechanism == "weighted") {
    const auto engine =
        MakeCutReleaser(config.unsafe_zero_noise ? "zero-noise-test" : config.engine);
    auto [released, report] = ReleaseWeighted(g, params, *engine, release_rng);
    h = std::move(released);
    record.mechanism = report.mechanism;
    record.noise_scale = report.noise_scale;
    record.advertised_error = report.advertised_error;
    const SplitGraph split = SplitTransform(h);
    c = Unsplit(RunSolver(split.graph, config, solver_seed), split);
    weight_cap = h.max_weight();
  } else if (config.mechanism == "expmech") {
    Require(!config.unsafe_zero_noise, "the exponential mechanism has no zero-noise mode");
    params.Validate(/*pure=*/true);
    record.mechanism = "expmech";
    h = g;
    c = ExponentialMechanism(g, params, config.solver_config.objective, release_rng);
  } else if (config.mechanism == "nonprivate") {
    record.mechanism = "nonprivate";
    record.unsafe_zero_noise = true;
    h = g;
    c = RunSolver(h, config, solver_seed);
    weight_cap = h.max_weight();
  } else {
    throw ContractViolation("unknown mechanism '" + config.mechanism + "'");
  }

  record.coarsen_k_before = record.coarsen_k_after = c.num_clusters();
  if (CoarsenEnabled(config)) {
    const int k_prime = config.k_prime > 0 ? config.k_prime : DefaultCoarsenTarget(n);
    auto [coarse, report] = Coarsen(c, n, k_prime, weight_cap);
    c = std::move(coarse);
    record.coarsen_k_before = report.k_before;
    record.coarsen_k_after = report.k_after;
    record.merge_cost_bound = report.merge_cost_bound;
  }

  // Evaluation only: reads the private graph to report the true costs.
  record.err = Disagreement(c, g);
  record.agr = Agreement(c, g);
  record.total_weight = g.total_weight();
  record.k_out = c.num_clusters();
  record.err_release = Disagreement(c, h);
  record.eta_output = std::abs(record.err - record.err_release);
  if (planted) {
    record.planted_cost = Disagreement(*planted, g);
    record.eta_planted = std::abs(*record.planted_cost - Disagreement(*planted, h));
  }
  if (config.timing) {
    record.wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  }
  return {std::move(c), std::move(record)};
}

MatrixConfig MatrixConfig::FromJson(const nlohmann::json& j) {
  MatrixConfig m;
  Require(j.is_object(), "matrix config must be a JSON object");
  for (const auto& spec : j.at("instances")) m.instances.push_back(InstanceSpec::FromJson(spec));
  m.epsilons = j.at("epsilons").get<std::vector<double>>();
  m.delta = j.value("delta", 0.0);
  for (const auto& p : j.at("pipelines")) m.pipelines.push_back(PipelineConfig::FromJson(p));
  m.seeds = j.at("seeds").get<std::vector<uint64_t>>();
  m.master_seed = j.value("master_seed", m.master_seed);
  m.threads = j.value("threads", m.threads);
  m.timing = j.value("timing", m.timing);
  Require(!m.instances.empty() && !m.epsilons.empty() && !m.pipelines.empty() &&
              !m.seeds.empty(),
          "matrix needs at least one instance, epsilon, pipeline and seed");
  return m;
}

MatrixConfig MatrixConfig::FromFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ContractViolation("cannot open matrix file '" + path + "'");
  try {
    return FromJson(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw ContractViolation("bad matrix file '" + path + "': " + e.what());
  }
}

size_t MatrixConfig::NumCells() const {
  return instances.size() * epsilons.size() * pipelines.size() * seeds.size();
}

OutputFormat ParseOutputFormat(const std::string& name) {
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "jsonl") return OutputFormat::kJsonl;
  throw ContractViolation("unknown output format '" + name + "'");
}

namespace {

struct Cell {
  size_t instance, epsilon, pipeline, seed;
};

Cell CellAt(const MatrixConfig& m, size_t index) {
  Cell c;
  c.seed = index % m.seeds.size();
  index /= m.seeds.size();
  c.pipeline = index % m.pipelines.size();
  index /= m.pipelines.size();
  c.epsilon = index % m.epsilons.size();
  c.instance = index / m.epsilons.size();
  return c;
}

std::string CellKey(const Cell& c) {
  return std::to_string(c.instance) + ":" + std::to_string(c.epsilon) + ":" +
         std::to_string(c.pipeline) + ":" + std::to_string(c.seed);
}

std::string RecordLine(const ExperimentRecord& r, OutputFormat format) {
  return (format == OutputFormat::kCsv ? r.ToCsv() : r.ToJson().dump()) + "\n";
}

// Number of complete records in an existing output; truncates the file to
// them. Returns 0 and leaves nothing behind when the file is absent.
size_t PrepareResume(const MatrixConfig& m, const std::string& path, OutputFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return 0;
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string content = buffer.str();
  in.close();
  std::vector<std::string> lines;
  size_t begin = 0, kept_bytes = 0;
  while (true) {
    const size_t end = content.find('\n', begin);
    if (end == std::string::npos) break;
    lines.push_back(content.substr(begin, end - begin));
    begin = end + 1;
    kept_bytes = begin;
  }
  size_t first = 0;
  if (format == OutputFormat::kCsv) {
    if (lines.empty()) {
      std::filesystem::resize_file(path, 0);
      return 0;
    }
    Require(lines[0] == ExperimentRecord::CsvHeader(),
            "existing output '" + path + "' has a different CSV header");
    first = 1;
  }
  size_t records = 0;
  for (size_t i = first; i < lines.size(); ++i, ++records) {
    Require(records < m.NumCells(), "existing output has more records than the matrix");
    std::string key;
    if (format == OutputFormat::kCsv) {
      key = lines[i].substr(0, lines[i].find(','));
    } else {
      try {
        key = nlohmann::json::parse(lines[i]).at("key").get<std::string>();
      } catch (const nlohmann::json::exception&) {
        throw ContractViolation("existing output has an unreadable record on line " +
                                std::to_string(i + 1));
      }
    }
    Require(key == CellKey(CellAt(m, records)),
            "existing output does not match the matrix at record " + std::to_string(records));
  }
  std::filesystem::resize_file(path, kept_bytes);
  return records;
}

}  // namespace

MatrixSummary RunMatrix(const MatrixConfig& config, const std::string& output_path,
                        OutputFormat format, bool resume) {
  MatrixSummary summary;
  summary.cells = config.NumCells();
  const size_t done = resume ? PrepareResume(config, output_path, format) : 0;
  summary.resumed = done;

  std::error_code ec;
  const bool append = resume && std::filesystem::exists(output_path, ec) &&
                      std::filesystem::file_size(output_path, ec) > 0;
  std::ofstream out(output_path, append ? std::ios::app | std::ios::binary
                                        : std::ios::trunc | std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output '" + output_path + "'");
  if (format == OutputFormat::kCsv && !append) out << ExperimentRecord::CsvHeader() << '\n';

  // Instances are generated once and shared read-only across workers.
  std::vector<std::optional<GeneratedInstance>> instances(config.instances.size());
  std::vector<std::string> instance_errors(config.instances.size());
  for (size_t i = 0; i < config.instances.size(); ++i) {
    try {
      instances[i] = GenerateInstance(config.instances[i]);
    } catch (const std::exception& e) {
      instance_errors[i] = e.what();
    }
  }

  const size_t total = summary.cells;
  std::vector<std::optional<std::string>> lines(total);
  std::vector<char> failed(total, 0);
  std::mutex mu;
  std::condition_variable ready;
  std::atomic<size_t> next{done};

  auto run_cell = [&](size_t index) {
    const Cell cell = CellAt(config, index);
    const InstanceSpec& spec = config.instances[cell.instance];
    PipelineConfig pipeline = config.pipelines[cell.pipeline];
    pipeline.timing = config.timing;
    const PrivacyParams params{config.epsilons[cell.epsilon], config.delta};
    const Rng seeded(SplitMix64(config.master_seed) ^ config.seeds[cell.seed]);
    Rng rng = seeded.Stream(index / config.seeds.size());
    ExperimentRecord record;
    bool error = false;
    try {
      if (!instances[cell.instance]) throw std::runtime_error(instance_errors[cell.instance]);
      const GeneratedInstance& inst = *instances[cell.instance];
      record = RunPipeline(inst.graph, params, pipeline, rng, inst.planted).record;
    } catch (const std::exception& e) {
      record = ExperimentRecord();
      record.mechanism = pipeline.mechanism;
      record.solver = pipeline.solver;
      record.objective = ObjectiveName(pipeline.solver_config.objective);
      record.epsilon = params.epsilon;
      record.delta = params.delta;
      record.seed = rng.seed();
      record.status = std::string("error: ") + e.what();
      error = true;
    }
    record.key = CellKey(cell);
    record.instance = spec.Descriptor();
    record.instance_seed = spec.seed;
    std::string line = RecordLine(record, format);
    std::lock_guard<std::mutex> lock(mu);
    lines[index] = std::move(line);
    failed[index] = error;
    ready.notify_all();
  };

  int threads = config.threads > 0 ? config.threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min<int>(threads, static_cast<int>(total - done)));
  std::vector<std::thread> workers;
  if (total > done) {
    for (int w = 0; w < threads; ++w) {
      workers.emplace_back([&] {
        for (size_t index = next++; index < total; index = next++) run_cell(index);
      });
    }
  }
  // Single writer, strictly in cell order.
  for (size_t index = done; index < total; ++index) {
    std::string line;
    {
      std::unique_lock<std::mutex> lock(mu);
      ready.wait(lock, [&] { return lines[index].has_value(); });
      line = std::move(*lines[index]);
      lines[index].reset();
      summary.failed += failed[index];
    }
    out << line;
    out.flush();
    if (!out) {
      for (std::thread& t : workers) t.join();
      throw std::runtime_error("write to '" + output_path + "' failed");
    }
    ++summary.written;
  }
  for (std::thread& t : workers) t.join();
  return summary;
}

}  // namespace dpcc
