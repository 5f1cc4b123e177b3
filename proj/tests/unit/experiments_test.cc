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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dpcc/status.h"
#include "oracles/frozen_values.h"

namespace dpcc {
namespace {

namespace fs = std::filesystem;

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("dpcc_experiments_test_" + std::to_string(::testing::UnitTest::GetInstance()
                                                            ->random_seed()) +
             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

InstanceSpec Planted(int n, int k, double p, uint64_t seed) {
  InstanceSpec spec;
  spec.n = n;
  spec.k = k;
  spec.p = p;
  spec.seed = seed;
  return spec;
}

TEST(InstanceSpecTest, ValidationAndDescriptor) {
  InstanceSpec spec = Planted(50, 4, 0.05, 1);
  EXPECT_EQ(spec.Descriptor(), "planted(n=50,k=4,p=0.05,seed=1)");
  EXPECT_NO_THROW(spec.Validate());
  spec.k = 51;
  EXPECT_THROW(spec.Validate(), ContractViolation);
  spec = InstanceSpec();
  spec.kind = "grid";
  EXPECT_THROW(spec.Validate(), ContractViolation);
  spec.kind = "file";
  EXPECT_THROW(spec.Validate(), ContractViolation);
  spec = InstanceSpec();
  spec.p = 1.5;
  EXPECT_THROW(spec.Validate(), ContractViolation);
}

TEST(InstanceSpecTest, JsonRoundTrip) {
  InstanceSpec spec;
  spec.kind = "weighted-random";
  spec.n = 17;
  spec.density = 0.4;
  spec.seed = 99;
  const InstanceSpec back = InstanceSpec::FromJson(spec.ToJson());
  EXPECT_EQ(back.Descriptor(), spec.Descriptor());
  EXPECT_EQ(back.ToJson(), spec.ToJson());
}

TEST(GenerateInstanceTest, PlantedFlipCountIsBinomial) {
  const GeneratedInstance inst = GenerateInstance(Planted(100, 4, 0.05, 3));
  ASSERT_TRUE(inst.planted.has_value());
  EXPECT_EQ(inst.planted->num_clusters(), 4);
  EXPECT_EQ(inst.planted->ClusterSizes(), (std::vector<int>{25, 25, 25, 25}));
  EXPECT_TRUE(inst.graph.is_complete());
  EXPECT_NEAR(Disagreement(*inst.planted, inst.graph), frozen::kPlantedMean100,
              5 * frozen::kPlantedSigma100);
}

TEST(GenerateInstanceTest, DeterministicPerSeed) {
  const GeneratedInstance a = GenerateInstance(Planted(30, 3, 0.1, 5));
  const GeneratedInstance b = GenerateInstance(Planted(30, 3, 0.1, 5));
  const GeneratedInstance c = GenerateInstance(Planted(30, 3, 0.1, 6));
  EXPECT_EQ(NeighborDistance(a.graph, b.graph), 0.0);
  EXPECT_GT(NeighborDistance(a.graph, c.graph), 0.0);
}

TEST(GenerateInstanceTest, OtherKinds) {
  InstanceSpec spec;
  spec.kind = "path";
  spec.n = 20;
  const GeneratedInstance path = GenerateInstance(spec);
  EXPECT_EQ(path.graph.num_edges(), 19u);
  EXPECT_EQ(Disagreement(*path.planted, path.graph), 0.0);

  spec.kind = "random-signs";
  const GeneratedInstance random = GenerateInstance(spec);
  EXPECT_TRUE(random.graph.is_complete());
  EXPECT_FALSE(random.planted.has_value());

  spec.kind = "weighted-random";
  spec.density = 0.3;
  const GeneratedInstance weighted = GenerateInstance(spec);
  EXPECT_FALSE(weighted.graph.is_unweighted());
  EXPECT_LE(weighted.graph.max_weight(), spec.max_weight);
}

TEST(RunPipelineTest, ZeroNoiseUnweightedMatchesTruth) {
  const GeneratedInstance inst = GenerateInstance(Planted(40, 2, 0.0, 1));
  PipelineConfig config;
  config.unsafe_zero_noise = true;
  Rng rng(1);
  const PipelineResult result = RunPipeline(inst.graph, {1.0, 0.0}, config, rng, inst.planted);
  EXPECT_EQ(result.record.err, 0.0);
  EXPECT_EQ(result.clustering, *inst.planted);
  EXPECT_EQ(result.record.eta_output, 0.0);
  EXPECT_EQ(*result.record.eta_planted, 0.0);
  EXPECT_TRUE(result.record.unsafe_zero_noise);
  EXPECT_TRUE(result.record.nonprivate_eval);
}

TEST(RunPipelineTest, ZeroNoiseWeightedKeepsCosts) {
  InstanceSpec spec = Planted(6, 2, 0.1, 2);
  spec.kind = "weighted-random";
  spec.density = 0.8;
  const GeneratedInstance inst = GenerateInstance(spec);
  PipelineConfig config;
  config.mechanism = "weighted";
  config.unsafe_zero_noise = true;
  Rng rng(2);
  const PipelineResult result = RunPipeline(inst.graph, {0.5, 0.1}, config, rng, inst.planted);
  EXPECT_NEAR(result.record.eta_output, 0.0, 1e-9);
  EXPECT_EQ(result.record.mechanism, "weighted-zero-noise-test");
  EXPECT_LE(result.record.err, *result.record.planted_cost + 1e-9);
}

TEST(RunPipelineTest, MechanismsRunAndReportDeterministically) {
  const GeneratedInstance inst = GenerateInstance(Planted(8, 2, 0.1, 3));
  for (const char* mechanism : {"unweighted", "expmech", "nonprivate"}) {
    PipelineConfig config;
    config.mechanism = mechanism;
    Rng a(4), b(4);
    const auto x = RunPipeline(inst.graph, {1.0, 0.0}, config, a, inst.planted);
    const auto y = RunPipeline(inst.graph, {1.0, 0.0}, config, b, inst.planted);
    EXPECT_EQ(x.record.ToJson(), y.record.ToJson()) << mechanism;
    EXPECT_EQ(x.record.err + x.record.agr, x.record.total_weight);
    EXPECT_FALSE(x.record.wall_ms.has_value());
  }
}

TEST(RunPipelineTest, TimingIsOptIn) {
  const GeneratedInstance inst = GenerateInstance(Planted(8, 2, 0.1, 3));
  PipelineConfig config;
  config.timing = true;
  Rng rng(5);
  EXPECT_TRUE(RunPipeline(inst.graph, {1.0, 0.0}, config, rng).record.wall_ms.has_value());
}

TEST(RunPipelineTest, MismatchedMechanism) {
  InstanceSpec spec = Planted(10, 2, 0.1, 2);
  spec.kind = "weighted-random";
  const GeneratedInstance inst = GenerateInstance(spec);
  PipelineConfig config;
  Rng rng(6);
  EXPECT_THROW(RunPipeline(inst.graph, {1.0, 0.0}, config, rng), ContractViolation);
  config.mechanism = "magic";
  EXPECT_THROW(RunPipeline(inst.graph, {1.0, 0.0}, config, rng), ContractViolation);
}

TEST(PipelineConfigTest, JsonRoundTripAndValidation) {
  PipelineConfig config;
  config.mechanism = "weighted";
  config.solver = "local";
  config.merge.strategy = MergeStrategy::kPerEdge;
  config.solver_config.max_clusters = 3;
  EXPECT_EQ(PipelineConfig::FromJson(config.ToJson()).ToJson(), config.ToJson());
  EXPECT_THROW(PipelineConfig::FromJson({{"solver", "annealing"}}), ContractViolation);
  EXPECT_EQ(config.Id(), "weighted/local");
}

MatrixConfig SmallMatrix() {
  return MatrixConfig::FromJson(nlohmann::json::parse(R"({
    "instances": [{"kind": "planted", "n": 12, "k": 2, "p": 0.1, "seed": 1},
                  {"kind": "random-signs", "n": 14, "seed": 2},
                  {"kind": "planted", "n": 20, "k": 2, "seed": 3}],
    "epsilons": [0.5, 2.0],
    "pipelines": [{"mechanism": "unweighted", "solver": "local"},
                  {"mechanism": "expmech"}],
    "seeds": [1, 2],
    "master_seed": 7
  })"));
}

TEST(RunMatrixTest, ByteIdenticalAcrossRunsAndThreads) {
  TempDir dir;
  MatrixConfig config = SmallMatrix();
  config.threads = 1;
  for (OutputFormat format : {OutputFormat::kCsv, OutputFormat::kJsonl}) {
    const MatrixSummary s1 = RunMatrix(config, (dir / "one").string(), format, false);
    EXPECT_EQ(s1.cells, 24u);
    EXPECT_EQ(s1.written, 24u);
    // expmech on the 14- and 20-vertex instances is refused.
    EXPECT_EQ(s1.failed, 8u);
    config.threads = 4;
    RunMatrix(config, (dir / "four").string(), format, false);
    config.threads = 1;
    EXPECT_EQ(ReadFile(dir / "one"), ReadFile(dir / "four"));
  }
}

TEST(RunMatrixTest, ResumeAfterInterruption) {
  TempDir dir;
  const MatrixConfig config = SmallMatrix();
  for (OutputFormat format : {OutputFormat::kCsv, OutputFormat::kJsonl}) {
    const fs::path full = dir / "full", partial = dir / "partial";
    RunMatrix(config, full.string(), format, false);
    const std::string expected = ReadFile(full);
    // Keep ten records and half of the eleventh.
    size_t cut = 0;
    for (int i = 0; i < (format == OutputFormat::kCsv ? 11 : 10); ++i) {
      cut = expected.find('\n', cut) + 1;
    }
    const size_t half = cut + (expected.find('\n', cut) - cut) / 2;
    {
      std::ofstream out(partial, std::ios::binary | std::ios::trunc);
      out << expected.substr(0, half);
    }
    const MatrixSummary summary = RunMatrix(config, partial.string(), format, true);
    EXPECT_EQ(summary.resumed, 10u);
    EXPECT_EQ(summary.written, 14u);
    EXPECT_EQ(ReadFile(partial), expected);
    // Resuming a complete file writes nothing.
    EXPECT_EQ(RunMatrix(config, partial.string(), format, true).written, 0u);
    EXPECT_EQ(ReadFile(partial), expected);
  }
}

TEST(RunMatrixTest, ResumeRejectsForeignFiles) {
  TempDir dir;
  const fs::path path = dir / "other.csv";
  {
    std::ofstream out(path);
    out << "a,b,c\n1,2,3\n";
  }
  EXPECT_THROW(RunMatrix(SmallMatrix(), path.string(), OutputFormat::kCsv, true),
               ContractViolation);
  MatrixConfig other = SmallMatrix();
  RunMatrix(other, path.string(), OutputFormat::kJsonl, false);
  other.seeds = {1};
  EXPECT_THROW(RunMatrix(other, path.string(), OutputFormat::kJsonl, true), ContractViolation);
}

TEST(RunMatrixTest, RecordsCarryKeysInCellOrder) {
  TempDir dir;
  const fs::path path = dir / "out.jsonl";
  RunMatrix(SmallMatrix(), path.string(), OutputFormat::kJsonl, false);
  std::ifstream in(path);
  std::string line;
  std::vector<std::string> keys;
  while (std::getline(in, line)) keys.push_back(nlohmann::json::parse(line)["key"]);
  ASSERT_EQ(keys.size(), 24u);
  EXPECT_EQ(keys.front(), "0:0:0:0");
  EXPECT_EQ(keys[1], "0:0:0:1");
  EXPECT_EQ(keys[2], "0:0:1:0");
  EXPECT_EQ(keys.back(), "2:1:1:1");
}

TEST(MatrixConfigTest, RejectsIncompleteConfigs) {
  EXPECT_THROW(MatrixConfig::FromJson(nlohmann::json::parse(
                   R"({"instances": [], "epsilons": [1], "pipelines": [{}], "seeds": [1]})")),
               ContractViolation);
  EXPECT_THROW(MatrixConfig::FromFile("/nonexistent/matrix.json"), ContractViolation);
  EXPECT_THROW(ParseOutputFormat("xml"), ContractViolation);
}

}  // namespace
}  // namespace dpcc
