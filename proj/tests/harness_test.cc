//
// Copyright 2026 The FRAPPE Authors
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

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "frappe/harness/config.h"
#include "frappe/harness/csv_io.h"
#include "frappe/harness/plan.h"
#include "frappe/harness/results.h"
#include "frappe/harness/runner.h"
#include "frappe/random.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace frappe::harness {
namespace {

using ::frappe::testing::IsOk;
using ::frappe::testing::RandomDataset;
using ::frappe::testing::StatusIs;
using ::testing::HasSubstr;

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string TempPath(const std::string& name) {
  return ::testing::TempDir() + "/" + name;
}

// A plan small enough to run many times per test.
ExperimentPlan TinyPlan() {
  ExperimentPlan plan = DefaultPlan(Scenario::kNoiseTable);
  plan.cells = CrossCells({300}, {8}, {2}, {1.0},
                          {NoiseFamily::kNormal, NoiseFamily::kCauchy});
  plan.replications = 2;
  plan.grid_size = 3;
  plan.frappe.outer_iters = 2;
  plan.frappe.inner_iters = 10;
  plan.frappe.subsample_size = 100;
  plan.frappe.init_max_iters = 200;
  plan.seed = 4;
  plan.threads = 1;
  return plan;
}

// --- config -------------------------------------------------------------

TEST(ConfigTest, ParsesEveryAxis) {
  constexpr char kIni[] = R"(
[plan]
scenario = epsilon-sweep
algorithms = frappe, gp_lasso
replications = 3
seed = 77
non_private = false
format = json
[grid]
N = 1000, 2000
p = 20
s = 4
epsilon = 0.1, 1
noise = cauchy
rho = 0.3
[privacy]
delta = 1e-4
[frappe]
outer_iters = 4
inner_iters = 6
kernel = epanechnikov
bandwidth = 0.25
clip_row = 2.5
clip_weight = auto
[time]
checkpoints = 0.5, 1.0
)";
  FRAPPE_ASSERT_OK_AND_ASSIGN(ExperimentPlan plan, ParsePlanConfig(kIni));
  EXPECT_EQ(plan.scenario, Scenario::kEpsilonSweep);
  ASSERT_EQ(plan.algorithms.size(), 2u);
  EXPECT_EQ(plan.algorithms[1], Algorithm::kGpLasso);
  EXPECT_EQ(plan.replications, 3);
  EXPECT_EQ(plan.seed, 77u);
  EXPECT_EQ(plan.format, "json");
  EXPECT_EQ(plan.cells.size(), 4u);
  EXPECT_EQ(plan.cells[0].num_rows, 1000);
  EXPECT_EQ(plan.cells[1].epsilon, 1.0);
  EXPECT_EQ(plan.cells[3].noise, NoiseFamily::kCauchy);
  EXPECT_DOUBLE_EQ(plan.rho, 0.3);
  EXPECT_DOUBLE_EQ(plan.delta, 1e-4);
  EXPECT_EQ(plan.frappe.outer_iters, 4);
  EXPECT_EQ(plan.frappe.kernel, KernelType::kEpanechnikov);
  EXPECT_EQ(plan.frappe.bandwidth.kind, BandwidthSchedule::Kind::kFixed);
  EXPECT_DOUBLE_EQ(plan.frappe.bandwidth.fixed, 0.25);
  EXPECT_EQ(plan.clip_row, 2.5);
  EXPECT_FALSE(plan.clip_weight.has_value());
  EXPECT_EQ(plan.checkpoints.size(), 2u);
  EXPECT_THAT(plan.Validate(), IsOk());
}

TEST(ConfigTest, EmptyTextGivesDefaultPlan) {
  FRAPPE_ASSERT_OK_AND_ASSIGN(ExperimentPlan plan, ParsePlanConfig(""));
  EXPECT_EQ(plan.scenario, Scenario::kNoiseTable);
  EXPECT_EQ(plan.cells.size(), 9u);
  EXPECT_EQ(plan.algorithms.size(), 4u);
}

TEST(ConfigTest, Errors) {
  EXPECT_THAT(ParsePlanConfig("[plan]\nreplications = many\n"),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(ParsePlanConfig("[plan]\nscenario = nope\n"),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(ParsePlanConfig("[plan]\nalgorithms = frappe, xgboost\n"),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(ParsePlanConfig("[grid]\nN = 10, x\n"),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(ParsePlanConfig("[frappe]\nkernel = gaussian\n"),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(ParsePlanConfig("[plan\nseed = 1\n"),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(LoadPlanConfig(TempPath("missing.ini")),
              StatusIs(absl::StatusCode::kNotFound));
}

TEST(ConfigTest, ListHelpers) {
  EXPECT_THAT(SplitList(" a, ,b ,c"), ::testing::ElementsAre("a", "b", "c"));
  FRAPPE_ASSERT_OK_AND_ASSIGN(auto eps, ParseDoubleList("0.1,1e-2"));
  EXPECT_THAT(eps, ::testing::ElementsAre(0.1, 0.01));
  FRAPPE_ASSERT_OK_AND_ASSIGN(auto algs, ParseAlgorithmList("sgp-lad,frappe-nonprivate"));
  EXPECT_THAT(algs, ::testing::ElementsAre(Algorithm::kSgpLad,
                                           Algorithm::kFrappeNonPrivate));
  ExperimentPlan plan = DefaultPlan(Scenario::kNoiseTable);
  ReplaceEpsilonAxis(plan, {0.2, 0.4});
  EXPECT_EQ(plan.cells.size(), 18u);
}

// --- plan ---------------------------------------------------------------

TEST(PlanTest, DefaultsPerScenario) {
  EXPECT_EQ(DefaultPlan(Scenario::kSparsitySweep).cells.size(), 15u);
  EXPECT_EQ(DefaultPlan(Scenario::kEpsilonSweep).cells.size(), 4u);
  EXPECT_EQ(DefaultPlan(Scenario::kTimeVsMse).replications, 1);
  for (const Cell& c : DefaultPlan(Scenario::kNoiseTable).cells) {
    EXPECT_EQ(c.dim, 100);
    EXPECT_EQ(c.sparsity, 10);
    EXPECT_EQ(c.epsilon, 0.5);
  }
  for (Scenario s : {Scenario::kNoiseTable, Scenario::kSparsitySweep,
                     Scenario::kEpsilonSweep, Scenario::kTimeVsMse}) {
    EXPECT_THAT(DefaultPlan(s).Validate(), IsOk()) << ScenarioName(s);
    EXPECT_EQ(*ScenarioFromName(ScenarioName(s)), s);
  }
  EXPECT_THAT(DefaultPlan(Scenario::kRealData).Validate(),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(PlanTest, Validation) {
  ExperimentPlan plan = TinyPlan();
  plan.baseline_iters = 999;
  EXPECT_THAT(plan.Validate(), StatusIs(absl::StatusCode::kInvalidArgument));
  plan = TinyPlan();
  plan.baseline_iters = 20;
  EXPECT_THAT(plan.Validate(), IsOk());
  plan.format = "xml";
  EXPECT_THAT(plan.Validate(), StatusIs(absl::StatusCode::kInvalidArgument));
  plan = TinyPlan();
  plan.cells[0].sparsity = 9;
  EXPECT_THAT(plan.Validate(), StatusIs(absl::StatusCode::kInvalidArgument));
  plan = TinyPlan();
  plan.checkpoints = {0.0};
  EXPECT_THAT(plan.Validate(), StatusIs(absl::StatusCode::kInvalidArgument));
  plan = TinyPlan();
  plan.delta = 1.0;
  EXPECT_THAT(plan.Validate(), StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(PlanTest, AlgorithmNames) {
  for (Algorithm a : {Algorithm::kFrappe, Algorithm::kFrappeNonPrivate,
                      Algorithm::kSgpLad, Algorithm::kGpLasso,
                      Algorithm::kDpIght}) {
    EXPECT_EQ(*AlgorithmFromName(AlgorithmName(a)), a);
  }
  EXPECT_TRUE(UsesAbsoluteLoss(Algorithm::kSgpLad));
  EXPECT_FALSE(UsesAbsoluteLoss(Algorithm::kGpLasso));
  EXPECT_TRUE(SelectsSparsity(Algorithm::kDpIght));
}

// --- csv_io -------------------------------------------------------------

TEST(CsvIoTest, ParsesWithHeaderAndResponseColumn) {
  std::istringstream in("a,b,c\n1,2,3\r\n\n4,5,6\n");
  CsvOptions opts;
  opts.response_column = 1;
  FRAPPE_ASSERT_OK_AND_ASSIGN(Dataset d, ParseCsv(in, opts));
  EXPECT_EQ(d.num_rows(), 2);
  EXPECT_EQ(d.num_features(), 2);
  EXPECT_EQ(d.response(1), 5.0);
  EXPECT_EQ(d.features()(1, 1), 6.0);
}

TEST(CsvIoTest, ErrorsCarryLineNumbers) {
  {
    std::istringstream in("y,x\n1,2\n3\n");
    auto d = ParseCsv(in, {}, "data.csv");
    EXPECT_THAT(d, StatusIs(absl::StatusCode::kInvalidArgument));
    EXPECT_THAT(std::string(d.status().message()), HasSubstr("data.csv:3"));
  }
  {
    std::istringstream in("y,x\n1,2\n3,abc\n");
    auto d = ParseCsv(in, {}, "data.csv");
    EXPECT_THAT(d, StatusIs(absl::StatusCode::kInvalidArgument));
    EXPECT_THAT(std::string(d.status().message()), HasSubstr("data.csv:3"));
  }
  {
    std::istringstream in("y,x\n1,nan\n");
    EXPECT_THAT(ParseCsv(in, {}), StatusIs(absl::StatusCode::kInvalidArgument));
  }
  {
    std::istringstream in("y,x\n");
    EXPECT_FALSE(ParseCsv(in, {}).ok());
  }
  EXPECT_FALSE(LoadCsv(TempPath("does_not_exist.csv"), {}).ok());
}

TEST(CsvIoTest, DatasetRoundTrip) {
  Rng rng(1);
  Dataset d = RandomDataset(rng, 25, 4);
  const std::string path = TempPath("roundtrip.csv");
  ASSERT_THAT(WriteDatasetCsv(d, path), IsOk());
  FRAPPE_ASSERT_OK_AND_ASSIGN(Dataset back, LoadCsv(path, {}));
  EXPECT_EQ(back.features(), d.features());
  EXPECT_EQ(back.responses(), d.responses());
  EXPECT_EQ(ReadFile(path).substr(0, 12), "y,x1,x2,x3,x");
}

TEST(CsvIoTest, SplitSizesAndDisjointness) {
  Rng rng(2);
  Dataset d = RandomDataset(rng, 10, 2);
  FRAPPE_ASSERT_OK_AND_ASSIGN(TrainTestSplit s, SplitTrainTest(d, 0.8, 5));
  EXPECT_EQ(s.train.num_rows(), 8);
  EXPECT_EQ(s.test.num_rows(), 2);
  std::set<int> all(s.train_rows.begin(), s.train_rows.end());
  for (int r : s.test_rows) EXPECT_TRUE(all.insert(r).second);
  EXPECT_EQ(all.size(), 10u);
  for (std::size_t k = 0; k < s.train_rows.size(); ++k) {
    EXPECT_EQ(s.train.response(k), d.response(s.train_rows[k]));
  }
  FRAPPE_ASSERT_OK_AND_ASSIGN(TrainTestSplit again, SplitTrainTest(d, 0.8, 5));
  EXPECT_EQ(again.train_rows, s.train_rows);
  FRAPPE_ASSERT_OK_AND_ASSIGN(TrainTestSplit other, SplitTrainTest(d, 0.8, 6));
  EXPECT_NE(other.train_rows, s.train_rows);
  EXPECT_FALSE(SplitTrainTest(d, 0.99, 5).ok());
  EXPECT_FALSE(SplitTrainTest(d, 0.0, 5).ok());
}

TEST(CsvIoTest, StandardizeTrainingColumns) {
  Rng rng(3);
  Matrix x(200, 3);
  Vector y(200);
  for (int i = 0; i < 200; ++i) {
    x(i, 0) = 5.0 + 3.0 * rng.Normal();
    x(i, 1) = -2.0 + 0.1 * rng.Normal();
    x(i, 2) = 7.0;  // constant column
    y[i] = 10.0 + rng.Normal();
  }
  Dataset d = *Dataset::Create(x, y);
  FRAPPE_ASSERT_OK_AND_ASSIGN(TrainTestSplit s, PrepareRealData(d, 0.75, true, 9));
  const Matrix& t = s.train.features();
  for (int j = 0; j < 2; ++j) {
    const double mean = t.col(j).mean();
    const double var = (t.col(j).array() - mean).square().mean();
    EXPECT_NEAR(mean, 0.0, 1e-10);
    EXPECT_NEAR(var, 1.0, 1e-10);
  }
  EXPECT_EQ(t.col(2).cwiseAbs().maxCoeff(), 0.0);
  // y is centered at the training median.
  std::vector<double> ys(s.train.responses().data(),
                         s.train.responses().data() + s.train.num_rows());
  std::sort(ys.begin(), ys.end());
  EXPECT_NEAR(0.5 * (ys[74] + ys[75]), 0.0, 1e-12);

  FRAPPE_ASSERT_OK_AND_ASSIGN(TrainTestSplit raw, PrepareRealData(d, 0.75, false, 9));
  EXPECT_EQ(raw.train.features()(0, 2), 7.0);
}

// --- results ------------------------------------------------------------

ExperimentResult SampleResult() {
  ExperimentResult r;
  r.scenario = "noise-table";
  r.algorithm = "frappe";
  r.num_rows = 5000;
  r.dim = 100;
  r.sparsity_level = 10;
  r.epsilon = 0.5;
  r.noise = "cauchy";
  r.replication = 3;
  r.mse = 0.1 + 0.2;
  r.mae = 1e-300;
  r.f1 = 2.0 / 3.0;
  r.sparsity = 12;
  r.seconds = 1.25;
  r.hyperparameter = 0.0123;
  r.seed = 18446744073709551615ULL;
  return r;
}

TEST(ResultsTest, HeaderIsExact) {
  std::ostringstream out;
  WriteResultsCsv({}, out);
  EXPECT_EQ(out.str(),
            "scenario,algorithm,N,p,s,epsilon,noise,replication,mse,mae,f1,"
            "sparsity,seconds,hyperparameter,seed\n");
}

TEST(ResultsTest, OneRowTwoLines) {
  std::ostringstream out;
  WriteResultsCsv({SampleResult()}, out);
  const std::string text = out.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
  EXPECT_THAT(text, HasSubstr("noise-table,frappe,5000,100,10,0.5,cauchy,3,"
                              "0.30000000000000004,1e-300,"));
}

TEST(ResultsTest, FormatDoubleRoundTrips) {
  for (double v : {0.0, -0.0, 1.0 / 3.0, 1e-300, 6.02e23, -7.5}) {
    FRAPPE_ASSERT_OK_AND_ASSIGN(double back, ParseDouble(FormatDouble(v)));
    EXPECT_EQ(back, v);
  }
  EXPECT_EQ(FormatDouble(std::nan("")), "nan");
  EXPECT_EQ(FormatDouble(INFINITY), "inf");
  EXPECT_EQ(FormatDouble(-INFINITY), "-inf");
  EXPECT_TRUE(std::isinf(*ParseDouble("inf")));
  EXPECT_FALSE(ParseDouble("x1").ok());
}

TEST(ResultsTest, CsvJsonCsvIsByteIdentical) {
  std::vector<ExperimentResult> rows = {SampleResult(), SampleResult()};
  rows[1].algorithm = "frappe-nonprivate";
  rows[1].epsilon = INFINITY;
  rows[1].f1 = ExperimentResult::kNaN;
  rows[1].noise = "a,\"quoted\" value";
  ExperimentResult err = SampleResult();
  err.error = "budget exhausted";
  err.mse = err.mae = err.f1 = err.sparsity = err.hyperparameter =
      ExperimentResult::kNaN;
  rows.push_back(err);

  std::ostringstream first;
  WriteResultsCsv(rows, first);
  FRAPPE_ASSERT_OK_AND_ASSIGN(auto parsed, ParseResultsCsv(first.str()));
  ASSERT_EQ(parsed.size(), 3u);
  EXPECT_EQ(parsed[2].error, "budget exhausted");
  const std::string json = ResultsJson(parsed);
  FRAPPE_ASSERT_OK_AND_ASSIGN(auto from_json, ParseResultsJson(json));
  std::ostringstream second;
  WriteResultsCsv(from_json, second);
  EXPECT_EQ(first.str(), second.str());
  EXPECT_THAT(json, HasSubstr("\"epsilon\": \"inf\""));
  EXPECT_THAT(json, HasSubstr("\"f1\": null"));
}

TEST(ResultsTest, ParseRejectsWrongHeader) {
  EXPECT_FALSE(ParseResultsCsv("a,b\n1,2\n").ok());
}

TEST(ResultsTest, PartialJsonIsReadable) {
  const std::string json = ResultsJson({SampleResult(), SampleResult()});
  const std::string partial = json.substr(0, json.rfind(']'));
  FRAPPE_ASSERT_OK_AND_ASSIGN(auto rows, ParseResultsJson(partial));
  EXPECT_EQ(rows.size(), 2u);
}

TEST(ResultsTest, SinksFlushEachRow) {
  for (std::string format : {"csv", "json"}) {
    const std::string path = TempPath("sink." + format);
    FRAPPE_ASSERT_OK_AND_ASSIGN(auto sink, OpenResultSink(path, format));
    ASSERT_THAT(sink->Append(SampleResult()), IsOk());
    // Readable before Close.
    FRAPPE_ASSERT_OK_AND_ASSIGN(auto mid, ReadResults(path));
    EXPECT_EQ(mid.size(), 1u) << format;
    ASSERT_THAT(sink->Append(SampleResult()), IsOk());
    ASSERT_THAT(sink->Close(), IsOk());
    FRAPPE_ASSERT_OK_AND_ASSIGN(auto all, ReadResults(path));
    EXPECT_EQ(all.size(), 2u) << format;
  }
  const std::string empty = TempPath("empty.json");
  FRAPPE_ASSERT_OK_AND_ASSIGN(auto sink, OpenResultSink(empty, "json"));
  ASSERT_THAT(sink->Close(), IsOk());
  EXPECT_EQ(ReadFile(empty), "[]\n");
  EXPECT_FALSE(OpenResultSink(TempPath("x.bin"), "bin").ok());
}

// --- runner -------------------------------------------------------------

TEST(RunnerTest, TaskOrderAndSeeds) {
  ExperimentPlan plan = TinyPlan();
  const auto tasks = EnumerateTasks(plan);
  ASSERT_EQ(tasks.size(), 2u * 2u * 4u);
  EXPECT_EQ(tasks[0].cell_index, 0);
  EXPECT_EQ(tasks[3].algorithm, Algorithm::kDpIght);
  EXPECT_EQ(tasks[4].replication, 1);
  EXPECT_EQ(tasks[8].cell_index, 1);
  for (std::size_t k = 0; k < tasks.size(); ++k) EXPECT_EQ(tasks[k].index, long(k));
  EXPECT_EQ(DataSeed(plan, tasks[0]), DataSeed(plan, tasks[3]));
  EXPECT_NE(DataSeed(plan, tasks[0]), DataSeed(plan, tasks[4]));
  EXPECT_NE(AlgorithmSeed(plan, tasks[0]), AlgorithmSeed(plan, tasks[1]));
}

TEST(RunnerTest, EmptyAlgorithmListGivesNoRows) {
  ExperimentPlan plan = TinyPlan();
  plan.algorithms.clear();
  FRAPPE_ASSERT_OK_AND_ASSIGN(auto rows, RunPlan(plan));
  EXPECT_TRUE(rows.empty());
}

TEST(RunnerTest, InvalidPlanFails) {
  ExperimentPlan plan = TinyPlan();
  plan.replications = 0;
  EXPECT_THAT(RunPlan(plan), StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(RunnerTest, DeterministicAcrossThreadCounts) {
  ExperimentPlan plan = TinyPlan();
  FRAPPE_ASSERT_OK_AND_ASSIGN(auto serial, RunPlan(plan));
  plan.threads = 3;
  FRAPPE_ASSERT_OK_AND_ASSIGN(auto parallel, RunPlan(plan));
  ASSERT_EQ(serial.size(), 16u);
  ASSERT_EQ(parallel.size(), serial.size());
  for (std::size_t k = 0; k < serial.size(); ++k) {
    EXPECT_EQ(MetricKey(serial[k]), MetricKey(parallel[k])) << k;
    EXPECT_TRUE(serial[k].error.empty()) << serial[k].error;
    EXPECT_FALSE(std::isnan(serial[k].mse));
  }
}

TEST(RunnerTest, StreamsRowsInTaskOrder) {
  ExperimentPlan plan = TinyPlan();
  plan.threads = 2;
  const std::string path = TempPath("stream.csv");
  FRAPPE_ASSERT_OK_AND_ASSIGN(auto sink, OpenResultSink(path, "csv"));
  FRAPPE_ASSERT_OK_AND_ASSIGN(auto rows, RunPlan(plan, sink.get()));
  ASSERT_THAT(sink->Close(), IsOk());
  FRAPPE_ASSERT_OK_AND_ASSIGN(auto back, ReadResults(path));
  ASSERT_EQ(back.size(), rows.size());
  const auto tasks = EnumerateTasks(plan);
  for (std::size_t k = 0; k < back.size(); ++k) {
    EXPECT_EQ(back[k].algorithm, AlgorithmName(tasks[k].algorithm));
    EXPECT_EQ(back[k].replication, tasks[k].replication);
    EXPECT_EQ(MetricKey(back[k]), MetricKey(rows[k]));
  }
}

TEST(RunnerTest, InfeasibleBudgetBecomesErrorRow) {
  ExperimentPlan plan = TinyPlan();
  plan.delta = 0.9;
  plan.algorithms = {Algorithm::kFrappe, Algorithm::kGpLasso};
  FRAPPE_ASSERT_OK_AND_ASSIGN(auto rows, RunPlan(plan));
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_FALSE(rows[0].error.empty());
  EXPECT_TRUE(std::isnan(rows[0].mse));
  EXPECT_TRUE(rows[1].error.empty());
  std::ostringstream csv;
  WriteResultsCsv(rows, csv);
  EXPECT_THAT(csv.str(), HasSubstr(",error:"));
}

TEST(RunnerTest, NonPrivateRowsHaveInfiniteEpsilon) {
  ExperimentPlan plan = TinyPlan();
  plan.non_private = true;
  plan.algorithms = {Algorithm::kFrappe, Algorithm::kSgpLad};
  plan.replications = 1;
  FRAPPE_ASSERT_OK_AND_ASSIGN(auto rows, RunPlan(plan));
  for (const auto& r : rows) EXPECT_TRUE(std::isinf(r.epsilon)) << r.algorithm;
}

TEST(RunnerTest, FixedHyperparameterSkipsSelection) {
  ExperimentPlan plan = TinyPlan();
  plan.fixed_hyperparameter = 0.05;
  plan.algorithms = {Algorithm::kFrappeNonPrivate};
  plan.replications = 1;
  FRAPPE_ASSERT_OK_AND_ASSIGN(auto rows, RunPlan(plan));
  for (const auto& r : rows) EXPECT_EQ(r.hyperparameter, 0.05);
}

TEST(RunnerTest, TimeVsMseEmitsCheckpointRows) {
  ExperimentPlan plan = TinyPlan();
  plan.scenario = Scenario::kTimeVsMse;
  plan.cells.resize(1);
  plan.replications = 1;
  plan.algorithms = {Algorithm::kFrappe, Algorithm::kGpLasso};
  plan.checkpoints = {0.5, 1.0};
  FRAPPE_ASSERT_OK_AND_ASSIGN(auto rows, RunPlan(plan));
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].algorithm, "frappe");
  EXPECT_EQ(rows[1].algorithm, "frappe");
  EXPECT_LE(rows[0].seconds, rows[1].seconds);
  EXPECT_THAT(rows[1].config_json, HasSubstr("\"iteration\""));
  EXPECT_EQ(rows[3].scenario, "time-vs-mse");
}

TEST(RunnerTest, RealDataPath) {
  Rng rng(5);
  Matrix x(120, 4);
  Vector y(120);
  for (int i = 0; i < 120; ++i) {
    for (int j = 0; j < 4; ++j) x(i, j) = 3.0 * rng.Normal() + j;
    y[i] = 2.0 * x(i, 0) - x(i, 2) + rng.Normal();
  }
  const std::string path = TempPath("real.csv");
  ASSERT_THAT(WriteDatasetCsv(*Dataset::Create(x, y), path), IsOk());

  ExperimentPlan plan = DefaultPlan(Scenario::kRealData);
  plan.data.path = path;
  plan.algorithms = {Algorithm::kFrappeNonPrivate, Algorithm::kGpLasso};
  plan.replications = 2;
  plan.grid_size = 3;
  plan.frappe.outer_iters = 2;
  plan.frappe.inner_iters = 10;
  plan.frappe.subsample_size = 50;
  plan.threads = 1;
  FRAPPE_ASSERT_OK_AND_ASSIGN(auto rows, RunPlan(plan));
  ASSERT_EQ(rows.size(), 4u);
  for (const auto& r : rows) {
    EXPECT_TRUE(r.error.empty()) << r.error;
    EXPECT_EQ(r.num_rows, 96);
    EXPECT_EQ(r.dim, 4);
    EXPECT_EQ(r.noise, "real");
    EXPECT_TRUE(std::isnan(r.f1));
    EXPECT_GT(r.mse, 0.0);
  }

  plan.data.path = TempPath("absent.csv");
  EXPECT_FALSE(RunPlan(plan).ok());
}

}  // namespace
}  // namespace frappe::harness
