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

// Command-line front end: generate, fit, bench and select.
//
//   frappe generate --N 5000 --p 100 --s 10 --noise cauchy --out data.csv
//   frappe fit --algorithm frappe --epsilon 0.5 --noise cauchy
//   frappe bench --config plans/noise_table.ini --out results.csv
//   frappe select --algorithm gp_lasso --data prices.csv
//
// Every flag overrides the corresponding config-file key.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "frappe/design.h"
#include "frappe/harness/config.h"
#include "frappe/harness/csv_io.h"
#include "frappe/harness/plan.h"
#include "frappe/harness/results.h"
#include "frappe/harness/runner.h"
#include "frappe/kernels.h"
#include "frappe/synthetic_data.h"

namespace frappe::harness {
namespace {

struct Flags {
  std::string config;
  std::string scenario;
  std::string algorithm;
  std::optional<double> epsilon;
  std::optional<double> delta;
  std::string kernel;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format;
  bool non_private = false;
  // Synthetic cell and real-data selection.
  std::optional<int> num_rows;
  std::optional<int> dim;
  std::optional<int> sparsity;
  std::string noise;
  std::optional<double> rho;
  std::string data;
  std::optional<int> replications;
  std::optional<int> replication;
  std::optional<int> threads;
  std::optional<double> hyperparameter;
};

void AddCommonFlags(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config, "INI plan file");
  app->add_option("--algorithm", f.algorithm,
                  "frappe, frappe-nonprivate, sgp_lad, gp_lasso, dp_ight "
                  "(comma-separated for bench)");
  app->add_option("--epsilon", f.epsilon, "Privacy budget epsilon");
  app->add_option("--delta", f.delta, "Privacy budget delta");
  app->add_option("--kernel", f.kernel,
                  "biweight, uniform, epanechnikov or triweight");
  app->add_option("--seed", f.seed, "Master seed");
  app->add_option("--out", f.out, "Output path");
  app->add_option("--format", f.format, "csv or json");
  app->add_flag("--non-private", f.non_private, "Disable every noise stage");
  app->add_option("--scenario", f.scenario,
                  "noise-table, sparsity-sweep, epsilon-sweep, time-vs-mse, "
                  "real-data");
  app->add_option("--N", f.num_rows, "Rows");
  app->add_option("--p", f.dim, "Features");
  app->add_option("--s", f.sparsity, "True sparsity");
  app->add_option("--noise", f.noise, "normal, student_t or cauchy");
  app->add_option("--rho", f.rho, "AR(1) covariate correlation");
  app->add_option("--data", f.data, "Real-data CSV (first column response)");
  app->add_option("--replications", f.replications, "Replications per cell");
  app->add_option("--replication", f.replication,
                  "Replication index used by fit and select");
  app->add_option("--threads", f.threads, "Worker threads for bench");
  app->add_option("--hyperparameter", f.hyperparameter,
                  "Fixed lambda (sparsity target for dp_ight); skips BIC");
}

// Config file (or scenario defaults), then flags on top.
absl::StatusOr<ExperimentPlan> ResolvePlan(const Flags& f) {
  ExperimentPlan plan;
  if (!f.config.empty()) {
    auto loaded = LoadPlanConfig(f.config);
    if (!loaded.ok()) return loaded.status();
    plan = *std::move(loaded);
  } else {
    Scenario scenario = !f.data.empty() ? Scenario::kRealData
                                        : Scenario::kNoiseTable;
    if (!f.scenario.empty()) {
      auto s = ScenarioFromName(f.scenario);
      if (!s.ok()) return s.status();
      scenario = *s;
    }
    plan = DefaultPlan(scenario);
  }
  if (!f.config.empty() && !f.scenario.empty()) {
    auto s = ScenarioFromName(f.scenario);
    if (!s.ok()) return s.status();
    plan.scenario = *s;
  }
  if (!f.data.empty()) {
    plan.scenario = Scenario::kRealData;
    plan.data.path = f.data;
    if (plan.cells.empty()) plan.cells = {Cell{0, 0, 0, 0.5, NoiseFamily::kNormal}};
  }
  if (!f.algorithm.empty()) {
    auto algorithms = ParseAlgorithmList(f.algorithm);
    if (!algorithms.ok()) return algorithms.status();
    plan.algorithms = *algorithms;
  }
  if (f.num_rows || f.dim || f.sparsity || !f.noise.empty() || f.epsilon) {
    std::vector<Cell> cells;
    for (Cell c : plan.cells) {
      if (f.num_rows) c.num_rows = *f.num_rows;
      if (f.dim) c.dim = *f.dim;
      if (f.sparsity) c.sparsity = *f.sparsity;
      if (f.epsilon) c.epsilon = *f.epsilon;
      if (!f.noise.empty()) {
        auto n = NoiseFamilyFromName(f.noise);
        if (!n.ok()) return n.status();
        c.noise = *n;
      }
      bool seen = false;
      for (const Cell& d : cells) {
        seen = seen || (d.num_rows == c.num_rows && d.dim == c.dim &&
                        d.sparsity == c.sparsity && d.epsilon == c.epsilon &&
                        d.noise == c.noise);
      }
      if (!seen) cells.push_back(c);
    }
    plan.cells = std::move(cells);
  }
  if (f.delta) plan.delta = *f.delta;
  if (!f.kernel.empty()) {
    auto k = Kernel::FromName(f.kernel);
    if (!k.ok()) return k.status();
    plan.frappe.kernel = k->type();
  }
  if (f.seed) plan.seed = *f.seed;
  if (!f.out.empty()) plan.out = f.out;
  if (!f.format.empty()) plan.format = f.format;
  if (f.non_private) plan.non_private = true;
  if (f.rho) plan.rho = *f.rho;
  if (f.replications) plan.replications = *f.replications;
  if (f.threads) plan.threads = *f.threads;
  if (f.hyperparameter) plan.fixed_hyperparameter = *f.hyperparameter;
  if (absl::Status s = plan.Validate(); !s.ok()) return s;
  return plan;
}

absl::Status Generate(const Flags& f) {
  auto plan = ResolvePlan(f);
  if (!plan.ok()) return plan.status();
  if (plan->out.empty()) return absl::InvalidArgumentError("generate needs --out");
  if (plan->cells.empty()) return absl::InvalidArgumentError("plan has no cells");
  const Cell& cell = plan->cells.front();
  Task task;
  task.replication = f.replication.value_or(0);
  SyntheticSpec spec;
  spec.num_rows = cell.num_rows;
  spec.dim = cell.dim;
  spec.sparsity = cell.sparsity;
  spec.noise = cell.noise;
  spec.rho = plan->rho;
  spec.seed = DataSeed(*plan, task);
  auto data = frappe::Generate(spec);
  if (!data.ok()) return data.status();
  return WriteDatasetCsv(data->data, plan->out);
}

// The single task addressed by the first cell, first algorithm and
// --replication.
absl::StatusOr<Task> SingleTask(const ExperimentPlan& plan, const Flags& f) {
  if (plan.algorithms.empty()) return absl::InvalidArgumentError("no algorithm given");
  if (plan.cells.empty()) return absl::InvalidArgumentError("plan has no cells");
  Task task;
  task.replication = f.replication.value_or(0);
  task.algorithm = plan.algorithms.front();
  return task;
}

absl::Status Fit(const Flags& f) {
  auto plan = ResolvePlan(f);
  if (!plan.ok()) return plan.status();
  auto task = SingleTask(*plan, f);
  if (!task.ok()) return task.status();
  auto real = LoadPlanData(*plan);
  if (!real.ok()) return real.status();
  const Dataset* real_data = real->has_value() ? &**real : nullptr;
  std::vector<ExperimentResult> rows = RunTask(*plan, *task, real_data);
  if (!plan->out.empty()) {
    if (absl::Status s = WriteResults(rows, plan->out, plan->format); !s.ok()) {
      return s;
    }
  }
  if (plan->format == "json") {
    std::cout << ResultsJson(rows);
  } else {
    WriteResultsCsv(rows, std::cout);
  }
  for (const ExperimentResult& r : rows) {
    if (!r.error.empty()) return absl::InternalError(r.error);
  }
  return absl::OkStatus();
}

absl::Status Bench(const Flags& f) {
  auto plan = ResolvePlan(f);
  if (!plan.ok()) return plan.status();
  if (plan->out.empty()) return absl::InvalidArgumentError("bench needs --out");
  auto sink = OpenResultSink(plan->out, plan->format);
  if (!sink.ok()) return sink.status();
  auto results = RunPlan(*plan, sink->get());
  if (absl::Status s = (*sink)->Close(); !s.ok()) return s;
  if (!results.ok()) return results.status();
  int errors = 0;
  for (const ExperimentResult& r : *results) errors += r.error.empty() ? 0 : 1;
  std::cerr << results->size() << " rows written to " << plan->out;
  if (errors > 0) std::cerr << " (" << errors << " error rows)";
  std::cerr << "\n";
  return absl::OkStatus();
}

absl::Status Select(const Flags& f) {
  auto plan = ResolvePlan(f);
  if (!plan.ok()) return plan.status();
  auto task = SingleTask(*plan, f);
  if (!task.ok()) return task.status();
  auto real = LoadPlanData(*plan);
  if (!real.ok()) return real.status();
  auto data = PrepareTaskData(*plan, *task, real->has_value() ? &**real : nullptr);
  if (!data.ok()) return data.status();
  const DesignSummary design = SummarizeDesign(data->train);
  auto ctx = MakeTaskContext(*plan, *task, *data, design);
  if (!ctx.ok()) return ctx.status();
  auto selection = SelectAndFit(*ctx, plan->grid_size, plan->fixed_hyperparameter);
  if (!selection.ok()) return selection.status();
  std::cout << "candidate,bic,support\n";
  for (const CandidateScore& c : selection->scores) {
    std::cout << FormatDouble(c.candidate) << ',' << FormatDouble(c.bic) << ','
              << c.support_size << '\n';
  }
  std::cout << "selected," << FormatDouble(selection->selected) << '\n';
  return absl::OkStatus();
}

}  // namespace
}  // namespace frappe::harness

int main(int argc, char** argv) {
  using namespace frappe::harness;
  CLI::App app{"Differentially private sparse LAD regression"};
  app.require_subcommand(1);
  Flags flags;
  struct Verb {
    const char* name;
    const char* help;
    absl::Status (*run)(const Flags&);
  };
  const Verb verbs[] = {
      {"generate", "Write a synthetic dataset as CSV", &Generate},
      {"fit", "Fit one algorithm once and print its metrics", &Fit},
      {"bench", "Run an experiment plan", &Bench},
      {"select", "Print the BIC grid for one algorithm", &Select},
  };
  absl::Status status;
  for (const Verb& verb : verbs) {
    CLI::App* sub = app.add_subcommand(verb.name, verb.help);
    AddCommonFlags(sub, flags);
    sub->callback([&status, &flags, run = verb.run] { status = run(flags); });
  }
  CLI11_PARSE(app, argc, argv);
  if (!status.ok()) {
    std::cerr << "error: " << status.message() << "\n";
    return 1;
  }
  return 0;
}
