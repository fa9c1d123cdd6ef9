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

#include "frappe/harness/config.h"
#include "harness/string_view.h"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "frappe/kernels.h"

namespace frappe::harness {
namespace {

namespace pt = boost::property_tree;

template <typename T>
std::vector<T> Unique(std::vector<T> values) {
  std::vector<T> out;
  for (const T& v : values) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

std::optional<std::string> Get(const pt::ptree& tree, const std::string& key) {
  auto v = tree.get_optional<std::string>(key);
  if (!v) return std::nullopt;
  return std::string(absl::StripAsciiWhitespace(*v));
}

absl::Status BadValue(const std::string& key, const std::string& value) {
  return absl::InvalidArgumentError(
      absl::StrCat("config key '", key, "': cannot parse '", value, "'"));
}

absl::Status ReadInt(const pt::ptree& tree, const std::string& key, int& out) {
  if (auto v = Get(tree, key)) {
    if (!absl::SimpleAtoi(*v, &out)) return BadValue(key, *v);
  }
  return absl::OkStatus();
}

absl::Status ReadDouble(const pt::ptree& tree, const std::string& key,
                        double& out) {
  if (auto v = Get(tree, key)) {
    if (!absl::SimpleAtod(*v, &out)) return BadValue(key, *v);
  }
  return absl::OkStatus();
}

absl::Status ReadBool(const pt::ptree& tree, const std::string& key,
                      bool& out) {
  if (auto v = Get(tree, key)) {
    if (!absl::SimpleAtob(*v, &out)) return BadValue(key, *v);
  }
  return absl::OkStatus();
}

// "auto" or empty leaves the optional unset.
absl::Status ReadOptionalDouble(const pt::ptree& tree, const std::string& key,
                                std::optional<double>& out) {
  if (auto v = Get(tree, key)) {
    if (v->empty() || *v == "auto") {
      out.reset();
      return absl::OkStatus();
    }
    double d = 0.0;
    if (!absl::SimpleAtod(*v, &d)) return BadValue(key, *v);
    out = d;
  }
  return absl::OkStatus();
}

#define FRAPPE_RETURN_IF_ERROR(expr)       \
  do {                                     \
    if (absl::Status _st = (expr); !_st.ok()) return _st; \
  } while (0)

std::vector<int> AxisRows(const std::vector<Cell>& c) {
  std::vector<int> v;
  for (const Cell& x : c) v.push_back(x.num_rows);
  return Unique(v);
}
std::vector<int> AxisDims(const std::vector<Cell>& c) {
  std::vector<int> v;
  for (const Cell& x : c) v.push_back(x.dim);
  return Unique(v);
}
std::vector<int> AxisSparsity(const std::vector<Cell>& c) {
  std::vector<int> v;
  for (const Cell& x : c) v.push_back(x.sparsity);
  return Unique(v);
}
std::vector<double> AxisEpsilon(const std::vector<Cell>& c) {
  std::vector<double> v;
  for (const Cell& x : c) v.push_back(x.epsilon);
  return Unique(v);
}
std::vector<NoiseFamily> AxisNoise(const std::vector<Cell>& c) {
  std::vector<NoiseFamily> v;
  for (const Cell& x : c) v.push_back(x.noise);
  return Unique(v);
}

}  // namespace

std::vector<std::string> SplitList(std::string_view text) {
  std::vector<std::string> out;
  for (absl::string_view piece : absl::StrSplit(AsAbsl(text), ',')) {
    absl::string_view trimmed = absl::StripAsciiWhitespace(piece);
    if (!trimmed.empty()) out.emplace_back(trimmed);
  }
  return out;
}

absl::StatusOr<std::vector<double>> ParseDoubleList(std::string_view text) {
  std::vector<double> out;
  for (const std::string& s : SplitList(text)) {
    double d = 0.0;
    if (!absl::SimpleAtod(s, &d)) {
      return absl::InvalidArgumentError(absl::StrCat("not a number: '", s, "'"));
    }
    out.push_back(d);
  }
  return out;
}

absl::StatusOr<std::vector<int>> ParseIntList(std::string_view text) {
  std::vector<int> out;
  for (const std::string& s : SplitList(text)) {
    int v = 0;
    if (!absl::SimpleAtoi(s, &v)) {
      return absl::InvalidArgumentError(
          absl::StrCat("not an integer: '", s, "'"));
    }
    out.push_back(v);
  }
  return out;
}

absl::StatusOr<std::vector<Algorithm>> ParseAlgorithmList(
    std::string_view text) {
  std::vector<Algorithm> out;
  for (const std::string& s : SplitList(text)) {
    auto a = AlgorithmFromName(s);
    if (!a.ok()) return a.status();
    out.push_back(*a);
  }
  return out;
}

absl::StatusOr<std::vector<NoiseFamily>> ParseNoiseList(std::string_view text) {
  std::vector<NoiseFamily> out;
  for (const std::string& s : SplitList(text)) {
    auto n = NoiseFamilyFromName(s);
    if (!n.ok()) return n.status();
    out.push_back(*n);
  }
  return out;
}

void ReplaceEpsilonAxis(ExperimentPlan& plan, const std::vector<double>& eps) {
  plan.cells = CrossCells(AxisRows(plan.cells), AxisDims(plan.cells),
                          AxisSparsity(plan.cells), eps, AxisNoise(plan.cells));
}

absl::StatusOr<ExperimentPlan> ParsePlanConfig(std::string_view text) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(text)};
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("config line ", e.line(), ": ", e.message()));
  }

  Scenario scenario = Scenario::kNoiseTable;
  if (auto v = Get(tree, "plan.scenario")) {
    auto s = ScenarioFromName(*v);
    if (!s.ok()) return s.status();
    scenario = *s;
  }
  ExperimentPlan plan = DefaultPlan(scenario);

  if (auto v = Get(tree, "plan.algorithms")) {
    auto a = ParseAlgorithmList(*v);
    if (!a.ok()) return a.status();
    plan.algorithms = *a;
  }
  FRAPPE_RETURN_IF_ERROR(ReadInt(tree, "plan.replications", plan.replications));
  if (auto v = Get(tree, "plan.seed")) {
    if (!absl::SimpleAtoi(*v, &plan.seed)) return BadValue("plan.seed", *v);
  }
  FRAPPE_RETURN_IF_ERROR(ReadInt(tree, "plan.threads", plan.threads));
  FRAPPE_RETURN_IF_ERROR(ReadInt(tree, "plan.grid_size", plan.grid_size));
  FRAPPE_RETURN_IF_ERROR(ReadBool(tree, "plan.non_private", plan.non_private));
  if (auto v = Get(tree, "plan.out")) plan.out = *v;
  if (auto v = Get(tree, "plan.format")) plan.format = *v;
  FRAPPE_RETURN_IF_ERROR(
      ReadOptionalDouble(tree, "plan.hyperparameter", plan.fixed_hyperparameter));

  // Grid axes: start from the defaults, override listed axes.
  std::vector<int> rows = AxisRows(plan.cells);
  std::vector<int> dims = AxisDims(plan.cells);
  std::vector<int> sparsity = AxisSparsity(plan.cells);
  std::vector<double> eps = AxisEpsilon(plan.cells);
  std::vector<NoiseFamily> noise = AxisNoise(plan.cells);
  if (auto v = Get(tree, "grid.N")) {
    auto r = ParseIntList(*v);
    if (!r.ok()) return r.status();
    rows = *r;
  }
  if (auto v = Get(tree, "grid.p")) {
    auto r = ParseIntList(*v);
    if (!r.ok()) return r.status();
    dims = *r;
  }
  if (auto v = Get(tree, "grid.s")) {
    auto r = ParseIntList(*v);
    if (!r.ok()) return r.status();
    sparsity = *r;
  }
  if (auto v = Get(tree, "grid.epsilon")) {
    auto r = ParseDoubleList(*v);
    if (!r.ok()) return r.status();
    eps = *r;
  }
  if (auto v = Get(tree, "grid.noise")) {
    auto r = ParseNoiseList(*v);
    if (!r.ok()) return r.status();
    noise = *r;
  }
  plan.cells = CrossCells(rows, dims, sparsity, eps, noise);
  FRAPPE_RETURN_IF_ERROR(ReadDouble(tree, "grid.rho", plan.rho));

  FRAPPE_RETURN_IF_ERROR(ReadDouble(tree, "privacy.delta", plan.delta));

  FrappeConfig& f = plan.frappe;
  FRAPPE_RETURN_IF_ERROR(ReadInt(tree, "frappe.outer_iters", f.outer_iters));
  FRAPPE_RETURN_IF_ERROR(ReadInt(tree, "frappe.inner_iters", f.inner_iters));
  FRAPPE_RETURN_IF_ERROR(
      ReadInt(tree, "frappe.subsample_size", f.subsample_size));
  FRAPPE_RETURN_IF_ERROR(ReadOptionalDouble(tree, "frappe.step_size", f.step_size));
  FRAPPE_RETURN_IF_ERROR(
      ReadDouble(tree, "frappe.lambda_l1_init", f.lambda_l1_init));
  FRAPPE_RETURN_IF_ERROR(
      ReadDouble(tree, "frappe.lambda_l2_init", f.lambda_l2_init));
  FRAPPE_RETURN_IF_ERROR(ReadOptionalDouble(tree, "frappe.init_step", f.init_step));
  FRAPPE_RETURN_IF_ERROR(
      ReadInt(tree, "frappe.init_max_iters", f.init_max_iters));
  FRAPPE_RETURN_IF_ERROR(
      ReadDouble(tree, "frappe.density_floor", f.density_floor));
  FRAPPE_RETURN_IF_ERROR(
      ReadDouble(tree, "frappe.density_constant", f.density_constant));
  if (auto v = Get(tree, "frappe.kernel")) {
    auto k = Kernel::FromName(*v);
    if (!k.ok()) return k.status();
    f.kernel = k->type();
  }
  if (auto v = Get(tree, "frappe.bandwidth")) {
    if (*v != "auto") {
      double h = 0.0;
      if (!absl::SimpleAtod(*v, &h)) return BadValue("frappe.bandwidth", *v);
      f.bandwidth.kind = BandwidthSchedule::Kind::kFixed;
      f.bandwidth.fixed = h;
    }
  }
  FRAPPE_RETURN_IF_ERROR(ReadOptionalDouble(tree, "frappe.clip_row", plan.clip_row));
  FRAPPE_RETURN_IF_ERROR(
      ReadOptionalDouble(tree, "frappe.clip_weight", plan.clip_weight));

  if (auto v = Get(tree, "baseline.total_iters")) {
    int iters = 0;
    if (!absl::SimpleAtoi(*v, &iters)) return BadValue("baseline.total_iters", *v);
    plan.baseline_iters = iters;
  }
  FRAPPE_RETURN_IF_ERROR(
      ReadOptionalDouble(tree, "baseline.step_size", plan.baseline_step));

  if (auto v = Get(tree, "data.path")) plan.data.path = *v;
  FRAPPE_RETURN_IF_ERROR(
      ReadInt(tree, "data.response_column", plan.data.response_column));
  if (auto v = Get(tree, "data.delimiter")) {
    if (*v == "tab" || *v == "\\t") {
      plan.data.delimiter = '\t';
    } else if (v->size() == 1) {
      plan.data.delimiter = (*v)[0];
    } else {
      return BadValue("data.delimiter", *v);
    }
  }
  FRAPPE_RETURN_IF_ERROR(ReadBool(tree, "data.normalize", plan.data.normalize));
  FRAPPE_RETURN_IF_ERROR(
      ReadDouble(tree, "data.train_fraction", plan.data.train_fraction));
  FRAPPE_RETURN_IF_ERROR(
      ReadInt(tree, "data.bandwidth_sparsity", plan.data.bandwidth_sparsity));
  FRAPPE_RETURN_IF_ERROR(
      ReadDouble(tree, "data.clip_weight", plan.real_clip_weight));

  if (auto v = Get(tree, "time.checkpoints")) {
    auto c = ParseDoubleList(*v);
    if (!c.ok()) return c.status();
    plan.checkpoints = *c;
  }
  return plan;
}

absl::StatusOr<ExperimentPlan> LoadPlanConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    return absl::NotFoundError(absl::StrCat("cannot open config '", path, "'"));
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  auto plan = ParsePlanConfig(buffer.str());
  if (!plan.ok()) {
    return absl::Status(plan.status().code(),
                        absl::StrCat(path, ": ", plan.status().message()));
  }
  return plan;
}

}  // namespace frappe::harness
