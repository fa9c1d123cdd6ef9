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

#ifndef FRAPPE_HARNESS_CONFIG_H_
#define FRAPPE_HARNESS_CONFIG_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "frappe/harness/plan.h"

namespace frappe::harness {

// Reads an INI plan file. Sections: [plan], [grid], [privacy], [frappe],
// [baseline], [data], [time]. Keys absent from the file keep the scenario
// defaults. See README.md for the full key list.
absl::StatusOr<ExperimentPlan> ParsePlanConfig(std::string_view text);
absl::StatusOr<ExperimentPlan> LoadPlanConfig(const std::string& path);

// Comma-separated list helpers shared with the CLI.
std::vector<std::string> SplitList(std::string_view text);
absl::StatusOr<std::vector<double>> ParseDoubleList(std::string_view text);
absl::StatusOr<std::vector<int>> ParseIntList(std::string_view text);
absl::StatusOr<std::vector<Algorithm>> ParseAlgorithmList(std::string_view text);
absl::StatusOr<std::vector<NoiseFamily>> ParseNoiseList(std::string_view text);

// Rebuilds plan.cells after one grid axis changed, keeping the other axes.
// Each axis is the deduplicated set of values found in the current cells.
void ReplaceEpsilonAxis(ExperimentPlan& plan, const std::vector<double>& eps);

}  // namespace frappe::harness

#endif  // FRAPPE_HARNESS_CONFIG_H_
