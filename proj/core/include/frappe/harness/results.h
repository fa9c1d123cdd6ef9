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

#ifndef FRAPPE_HARNESS_RESULTS_H_
#define FRAPPE_HARNESS_RESULTS_H_

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace frappe::harness {

// Column order of the results CSV.
inline constexpr std::string_view kResultsHeader =
    "scenario,algorithm,N,p,s,epsilon,noise,replication,mse,mae,f1,sparsity,"
    "seconds,hyperparameter,seed";

struct ExperimentResult {
  static constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

  std::string scenario;
  std::string algorithm;
  int num_rows = 0;
  int dim = 0;
  int sparsity_level = 0;
  double epsilon = kNaN;  // inf for non-private runs
  std::string noise;
  int replication = 0;
  double mse = kNaN;
  double mae = kNaN;
  double f1 = kNaN;
  double sparsity = kNaN;  // support size of the estimate
  double seconds = kNaN;
  double hyperparameter = kNaN;
  std::uint64_t seed = 0;
  // Non-empty marks an error row; metrics are then NaN.
  std::string error;
  // Resolved configuration as a JSON object string. JSON output only.
  std::string config_json;
  // Position in the plan's task order. Not serialized.
  long task_index = 0;
};

// Shortest decimal form that parses back to the same double; "nan", "inf"
// and "-inf" for non-finite values.
std::string FormatDouble(double v);
absl::StatusOr<double> ParseDouble(std::string_view text);

// Metric columns only, as one string; used for determinism comparisons.
std::string MetricKey(const ExperimentResult& r);

std::string CsvRow(const ExperimentResult& r);
void WriteResultsCsv(const std::vector<ExperimentResult>& results,
                     std::ostream& out);
absl::StatusOr<std::vector<ExperimentResult>> ParseResultsCsv(
    std::string_view text);

// A JSON array of records; NaN is written as null and infinities as the
// strings "inf" and "-inf".
std::string ResultsJson(const std::vector<ExperimentResult>& results);
// Also accepts a partially written stream that lacks the closing bracket.
absl::StatusOr<std::vector<ExperimentResult>> ParseResultsJson(
    std::string_view text);

absl::Status WriteResults(const std::vector<ExperimentResult>& results,
                          const std::string& path, std::string_view format);
absl::StatusOr<std::vector<ExperimentResult>> ReadResults(
    const std::string& path);

// Incremental writer: every Append reaches the file before returning, so an
// interrupted run leaves every finished row on disk.
class ResultSink {
 public:
  virtual ~ResultSink() = default;
  virtual absl::Status Append(const ExperimentResult& r) = 0;
  virtual absl::Status Close() = 0;
};

// format is "csv" or "json".
absl::StatusOr<std::unique_ptr<ResultSink>> OpenResultSink(
    const std::string& path, std::string_view format);

}  // namespace frappe::harness

#endif  // FRAPPE_HARNESS_RESULTS_H_
