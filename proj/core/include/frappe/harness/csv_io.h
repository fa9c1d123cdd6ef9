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

#ifndef FRAPPE_HARNESS_CSV_IO_H_
#define FRAPPE_HARNESS_CSV_IO_H_

#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "frappe/core.h"

namespace frappe::harness {

struct CsvOptions {
  int response_column = 0;
  char delimiter = ',';
  bool has_header = true;
};

// Parses a rectangular numeric table. Ragged rows and non-numeric cells are
// errors reported as "<source>:<line>: ...". Blank lines are skipped.
absl::StatusOr<Dataset> ParseCsv(std::istream& in, const CsvOptions& options,
                                 std::string_view source = "<input>");
absl::StatusOr<Dataset> LoadCsv(const std::string& path,
                                const CsvOptions& options);

// Header "y,x1,...,xp" followed by full-precision rows; LoadCsv reads it
// back with the default options.
absl::Status WriteDatasetCsv(const Dataset& d, const std::string& path);
void WriteDatasetCsv(const Dataset& d, std::ostream& out);

struct TrainTestSplit {
  Dataset train;
  Dataset test;
  std::vector<int> train_rows;
  std::vector<int> test_rows;
};

// Random disjoint split with ceil(fraction * N) training rows. Both parts
// must end up non-empty.
absl::StatusOr<TrainTestSplit> SplitTrainTest(const Dataset& d,
                                              double fraction,
                                              std::uint64_t seed);

// Column statistics of the training features. Zero-variance columns keep a
// unit scale so they stay at zero after centering.
struct Standardizer {
  Vector mean;
  Vector scale;
  double response_center = 0.0;  // training median of y

  static Standardizer Fit(const Dataset& train);
  Dataset Apply(const Dataset& d) const;
};

// Splits, then (when normalize) standardizes both parts with the training
// statistics and centers y at the training median.
absl::StatusOr<TrainTestSplit> PrepareRealData(const Dataset& d,
                                               double fraction, bool normalize,
                                               std::uint64_t seed);

}  // namespace frappe::harness

#endif  // FRAPPE_HARNESS_CSV_IO_H_
