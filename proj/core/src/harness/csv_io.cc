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

#include "frappe/harness/csv_io.h"
#include "harness/string_view.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/ascii.h"
#include "frappe/harness/results.h"
#include "frappe/random.h"

namespace frappe::harness {
namespace {

bool ParseCell(std::string_view cell, double& out) {
  cell = AsStd(absl::StripAsciiWhitespace(AsAbsl(cell)));
  if (cell.empty()) return false;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  if (*begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

}  // namespace

absl::StatusOr<Dataset> ParseCsv(std::istream& in, const CsvOptions& options,
                                 std::string_view source) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  std::size_t width = 0;
  bool header_pending = options.has_header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (absl::StripAsciiWhitespace(line).empty()) continue;
    std::vector<absl::string_view> cells =
        absl::StrSplit(line, options.delimiter);
    if (header_pending) {
      header_pending = false;
      width = cells.size();
      continue;
    }
    if (width == 0) width = cells.size();
    if (cells.size() != width) {
      return absl::InvalidArgumentError(
          absl::StrCat(AsAbsl(source), ":", line_no, ": expected ", width,
                       " columns, found ", cells.size()));
    }
    std::vector<double> values(cells.size());
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (!ParseCell(AsStd(cells[k]), values[k])) {
        return absl::InvalidArgumentError(
            absl::StrCat(AsAbsl(source), ":", line_no, ": column ", k + 1,
                         " is not a finite number: '", cells[k], "'"));
      }
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) {
    return absl::InvalidArgumentError(absl::StrCat(AsAbsl(source), ": no data rows"));
  }
  if (width < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat(AsAbsl(source), ": need a response and at least one feature"));
  }
  if (options.response_column < 0 ||
      options.response_column >= static_cast<int>(width)) {
    return absl::InvalidArgumentError(
        absl::StrCat(AsAbsl(source), ": response column ", options.response_column,
                     " out of range"));
  }
  const int n = static_cast<int>(rows.size());
  const int p = static_cast<int>(width) - 1;
  Matrix x(n, p);
  Vector y(n);
  for (int i = 0; i < n; ++i) {
    int j = 0;
    for (int k = 0; k < static_cast<int>(width); ++k) {
      if (k == options.response_column) {
        y[i] = rows[i][k];
      } else {
        x(i, j++) = rows[i][k];
      }
    }
  }
  return Dataset::Create(std::move(x), std::move(y));
}

absl::StatusOr<Dataset> LoadCsv(const std::string& path,
                                const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open '", path, "'"));
  return ParseCsv(in, options, path);
}

void WriteDatasetCsv(const Dataset& d, std::ostream& out) {
  out << "y";
  for (int j = 0; j < d.num_features(); ++j) out << ",x" << (j + 1);
  out << '\n';
  for (int i = 0; i < d.num_rows(); ++i) {
    out << FormatDouble(d.response(i));
    for (int j = 0; j < d.num_features(); ++j) {
      out << ',' << FormatDouble(d.features()(i, j));
    }
    out << '\n';
  }
}

absl::Status WriteDatasetCsv(const Dataset& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) return absl::InternalError(absl::StrCat("cannot write '", path, "'"));
  WriteDatasetCsv(d, out);
  out.flush();
  if (!out) return absl::InternalError(absl::StrCat("write failed: '", path, "'"));
  return absl::OkStatus();
}

absl::StatusOr<TrainTestSplit> SplitTrainTest(const Dataset& d,
                                              double fraction,
                                              std::uint64_t seed) {
  const int n = d.num_rows();
  const int n_train = static_cast<int>(std::ceil(fraction * n - 1e-9));
  if (n_train < 1 || n_train >= n) {
    return absl::InvalidArgumentError(
        absl::StrCat("split fraction ", fraction, " of N = ", n,
                     " leaves an empty part"));
  }
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(seed);
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.Below(static_cast<std::uint64_t>(i) + 1));
    std::swap(perm[i], perm[j]);
  }
  std::vector<int> train(perm.begin(), perm.begin() + n_train);
  std::vector<int> test(perm.begin() + n_train, perm.end());
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  return TrainTestSplit{d.Subset(train), d.Subset(test), std::move(train),
                        std::move(test)};
}

Standardizer Standardizer::Fit(const Dataset& train) {
  Standardizer s;
  const Matrix& x = train.features();
  const double n = static_cast<double>(train.num_rows());
  s.mean = x.colwise().mean().transpose();
  s.scale.resize(x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double var = (x.col(j).array() - s.mean[j]).square().sum() / n;
    s.scale[j] = var > 0.0 ? std::sqrt(var) : 1.0;
  }
  std::vector<double> y(train.responses().data(),
                        train.responses().data() + train.num_rows());
  std::sort(y.begin(), y.end());
  const std::size_t m = y.size();
  s.response_center = m % 2 == 1 ? y[m / 2] : 0.5 * (y[m / 2 - 1] + y[m / 2]);
  return s;
}

Dataset Standardizer::Apply(const Dataset& d) const {
  Matrix x = d.features();
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    x.col(j) = (x.col(j).array() - mean[j]) / scale[j];
  }
  Vector y = d.responses().array() - response_center;
  return *Dataset::Create(std::move(x), std::move(y));
}

absl::StatusOr<TrainTestSplit> PrepareRealData(const Dataset& d,
                                               double fraction, bool normalize,
                                               std::uint64_t seed) {
  auto split = SplitTrainTest(d, fraction, seed);
  if (!split.ok() || !normalize) return split;
  const Standardizer s = Standardizer::Fit(split->train);
  split->train = s.Apply(split->train);
  split->test = s.Apply(split->test);
  return split;
}

}  // namespace frappe::harness
