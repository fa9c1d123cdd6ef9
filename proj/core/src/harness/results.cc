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

#include "frappe/harness/results.h"
#include "harness/string_view.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "json.hpp"

namespace frappe::harness {
namespace {

using Json = nlohmann::ordered_json;

constexpr int kNumColumns = 15;
constexpr std::string_view kErrorPrefix = "error:";

std::string CsvEscape(std::string_view cell) {
  if (cell.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(cell);
  }
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// Splits one logical record starting at `pos`; quoted cells may span lines.
absl::StatusOr<std::vector<std::string>> NextRecord(std::string_view text,
                                                    std::size_t& pos,
                                                    int& line) {
  std::vector<std::string> cells(1);
  bool quoted = false;
  while (pos < text.size()) {
    const char c = text[pos++];
    if (quoted) {
      if (c == '"') {
        if (pos < text.size() && text[pos] == '"') {
          cells.back() += '"';
          ++pos;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        cells.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.emplace_back();
    } else if (c == '\n') {
      ++line;
      return cells;
    } else if (c != '\r') {
      cells.back() += c;
    }
  }
  if (quoted) {
    return absl::InvalidArgumentError(
        absl::StrCat("line ", line, ": unterminated quote"));
  }
  return cells;
}

template <typename Int>
absl::StatusOr<Int> ParseInt(std::string_view text) {
  Int v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("not an integer: '", AsAbsl(text), "'"));
  }
  return v;
}

Json DoubleToJson(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

absl::StatusOr<double> JsonToDouble(const Json& j, std::string_view key) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return ParseDouble(j.get<std::string>());
  return absl::InvalidArgumentError(
      absl::StrCat("field '", AsAbsl(key), "' is not a number"));
}

Json ToJson(const ExperimentResult& r) {
  Json j;
  j["scenario"] = r.scenario;
  j["algorithm"] = r.algorithm;
  j["N"] = r.num_rows;
  j["p"] = r.dim;
  j["s"] = r.sparsity_level;
  j["epsilon"] = DoubleToJson(r.epsilon);
  j["noise"] = r.noise;
  j["replication"] = r.replication;
  j["mse"] = DoubleToJson(r.mse);
  j["mae"] = DoubleToJson(r.mae);
  j["f1"] = DoubleToJson(r.f1);
  j["sparsity"] = DoubleToJson(r.sparsity);
  j["seconds"] = DoubleToJson(r.seconds);
  j["hyperparameter"] = DoubleToJson(r.hyperparameter);
  j["seed"] = r.seed;
  if (!r.error.empty()) j["error"] = r.error;
  if (!r.config_json.empty()) {
    Json config = Json::parse(r.config_json, nullptr, false);
    if (!config.is_discarded()) j["config"] = std::move(config);
  }
  return j;
}

absl::StatusOr<ExperimentResult> FromJson(const Json& j) {
  if (!j.is_object()) return absl::InvalidArgumentError("record is not an object");
  ExperimentResult r;
  try {
    r.scenario = j.at("scenario").get<std::string>();
    r.algorithm = j.at("algorithm").get<std::string>();
    r.num_rows = j.at("N").get<int>();
    r.dim = j.at("p").get<int>();
    r.sparsity_level = j.at("s").get<int>();
    r.noise = j.at("noise").get<std::string>();
    r.replication = j.at("replication").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("error")) r.error = j.at("error").get<std::string>();
    if (j.contains("config")) r.config_json = j.at("config").dump();
  } catch (const Json::exception& e) {
    return absl::InvalidArgumentError(e.what());
  }
  struct Field {
    const char* key;
    double* target;
  };
  for (const Field& f : {Field{"epsilon", &r.epsilon}, Field{"mse", &r.mse},
                         Field{"mae", &r.mae}, Field{"f1", &r.f1},
                         Field{"sparsity", &r.sparsity},
                         Field{"seconds", &r.seconds},
                         Field{"hyperparameter", &r.hyperparameter}}) {
    if (!j.contains(f.key)) {
      return absl::InvalidArgumentError(absl::StrCat("missing field '", f.key, "'"));
    }
    auto v = JsonToDouble(j.at(f.key), f.key);
    if (!v.ok()) return v.status();
    *f.target = *v;
  }
  return r;
}

class CsvSink : public ResultSink {
 public:
  CsvSink(std::ofstream out, std::string path)
      : out_(std::move(out)), path_(std::move(path)) {}

  absl::Status Append(const ExperimentResult& r) override {
    out_ << CsvRow(r) << '\n';
    out_.flush();
    return Check();
  }
  absl::Status Close() override {
    out_.close();
    return Check();
  }

 private:
  absl::Status Check() {
    if (!out_.good() && out_.is_open()) {
      return absl::InternalError(absl::StrCat("write failed: '", path_, "'"));
    }
    return absl::OkStatus();
  }

  std::ofstream out_;
  std::string path_;
};

class JsonSink : public ResultSink {
 public:
  JsonSink(std::ofstream out, std::string path)
      : out_(std::move(out)), path_(std::move(path)) {}

  absl::Status Append(const ExperimentResult& r) override {
    out_ << (first_ ? "[\n" : ",\n") << ToJson(r).dump(2);
    first_ = false;
    out_.flush();
    if (!out_) return absl::InternalError(absl::StrCat("write failed: '", path_, "'"));
    return absl::OkStatus();
  }
  absl::Status Close() override {
    out_ << (first_ ? "[]\n" : "\n]\n");
    out_.close();
    if (!out_) return absl::InternalError(absl::StrCat("write failed: '", path_, "'"));
    return absl::OkStatus();
  }

 private:
  std::ofstream out_;
  std::string path_;
  bool first_ = true;
};

}  // namespace

std::string FormatDouble(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

absl::StatusOr<double> ParseDouble(std::string_view text) {
  text = AsStd(absl::StripAsciiWhitespace(AsAbsl(text)));
  if (text == "nan" || text == "NaN" || text.empty()) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    return absl::InvalidArgumentError(absl::StrCat("not a number: '", AsAbsl(text), "'"));
  }
  return v;
}

std::string MetricKey(const ExperimentResult& r) {
  return absl::StrCat(r.scenario, ",", r.algorithm, ",", r.num_rows, ",",
                      r.dim, ",", r.sparsity_level, ",",
                      FormatDouble(r.epsilon), ",", r.noise, ",",
                      r.replication, ",", FormatDouble(r.mse), ",",
                      FormatDouble(r.mae), ",", FormatDouble(r.f1), ",",
                      FormatDouble(r.sparsity), ",",
                      FormatDouble(r.hyperparameter), ",", r.seed, ",",
                      r.error);
}

std::string CsvRow(const ExperimentResult& r) {
  const std::string hyper =
      r.error.empty() ? FormatDouble(r.hyperparameter)
                      : absl::StrCat(AsAbsl(kErrorPrefix), r.error);
  return absl::StrCat(
      CsvEscape(r.scenario), ",", CsvEscape(r.algorithm), ",", r.num_rows, ",",
      r.dim, ",", r.sparsity_level, ",", FormatDouble(r.epsilon), ",",
      CsvEscape(r.noise), ",", r.replication, ",", FormatDouble(r.mse), ",",
      FormatDouble(r.mae), ",", FormatDouble(r.f1), ",",
      FormatDouble(r.sparsity), ",", FormatDouble(r.seconds), ",",
      CsvEscape(hyper), ",", r.seed);
}

void WriteResultsCsv(const std::vector<ExperimentResult>& results,
                     std::ostream& out) {
  out << kResultsHeader << '\n';
  for (const ExperimentResult& r : results) out << CsvRow(r) << '\n';
}

absl::StatusOr<std::vector<ExperimentResult>> ParseResultsCsv(
    std::string_view text) {
  std::size_t pos = 0;
  int line = 1;
  auto header = NextRecord(text, pos, line);
  if (!header.ok()) return header.status();
  if (absl::StrJoin(*header, ",") != AsAbsl(kResultsHeader)) {
    return absl::InvalidArgumentError("unexpected results header");
  }
  std::vector<ExperimentResult> out;
  while (pos < text.size()) {
    const int record_line = line;
    auto cells = NextRecord(text, pos, line);
    if (!cells.ok()) return cells.status();
    if (cells->size() == 1 && (*cells)[0].empty()) continue;
    auto fail = [&](const absl::Status& s) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", record_line, ": ", s.message()));
    };
    if (cells->size() != kNumColumns) {
      return fail(absl::InvalidArgumentError(
          absl::StrCat("expected ", kNumColumns, " columns, found ",
                       cells->size())));
    }
    const std::vector<std::string>& c = *cells;
    ExperimentResult r;
    r.scenario = c[0];
    r.algorithm = c[1];
    r.noise = c[6];
    auto n = ParseInt<int>(c[2]);
    auto p = ParseInt<int>(c[3]);
    auto s = ParseInt<int>(c[4]);
    auto rep = ParseInt<int>(c[7]);
    auto seed = ParseInt<std::uint64_t>(c[14]);
    for (const absl::Status& st :
         {n.status(), p.status(), s.status(), rep.status(), seed.status()}) {
      if (!st.ok()) return fail(st);
    }
    r.num_rows = *n;
    r.dim = *p;
    r.sparsity_level = *s;
    r.replication = *rep;
    r.seed = *seed;
    struct Field {
      int column;
      double* target;
    };
    for (const Field& f :
         {Field{5, &r.epsilon}, Field{8, &r.mse}, Field{9, &r.mae},
          Field{10, &r.f1}, Field{11, &r.sparsity}, Field{12, &r.seconds}}) {
      auto v = ParseDouble(c[f.column]);
      if (!v.ok()) return fail(v.status());
      *f.target = *v;
    }
    if (std::string_view(c[13]).starts_with(kErrorPrefix)) {
      r.error = c[13].substr(kErrorPrefix.size());
    } else {
      auto v = ParseDouble(c[13]);
      if (!v.ok()) return fail(v.status());
      r.hyperparameter = *v;
    }
    r.task_index = static_cast<long>(out.size());
    out.push_back(std::move(r));
  }
  return out;
}

std::string ResultsJson(const std::vector<ExperimentResult>& results) {
  Json array = Json::array();
  for (const ExperimentResult& r : results) array.push_back(ToJson(r));
  return array.dump(2) + "\n";
}

absl::StatusOr<std::vector<ExperimentResult>> ParseResultsJson(
    std::string_view text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    std::string repaired(absl::StripTrailingAsciiWhitespace(AsAbsl(text)));
    repaired += repaired.empty() ? "[]" : "]";
    j = Json::parse(repaired, nullptr, false);
  }
  if (j.is_discarded() || !j.is_array()) {
    return absl::InvalidArgumentError("results JSON is not an array");
  }
  std::vector<ExperimentResult> out;
  for (const Json& record : j) {
    auto r = FromJson(record);
    if (!r.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("record ", out.size(), ": ", r.status().message()));
    }
    r->task_index = static_cast<long>(out.size());
    out.push_back(*std::move(r));
  }
  return out;
}

absl::Status WriteResults(const std::vector<ExperimentResult>& results,
                          const std::string& path, std::string_view format) {
  auto sink = OpenResultSink(path, format);
  if (!sink.ok()) return sink.status();
  for (const ExperimentResult& r : results) {
    if (absl::Status s = (*sink)->Append(r); !s.ok()) return s;
  }
  return (*sink)->Close();
}

absl::StatusOr<std::vector<ExperimentResult>> ReadResults(
    const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open '", path, "'"));
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const absl::string_view trimmed = absl::StripLeadingAsciiWhitespace(text);
  auto parsed = !trimmed.empty() && trimmed.front() == '['
                    ? ParseResultsJson(text)
                    : ParseResultsCsv(text);
  if (!parsed.ok()) {
    return absl::Status(parsed.status().code(),
                        absl::StrCat(path, ": ", parsed.status().message()));
  }
  return parsed;
}

absl::StatusOr<std::unique_ptr<ResultSink>> OpenResultSink(
    const std::string& path, std::string_view format) {
  if (format != "csv" && format != "json") {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown format '", AsAbsl(format), "'; expected csv or json"));
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return absl::InternalError(absl::StrCat("cannot write '", path, "'"));
  if (format == "csv") {
    out << kResultsHeader << '\n';
    out.flush();
    if (!out) return absl::InternalError(absl::StrCat("write failed: '", path, "'"));
    return std::unique_ptr<ResultSink>(new CsvSink(std::move(out), path));
  }
  return std::unique_ptr<ResultSink>(new JsonSink(std::move(out), path));
}

}  // namespace frappe::harness
