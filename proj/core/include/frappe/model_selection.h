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

#ifndef FRAPPE_MODEL_SELECTION_H_
#define FRAPPE_MODEL_SELECTION_H_

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "frappe/core.h"

namespace frappe {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Evaluation metrics for one fitted weight. Fields that do not apply to a
// run (weight error on real data, prediction error on synthetic data) are
// NaN.
struct MetricReport {
  double mse_weights = kNaN;  // ||b - b*||_2^2 / p
  double mae_weights = kNaN;  // ||b - b*||_1 / p
  double mse_pred = kNaN;
  double mae_pred = kNaN;
  double f1 = kNaN;
  double precision = kNaN;
  double recall = kNaN;
  int sparsity = 0;  // |support(b)|
};

struct SupportScores {
  double f1 = 0.0;
  double precision = 0.0;
  double recall = 0.0;
};

// Support precision, recall and their harmonic mean, using supports at
// kSupportTolerance. An empty estimated support has precision 0, and
// f1 = 0 whenever precision + recall = 0.
SupportScores F1Score(const WeightVector& estimated, const WeightVector& truth);

double WeightMse(const WeightVector& estimated, const WeightVector& truth);

struct PredictionErrors {
  double mse = 0.0;
  double mae = 0.0;
};
PredictionErrors Predict(const Dataset& d, const WeightVector& w);

// Synthetic-data report: weight errors plus support recovery.
MetricReport EvaluateAgainstTruth(const WeightVector& estimated,
                                  const WeightVector& truth);
// Real-data report: test-set prediction errors.
MetricReport EvaluateOnTest(const WeightVector& estimated, const Dataset& test);

enum class LossKind { kAbsolute, kSquared };

// Mean absolute or mean squared training residual.
double TrainingLoss(const Dataset& d, const WeightVector& w, LossKind loss);

// N log(loss) + |support| log N.
double Bic(const Dataset& d, const WeightVector& w, LossKind loss);

struct CandidateScore {
  double candidate = 0.0;
  double bic = 0.0;
  int support_size = 0;
};

struct Selection {
  double selected = 0.0;
  WeightVector weights;
  std::vector<CandidateScore> scores;  // in input order
};

using CandidateFitter =
    std::function<absl::StatusOr<WeightVector>(double candidate)>;

// Fits every candidate and keeps the lowest BIC; ties go to the smaller
// support, then to the smaller candidate value, so the result does not
// depend on candidate order. The fitter must derive its randomness from the
// candidate value, not from its position.
absl::StatusOr<Selection> BicSelect(const Dataset& d,
                                    std::span<const double> candidates,
                                    LossKind loss,
                                    const CandidateFitter& fitter);

// count log-spaced values from lambda_max = ||X^T y||_inf / N down to
// lambda_max / 1000, strictly decreasing. Requires count >= 2.
std::vector<double> DefaultLambdaGrid(const Dataset& d, int count = 20);

// Sparsity targets for hard-thresholding methods: 1..count/2, then even
// steps of 2, capped at p. Twenty values give 1..10, 12, ..., 30.
std::vector<double> DefaultSparsityGrid(int dim, int count = 20);

}  // namespace frappe

#endif  // FRAPPE_MODEL_SELECTION_H_
