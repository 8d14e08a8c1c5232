// Copyright 2026 The modalbench Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MODALBENCH_ANALYSIS_STATS_H_
#define MODALBENCH_ANALYSIS_STATS_H_

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace modalbench {

class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SeparationError : public FitError {
 public:
  using FitError::FitError;
};

struct DataRow {
  std::map<std::string, std::string> factors;
  std::map<std::string, double> covariates;
  double y = 0;
};

struct ModelSpec {
  std::vector<std::string> factors;  // treatment coded
  // Optional level order per factor; the first level is the reference.
  // Unlisted factors use sorted order.
  std::map<std::string, std::vector<std::string>> levels;
  std::vector<std::string> covariates;
  std::string group;        // when set, one intercept per group level
  std::string group_slope;  // covariate that also gets per-group slope deviations
};

// Column layout of a fitted model. Group terms are coded against the first
// group level that has its own intercept.
struct Design {
  ModelSpec spec;
  std::map<std::string, std::vector<std::string>> factor_levels;
  std::map<std::string, double> covariate_means;
  std::vector<std::string> group_levels;      // all levels seen
  std::vector<std::string> group_dummies;     // levels with their own columns
  std::vector<std::string> terms;

  Eigen::RowVectorXd Encode(const std::map<std::string, std::string>& factors,
                            const std::map<std::string, double>& covariates, const std::string& group) const;
};

Design MakeDesign(const std::vector<DataRow>& rows, const ModelSpec& spec,
                  const std::set<std::string>& groups_without_dummy = {});
Eigen::MatrixXd DesignMatrix(const Design& d, const std::vector<DataRow>& rows);

struct Fit {
  Design design;
  Eigen::VectorXd beta;
  Eigen::MatrixXd cov;
  std::size_t n = 0;
  double sigma2 = 0;   // linear fits: residual variance
  double r2 = 0;       // linear fits: plain R^2 (0 when the response is constant)
  double loglik = 0;   // logistic fits
  bool logistic = false;
  int iterations = 0;
  std::vector<double> loglik_trace;
  std::vector<std::string> warnings;

  double Coef(const std::string& term) const;
  double StdErr(const std::string& term) const;
};

// Ordinary least squares. Throws FitError on rank deficiency or when there are
// fewer rows than columns.
Fit FitLinear(const std::vector<DataRow>& rows, const ModelSpec& spec);

struct LogisticOptions {
  int max_iterations = 50;
  double tolerance = 1e-10;
};

// Logistic regression by iteratively reweighted least squares with step
// halving. Group levels whose responses are all equal get no intercept column
// (a warning is recorded). Throws SeparationError when the remaining data are
// separated.
Fit FitLogistic(const std::vector<DataRow>& rows, const ModelSpec& spec, const LogisticOptions& opts = {});

double NormalCdf(double z);

struct MarginalMean {
  std::string level;
  double estimate;
  double se;
  double lower;
  double upper;
};

// Predictions averaged over a balanced grid of the other factors and of the
// group levels, covariates at their sample means. Logistic fits report the
// link scale.
std::vector<MarginalMean> EstimatedMarginalMeans(const Fit& fit, const std::string& factor, double level = 0.95);

struct ContrastResult {
  std::string hypothesis;  // "a < b"
  double estimate;         // emm(b) - emm(a)
  double se;
  double p_value;          // one-sided, normal approximation
};

ContrastResult Contrast(const Fit& fit, const std::string& factor, const std::string& lower_level,
                        const std::string& higher_level);

struct LikelihoodRatioTest {
  double statistic;
  int df;
  double p_value;
};

LikelihoodRatioTest CompareNested(const Fit& full, const Fit& reduced);

struct Correlation {
  std::size_t n;
  double pearson;
  double spearman;
};

// Throws std::invalid_argument for fewer than 3 points or zero variance.
Correlation Correlate(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace modalbench

#endif  // MODALBENCH_ANALYSIS_STATS_H_
