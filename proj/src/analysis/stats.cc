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

#include "modalbench/analysis/stats.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/special_functions/erf.hpp>

namespace modalbench {

namespace {

constexpr const char* kIntercept = "(Intercept)";

const std::string& FactorValue(const std::map<std::string, std::string>& factors, const std::string& name) {
  const auto it = factors.find(name);
  if (it == factors.end()) throw std::invalid_argument("row has no value for factor " + name);
  return it->second;
}

double CovariateValue(const std::map<std::string, double>& covs, const std::string& name) {
  const auto it = covs.find(name);
  if (it == covs.end()) throw std::invalid_argument("row has no value for covariate " + name);
  return it->second;
}

void Solve(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const Eigen::VectorXd& w, Eigen::VectorXd* beta) {
  const Eigen::VectorXd sw = w.array().sqrt();
  const Eigen::MatrixXd Xw = sw.asDiagonal() * X;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Xw);
  if (qr.rank() < X.cols()) throw FitError("design matrix is rank deficient");
  *beta = qr.solve(sw.cwiseProduct(y));
}

Eigen::MatrixXd InverseGram(const Eigen::MatrixXd& X, const Eigen::VectorXd& w) {
  const Eigen::MatrixXd gram = X.transpose() * w.asDiagonal() * X;
  return gram.ldlt().solve(Eigen::MatrixXd::Identity(gram.rows(), gram.cols()));
}

double LogisticLoglik(const Eigen::VectorXd& eta, const Eigen::VectorXd& y) {
  double ll = 0;
  for (Eigen::Index i = 0; i < eta.size(); ++i) {
    // log(1 + e^eta) computed without overflow.
    const double softplus = eta[i] > 0 ? eta[i] + std::log1p(std::exp(-eta[i])) : std::log1p(std::exp(eta[i]));
    ll += y[i] * eta[i] - softplus;
  }
  return ll;
}

std::vector<double> AverageRanks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = r;
    i = j + 1;
  }
  return ranks;
}

double Pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0 || syy == 0) throw std::invalid_argument("correlation of a constant variable");
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

Eigen::RowVectorXd Design::Encode(const std::map<std::string, std::string>& factors,
                                  const std::map<std::string, double>& covariates, const std::string& group) const {
  Eigen::RowVectorXd x = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(terms.size()));
  Eigen::Index col = 0;
  x[col++] = 1.0;
  for (const auto& f : spec.factors) {
    const auto& levels = factor_levels.at(f);
    const std::string& value = FactorValue(factors, f);
    if (std::find(levels.begin(), levels.end(), value) == levels.end()) {
      throw std::invalid_argument("unknown level '" + value + "' of factor " + f);
    }
    for (std::size_t l = 1; l < levels.size(); ++l) x[col++] = value == levels[l] ? 1.0 : 0.0;
  }
  for (const auto& c : spec.covariates) x[col++] = CovariateValue(covariates, c);
  if (!spec.group.empty()) {
    const double slope_x = spec.group_slope.empty() ? 0.0 : CovariateValue(covariates, spec.group_slope);
    if (!group.empty() && std::find(group_levels.begin(), group_levels.end(), group) == group_levels.end()) {
      throw std::invalid_argument("unknown level '" + group + "' of " + spec.group);
    }
    // An empty group averages over all group levels with equal weight.
    const double weight = 1.0 / static_cast<double>(group_levels.size());
    for (std::size_t g = 1; g < group_dummies.size(); ++g) {
      x[col++] = group.empty() ? weight : (group == group_dummies[g] ? 1.0 : 0.0);
    }
    if (!spec.group_slope.empty()) {
      for (std::size_t g = 1; g < group_dummies.size(); ++g) {
        x[col++] = slope_x * (group.empty() ? weight : (group == group_dummies[g] ? 1.0 : 0.0));
      }
    }
  }
  return x;
}

Design MakeDesign(const std::vector<DataRow>& rows, const ModelSpec& spec,
                  const std::set<std::string>& groups_without_dummy) {
  Design d;
  d.spec = spec;
  d.terms.push_back(kIntercept);
  for (const auto& f : spec.factors) {
    std::set<std::string> seen;
    for (const auto& r : rows) seen.insert(FactorValue(r.factors, f));
    std::vector<std::string> levels;
    const auto listed = spec.levels.find(f);
    if (listed != spec.levels.end()) {
      for (const auto& l : listed->second) {
        if (seen.erase(l)) levels.push_back(l);
      }
      if (!seen.empty()) throw std::invalid_argument("unknown level '" + *seen.begin() + "' of factor " + f);
    } else {
      levels.assign(seen.begin(), seen.end());
    }
    for (std::size_t l = 1; l < levels.size(); ++l) d.terms.push_back(f + "=" + levels[l]);
    d.factor_levels[f] = std::move(levels);
  }
  for (const auto& c : spec.covariates) {
    double sum = 0;
    for (const auto& r : rows) sum += CovariateValue(r.covariates, c);
    d.covariate_means[c] = rows.empty() ? 0.0 : sum / static_cast<double>(rows.size());
    d.terms.push_back(c);
  }
  if (!spec.group.empty()) {
    std::set<std::string> seen;
    for (const auto& r : rows) seen.insert(FactorValue(r.factors, spec.group));
    d.group_levels.assign(seen.begin(), seen.end());
    for (const auto& g : d.group_levels) {
      if (!groups_without_dummy.count(g)) d.group_dummies.push_back(g);
    }
    for (std::size_t g = 1; g < d.group_dummies.size(); ++g) d.terms.push_back(spec.group + "=" + d.group_dummies[g]);
    if (!spec.group_slope.empty()) {
      if (std::find(spec.covariates.begin(), spec.covariates.end(), spec.group_slope) == spec.covariates.end()) {
        throw std::invalid_argument("group slope covariate " + spec.group_slope + " is not a model covariate");
      }
      for (std::size_t g = 1; g < d.group_dummies.size(); ++g) {
        d.terms.push_back(spec.group_slope + ":" + spec.group + "=" + d.group_dummies[g]);
      }
    }
  }
  return d;
}

Eigen::MatrixXd DesignMatrix(const Design& d, const std::vector<DataRow>& rows) {
  Eigen::MatrixXd X(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(d.terms.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string group = d.spec.group.empty() ? "" : FactorValue(rows[i].factors, d.spec.group);
    X.row(static_cast<Eigen::Index>(i)) = d.Encode(rows[i].factors, rows[i].covariates, group);
  }
  return X;
}

double Fit::Coef(const std::string& term) const {
  const auto it = std::find(design.terms.begin(), design.terms.end(), term);
  if (it == design.terms.end()) throw std::invalid_argument("no term " + term);
  return beta[it - design.terms.begin()];
}

double Fit::StdErr(const std::string& term) const {
  const auto it = std::find(design.terms.begin(), design.terms.end(), term);
  if (it == design.terms.end()) throw std::invalid_argument("no term " + term);
  const auto k = it - design.terms.begin();
  return std::sqrt(cov(k, k));
}

Fit FitLinear(const std::vector<DataRow>& rows, const ModelSpec& spec) {
  Fit fit;
  fit.design = MakeDesign(rows, spec);
  const Eigen::MatrixXd X = DesignMatrix(fit.design, rows);
  const auto n = X.rows(), p = X.cols();
  if (n < p) throw FitError("fewer rows (" + std::to_string(n) + ") than model terms (" + std::to_string(p) + ")");
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) y[i] = rows[static_cast<std::size_t>(i)].y;
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  Solve(X, y, ones, &fit.beta);
  const Eigen::VectorXd resid = y - X * fit.beta;
  const double ssr = resid.squaredNorm();
  const double sst = (y.array() - y.mean()).square().sum();
  fit.n = static_cast<std::size_t>(n);
  fit.sigma2 = n > p ? ssr / static_cast<double>(n - p) : 0.0;
  // A constant response leaves only rounding noise in sst.
  const double scale = y.squaredNorm() + 1.0;
  fit.r2 = sst > 1e-20 * scale ? 1.0 - ssr / sst : 0.0;
  fit.cov = fit.sigma2 * InverseGram(X, ones);
  const double s2_ml = std::max(ssr / static_cast<double>(n), 1e-300);
  fit.loglik = -0.5 * static_cast<double>(n) * (std::log(2 * M_PI * s2_ml) + 1.0);
  return fit;
}

Fit FitLogistic(const std::vector<DataRow>& rows, const ModelSpec& spec, const LogisticOptions& opts) {
  for (const auto& r : rows) {
    if (r.y != 0.0 && r.y != 1.0) throw std::invalid_argument("logistic response must be 0 or 1");
  }
  Fit fit;
  fit.logistic = true;
  std::set<std::string> separated;
  if (!spec.group.empty()) {
    std::map<std::string, std::pair<int, int>> tally;  // (rows, successes)
    for (const auto& r : rows) {
      auto& t = tally[FactorValue(r.factors, spec.group)];
      ++t.first;
      t.second += static_cast<int>(r.y);
    }
    for (const auto& [g, t] : tally) {
      if (t.second == 0 || t.second == t.first) {
        separated.insert(g);
        fit.warnings.push_back(spec.group + " " + g + " has all responses " + (t.second == 0 ? "0" : "1") +
                               "; no separate intercept estimated");
      }
    }
  }
  fit.design = MakeDesign(rows, spec, separated);
  const Eigen::MatrixXd X = DesignMatrix(fit.design, rows);
  const auto n = X.rows(), p = X.cols();
  if (n < p) throw FitError("fewer rows (" + std::to_string(n) + ") than model terms (" + std::to_string(p) + ")");
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) y[i] = rows[static_cast<std::size_t>(i)].y;
  if (y.sum() == 0 || y.sum() == static_cast<double>(n)) throw SeparationError("all responses are identical");

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  double ll = LogisticLoglik(X * beta, y);
  fit.loglik_trace.push_back(ll);
  Eigen::VectorXd w(n);
  bool converged = false;
  for (int it = 1; it <= opts.max_iterations; ++it) {
    const Eigen::VectorXd eta = X * beta;
    Eigen::VectorXd z(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double mu = 1.0 / (1.0 + std::exp(-eta[i]));
      w[i] = std::max(mu * (1 - mu), 1e-12);
      z[i] = eta[i] + (y[i] - mu) / w[i];
    }
    Eigen::VectorXd proposal;
    Solve(X, z, w, &proposal);
    double new_ll = LogisticLoglik(X * proposal, y);
    for (int half = 0; half < 30 && new_ll < ll; ++half) {
      proposal = beta + 0.5 * (proposal - beta);
      new_ll = LogisticLoglik(X * proposal, y);
    }
    fit.iterations = it;
    if (new_ll < ll) break;  // no ascent direction left
    beta = proposal;
    const double gain = new_ll - ll;
    ll = new_ll;
    fit.loglik_trace.push_back(ll);
    if (gain < opts.tolerance * (1.0 + std::abs(ll))) {
      converged = true;
      break;
    }
  }
  const Eigen::VectorXd eta = X * beta;
  if (eta.cwiseAbs().maxCoeff() > 30.0) throw SeparationError("fitted probabilities reach 0 or 1 (data are separated)");
  if (!converged) fit.warnings.push_back("IRLS did not converge in " + std::to_string(opts.max_iterations) + " iterations");
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mu = 1.0 / (1.0 + std::exp(-eta[i]));
    w[i] = mu * (1 - mu);
  }
  fit.beta = beta;
  fit.cov = InverseGram(X, w);
  fit.loglik = ll;
  fit.n = static_cast<std::size_t>(n);
  return fit;
}

double NormalCdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

namespace {

Eigen::RowVectorXd GridAverage(const Fit& fit, const std::string& factor, const std::string& level) {
  const Design& d = fit.design;
  std::vector<std::string> others;
  for (const auto& f : d.spec.factors) {
    if (f != factor) others.push_back(f);
  }
  Eigen::RowVectorXd sum = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(d.terms.size()));
  std::size_t cells = 0;
  std::map<std::string, std::string> cell{{factor, level}};
  std::vector<std::size_t> idx(others.size(), 0);
  for (;;) {
    for (std::size_t k = 0; k < others.size(); ++k) cell[others[k]] = d.factor_levels.at(others[k])[idx[k]];
    sum += d.Encode(cell, d.covariate_means, "");
    ++cells;
    std::size_t k = 0;
    while (k < others.size() && ++idx[k] == d.factor_levels.at(others[k]).size()) idx[k++] = 0;
    if (k == others.size()) break;
  }
  return sum / static_cast<double>(cells);
}

const std::vector<std::string>& LevelsOf(const Fit& fit, const std::string& factor) {
  const auto it = fit.design.factor_levels.find(factor);
  if (it == fit.design.factor_levels.end()) throw std::invalid_argument("factor " + factor + " is not in the model");
  return it->second;
}

void CheckLevel(const Fit& fit, const std::string& factor, const std::string& level) {
  const auto& levels = LevelsOf(fit, factor);
  if (std::find(levels.begin(), levels.end(), level) == levels.end()) {
    throw std::invalid_argument("unknown level '" + level + "' of factor " + factor);
  }
}

}  // namespace

std::vector<MarginalMean> EstimatedMarginalMeans(const Fit& fit, const std::string& factor, double level) {
  const double z = -std::sqrt(2.0) * boost::math::erfc_inv(1.0 + level);
  std::vector<MarginalMean> out;
  for (const auto& l : LevelsOf(fit, factor)) {
    const Eigen::RowVectorXd x = GridAverage(fit, factor, l);
    const double est = x.dot(fit.beta);
    const double se = std::sqrt(std::max(0.0, (x * fit.cov * x.transpose())(0, 0)));
    out.push_back({l, est, se, est - z * se, est + z * se});
  }
  return out;
}

ContrastResult Contrast(const Fit& fit, const std::string& factor, const std::string& lower_level,
                        const std::string& higher_level) {
  CheckLevel(fit, factor, lower_level);
  CheckLevel(fit, factor, higher_level);
  const Eigen::RowVectorXd v = GridAverage(fit, factor, higher_level) - GridAverage(fit, factor, lower_level);
  const double est = v.dot(fit.beta);
  const double se = std::sqrt(std::max(0.0, (v * fit.cov * v.transpose())(0, 0)));
  double p;
  if (se > 0) {
    p = 1.0 - NormalCdf(est / se);
  } else {
    p = est > 0 ? 0.0 : (est < 0 ? 1.0 : 0.5);
  }
  return {lower_level + " < " + higher_level, est, se, p};
}

LikelihoodRatioTest CompareNested(const Fit& full, const Fit& reduced) {
  const int df = static_cast<int>(full.beta.size()) - static_cast<int>(reduced.beta.size());
  if (df <= 0) throw std::invalid_argument("reduced model must have fewer terms");
  const double stat = std::max(0.0, 2.0 * (full.loglik - reduced.loglik));
  const boost::math::chi_squared dist(df);
  return {stat, df, boost::math::cdf(boost::math::complement(dist, stat))};
}

Correlation Correlate(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("correlation inputs differ in length");
  if (x.size() < 3) throw std::invalid_argument("correlation needs at least 3 points");
  return {x.size(), Pearson(x, y), Pearson(AverageRanks(x), AverageRanks(y))};
}

}  // namespace modalbench
