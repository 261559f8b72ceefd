// Copyright 2026 The hubvqe Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "opt/optimizer.hpp"
#include "util/errors.hpp"

namespace hubvqe {

namespace {

constexpr double kNoiseFloor = 1e-10;  // variance floor for noiseless samples

std::size_t feature_count(std::size_t n) { return (n + 1) * (n + 2) / 2; }

void features(std::span<const double> d, Eigen::Ref<Eigen::VectorXd> phi) {
  const std::size_t n = d.size();
  std::size_t f = 0;
  phi[f++] = 1.0;
  for (std::size_t i = 0; i < n; ++i) phi[f++] = d[i];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) phi[f++] = d[i] * d[j];
  }
}

}  // namespace

QuadraticFit fit_quadratic_surrogate(std::span<const std::vector<double>> points, std::span<const double> values,
                                     std::span<const double> std_errors, std::span<const double> center, double l0) {
  const std::size_t n = center.size(), nf = feature_count(n), m = points.size();
  if (values.size() != m || std_errors.size() != m) throw InputError("surrogate inputs differ in length");
  if (!(l0 > 0)) throw InputError("length scale must be positive");

  // Values are centred so the unit-scale prior on the constant does not bias the fit.
  double mean = 0.0;
  for (double v : values) mean += v;
  if (m > 0) mean /= static_cast<double>(m);

  Eigen::MatrixXd precision = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nf), static_cast<Eigen::Index>(nf));
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(nf));
  std::size_t f = 0;
  auto prior = [&](int degree) { precision(f, f) = std::pow(l0, 2.0 * degree); ++f; };  // 1 / (l0^-d)^2
  prior(0);
  for (std::size_t i = 0; i < n; ++i) prior(1);
  for (std::size_t i = 0; i < n * (n + 1) / 2; ++i) prior(2);

  Eigen::VectorXd phi(static_cast<Eigen::Index>(nf));
  std::vector<double> d(n);
  for (std::size_t p = 0; p < m; ++p) {
    for (std::size_t i = 0; i < n; ++i) d[i] = points[p][i] - center[i];
    features(d, phi);
    const double w = 1.0 / std::max(std_errors[p] * std_errors[p], kNoiseFloor);
    precision.noalias() += w * phi * phi.transpose();
    rhs.noalias() += w * (values[p] - mean) * phi;
  }
  precision = 0.5 * (precision + precision.transpose());
  Eigen::VectorXd coeff = precision.ldlt().solve(rhs);
  if (!coeff.allFinite()) {
    // Floor the spectrum and retry; the prior keeps the system well posed in exact arithmetic.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(precision);
    Eigen::VectorXd lam = eig.eigenvalues().cwiseMax(1e-12);
    coeff = eig.eigenvectors() * (eig.eigenvectors().transpose() * rhs).cwiseQuotient(lam);
  }
  QuadraticFit fit;
  fit.constant = coeff[0] + mean;
  fit.gradient.assign(coeff.data() + 1, coeff.data() + 1 + n);
  return fit;
}

std::int64_t bayes_mgd(OptimizerContext& ctx, const HyperparameterSet& h) {
  const double alpha = h.get("alpha"), gamma = h.get("gamma"), A = h.get("A"), delta = h.get("delta"),
               xi = h.get("xi"), eta = h.get("eta"), l0 = h.get("l0");
  const std::size_t n = ctx.x0.size();
  const auto per_iter =
      std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(eta / 2.0 * (n + 1.0) * (n + 2.0) - 1e-9)));

  std::vector<std::vector<double>> hist_x;
  std::vector<double> hist_f, hist_se;
  auto evaluate = [&](const std::vector<double>& p) {
    const EnergyEstimate e = ctx.cost(p);
    hist_x.push_back(p);
    hist_f.push_back(e.value);
    hist_se.push_back(e.std_error);
  };

  std::vector<double> x = ctx.x0;
  ctx.cost.set_iteration(0);
  evaluate(x);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (std::int64_t j = 1;; ++j) {
    ctx.cost.set_iteration(j);
    const double radius = delta / std::pow(static_cast<double>(j), xi);
    const double rate = gamma / std::pow(static_cast<double>(j) + A, alpha);
    std::vector<double> p(n);
    for (std::int64_t s = 0; s < per_iter; ++s) {
      double norm = 0.0;
      for (auto& v : p) {
        v = normal(ctx.rng);
        norm += v * v;
      }
      norm = std::sqrt(norm);
      const double r = radius * std::pow(u01(ctx.rng), 1.0 / static_cast<double>(n));
      for (std::size_t i = 0; i < n; ++i) p[i] = x[i] + (norm > 0 ? r * p[i] / norm : 0.0);
      evaluate(p);
    }

    std::vector<std::vector<double>> pts;
    std::vector<double> vals, ses;
    for (std::size_t q = 0; q < hist_x.size(); ++q) {
      double d2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) d2 += (hist_x[q][i] - x[i]) * (hist_x[q][i] - x[i]);
      if (d2 <= radius * radius * (1 + 1e-12)) {
        pts.push_back(hist_x[q]);
        vals.push_back(hist_f[q]);
        ses.push_back(hist_se[q]);
      }
    }
    const QuadraticFit fit = fit_quadratic_surrogate(pts, vals, ses, x, l0);
    for (std::size_t i = 0; i < n; ++i) x[i] -= rate * fit.gradient[i];
  }
}

}  // namespace hubvqe
