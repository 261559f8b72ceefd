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
#include <numeric>
#include <random>

#include <Eigen/Dense>

#include "opt/optimizer.hpp"

namespace hubvqe {

// (mu/mu_w, lambda)-CMA-ES with rank-1 and rank-mu updates and cumulative
// step-size adaptation, using the reference strategy parameters.
std::int64_t cmaes(OptimizerContext& ctx, const HyperparameterSet& h) {
  using Eigen::MatrixXd;
  using Eigen::VectorXd;
  const int n = static_cast<int>(ctx.x0.size());
  const double dn = n;
  double sigma = h.get("sigma");
  const int lambda = 4 + static_cast<int>(std::floor(3.0 * std::log(dn)));
  const int mu = lambda / 2;
  VectorXd w(mu);
  for (int i = 0; i < mu; ++i) w[i] = std::log(lambda / 2.0 + 0.5) - std::log(i + 1.0);
  w /= w.sum();
  const double mueff = 1.0 / w.squaredNorm();
  const double cc = (4.0 + mueff / dn) / (dn + 4.0 + 2.0 * mueff / dn);
  const double cs = (mueff + 2.0) / (dn + mueff + 5.0);
  const double c1 = 2.0 / ((dn + 1.3) * (dn + 1.3) + mueff);
  const double cmu = std::min(1.0 - c1, 2.0 * (mueff - 2.0 + 1.0 / mueff) / ((dn + 2.0) * (dn + 2.0) + mueff));
  const double damps = 1.0 + 2.0 * std::max(0.0, std::sqrt((mueff - 1.0) / (dn + 1.0)) - 1.0) + cs;
  const double chin = std::sqrt(dn) * (1.0 - 1.0 / (4.0 * dn) + 1.0 / (21.0 * dn * dn));

  VectorXd mean = Eigen::Map<const VectorXd>(ctx.x0.data(), n);
  VectorXd pc = VectorXd::Zero(n), ps = VectorXd::Zero(n);
  MatrixXd C = MatrixXd::Identity(n, n), B = MatrixXd::Identity(n, n);
  VectorXd D = VectorXd::Ones(n);
  std::int64_t eigen_at = 0, evals = 0;
  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<VectorXd> arz(lambda), arx(lambda);
  std::vector<double> fit(lambda);
  std::vector<int> order(lambda);
  std::vector<double> xs(n);
  for (std::int64_t gen = 0;; ++gen) {
    ctx.cost.set_iteration(gen);
    // All draws for the generation happen before any evaluation.
    for (int k = 0; k < lambda; ++k) {
      arz[k].resize(n);
      for (int i = 0; i < n; ++i) arz[k][i] = normal(ctx.rng);
      arx[k] = mean + sigma * (B * D.cwiseProduct(arz[k]));
    }
    for (int k = 0; k < lambda; ++k) {
      std::copy(arx[k].data(), arx[k].data() + n, xs.begin());
      fit[k] = ctx.cost(xs).value;
      ++evals;
    }
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return fit[a] < fit[b]; });

    const VectorXd old = mean;
    mean.setZero();
    for (int i = 0; i < mu; ++i) mean += w[i] * arx[order[i]];
    const VectorXd y = (mean - old) / sigma;
    const VectorXd cinv_y = B * (B.transpose() * y).cwiseQuotient(D);
    ps = (1.0 - cs) * ps + std::sqrt(cs * (2.0 - cs) * mueff) * cinv_y;
    const double psn = ps.norm();
    const double hsig_lhs = psn / std::sqrt(1.0 - std::pow(1.0 - cs, 2.0 * evals / lambda)) / chin;
    const double hsig = hsig_lhs < 1.4 + 2.0 / (dn + 1.0) ? 1.0 : 0.0;
    pc = (1.0 - cc) * pc + hsig * std::sqrt(cc * (2.0 - cc) * mueff) * y;

    MatrixXd rank_mu = MatrixXd::Zero(n, n);
    for (int i = 0; i < mu; ++i) {
      const VectorXd d = (arx[order[i]] - old) / sigma;
      rank_mu.noalias() += w[i] * d * d.transpose();
    }
    C = (1.0 - c1 - cmu) * C + c1 * (pc * pc.transpose() + (1.0 - hsig) * cc * (2.0 - cc) * C) + cmu * rank_mu;
    sigma *= std::exp((cs / damps) * (psn / chin - 1.0));

    if (evals - eigen_at > lambda / (c1 + cmu) / dn / 10.0) {
      eigen_at = evals;
      C = 0.5 * (C + C.transpose());
      Eigen::SelfAdjointEigenSolver<MatrixXd> eig(C);
      VectorXd lam = eig.eigenvalues().cwiseMax(1e-12);
      B = eig.eigenvectors();
      D = lam.cwiseSqrt();
      C = B * lam.asDiagonal() * B.transpose();
    }
    // The distribution has collapsed below double resolution of the mean.
    if (!std::isfinite(sigma) || sigma * D.maxCoeff() < 1e-15 * std::max(1.0, mean.cwiseAbs().maxCoeff())) {
      return gen + 1;
    }
  }
}

}  // namespace hubvqe
