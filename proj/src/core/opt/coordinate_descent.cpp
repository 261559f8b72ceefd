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
#include <numbers>
#include <numeric>

#include "opt/optimizer.hpp"
#include "util/errors.hpp"

namespace hubvqe {

TrigModel::TrigModel(std::span<const double> samples, double center, double period)
    : center_(center), omega_(2.0 * std::numbers::pi / period) {
  const std::size_t n = samples.size();
  if (n % 2 == 0 || n == 0) throw InputError("trigonometric fit needs 2D+1 samples");
  const int degree = static_cast<int>(n / 2);
  a_.assign(static_cast<std::size_t>(degree) + 1, 0.0);
  b_.assign(static_cast<std::size_t>(degree) + 1, 0.0);
  // Samples sit at u_j = 2 pi (j - D) / N in units of omega * (theta - center).
  for (std::size_t j = 0; j < n; ++j) {
    const double u = 2.0 * std::numbers::pi * (static_cast<double>(j) - degree) / static_cast<double>(n);
    a_[0] += samples[j] / static_cast<double>(n);
    for (int d = 1; d <= degree; ++d) {
      a_[d] += 2.0 * samples[j] * std::cos(d * u) / static_cast<double>(n);
      b_[d] += 2.0 * samples[j] * std::sin(d * u) / static_cast<double>(n);
    }
  }
}

std::vector<double> TrigModel::sample_angles(int degree, double center, double period) {
  const int n = 2 * degree + 1;
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) out[j] = center + period * (j - degree) / n;
  return out;
}

double TrigModel::operator()(double theta) const {
  const double u = omega_ * (theta - center_);
  double v = a_[0];
  for (std::size_t d = 1; d < a_.size(); ++d) v += a_[d] * std::cos(d * u) + b_[d] * std::sin(d * u);
  return v;
}

double TrigModel::derivative(double theta) const {
  const double u = omega_ * (theta - center_);
  double v = 0.0;
  for (std::size_t d = 1; d < a_.size(); ++d) v += d * omega_ * (-a_[d] * std::sin(d * u) + b_[d] * std::cos(d * u));
  return v;
}

double TrigModel::argmin() const {
  constexpr int kScan = 4096;
  const double period = 2.0 * std::numbers::pi / omega_;
  double best_theta = center_, best = (*this)(center_);
  for (int i = 0; i < kScan; ++i) {
    const double th = center_ + period * (static_cast<double>(i) / kScan - 0.5);
    const double v = (*this)(th);
    if (v < best) {
      best = v;
      best_theta = th;
    }
  }
  // Newton on the derivative, with a numerical second derivative of the model.
  double th = best_theta;
  const double h = 1e-5 * period;
  for (int it = 0; it < 20; ++it) {
    const double d1 = derivative(th);
    const double d2 = (derivative(th + h) - derivative(th - h)) / (2 * h);
    if (!(d2 > 0)) break;
    const double next = th - d1 / d2;
    if (std::abs(next - best_theta) > period / kScan) break;
    th = next;
    if (std::abs(d1 / d2) < 1e-14) break;
  }
  return (*this)(th) <= best ? th : best_theta;
}

std::int64_t coordinate_descent(OptimizerContext& ctx, const HyperparameterSet& h) {
  const Ansatz& ansatz = *ctx.ansatz;
  const int nu = ansatz.num_params();
  const bool shuffle = h.get_bool("shuffle");
  std::vector<double> x = ctx.x0;
  std::vector<int> order(static_cast<std::size_t>(nu));
  ctx.cost.set_iteration(0);
  ctx.cost(x);
  for (std::int64_t sweep = 1;; ++sweep) {
    ctx.cost.set_iteration(sweep);
    std::iota(order.begin(), order.end(), 0);
    if (shuffle) std::shuffle(order.begin(), order.end(), ctx.rng);
    for (int i : order) {
      const GeneratorSpec gen = ansatz.generator_spec(i);
      const double center = x[i];
      const auto angles = TrigModel::sample_angles(gen.degree, center, gen.period);
      std::vector<double> values(angles.size());
      for (std::size_t j = 0; j < angles.size(); ++j) {
        x[i] = angles[j];
        values[j] = ctx.cost(x).value;
      }
      x[i] = TrigModel(values, center, gen.period).argmin();
    }
  }
}

}  // namespace hubvqe
