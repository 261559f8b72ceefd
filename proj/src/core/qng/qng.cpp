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

#include "qng/qng.hpp"

#include <algorithm>

#include "util/errors.hpp"

namespace hubvqe {

void require_one_dimensional(const HubbardInstance& instance) {
  if (instance.grid.rows != 1 && instance.grid.cols != 1) {
    throw UnsupportedError("natural-gradient methods need a 1-D grid");
  }
}

std::vector<double> prefix_parameters(std::span<const double> theta, int k) {
  if (k < 0 || k > static_cast<int>(theta.size())) throw InputError("prefix index out of range");
  std::vector<double> p(theta.begin(), theta.end());
  std::fill(p.begin() + k, p.end(), 0.0);
  return p;
}

namespace {

double metric_entry(QngMethod method, double scale, double mean, double variance) {
  const double var = std::max(variance, 0.0);
  return scale * scale * (method == QngMethod::ImaginaryTime ? var + mean * mean : var);
}

void check(const Ansatz& ansatz, std::span<const double> theta) {
  require_one_dimensional(ansatz.instance());
  if (static_cast<int>(theta.size()) != ansatz.num_params()) throw InputError("parameter vector has wrong length");
}

}  // namespace

MetricDiagonal sampled_metric(const Ansatz& ansatz, CostFunction& cost, std::span<const double> theta,
                              QngMethod method) {
  check(ansatz, theta);
  MetricDiagonal m;
  const int n = ansatz.num_params();
  m.entries.resize(n);
  for (int k = 0; k < n; ++k) {
    const CostSample s = cost.sample(prefix_parameters(theta, k), false);
    const std::size_t gi = ansatz.group_index_for_param(k);
    if (gi >= s.groups.size()) throw InputError("cost function does not report group statistics");
    const GroupStats& g = s.groups[gi];
    m.entries[k] = metric_entry(method, ansatz.generator_spec(k).scale, g.mean, g.variance);
    m.nshots = g.nshots;
  }
  return m;
}

MetricDiagonal qfi_diagonal(const Ansatz& ansatz, CostFunction& cost, std::span<const double> theta) {
  return sampled_metric(ansatz, cost, theta, QngMethod::Natural);
}

MetricDiagonal ite_metric_diagonal(const Ansatz& ansatz, CostFunction& cost, std::span<const double> theta) {
  return sampled_metric(ansatz, cost, theta, QngMethod::ImaginaryTime);
}

namespace {

MetricDiagonal exact_metric(const Ansatz& ansatz, std::span<const double> theta, QngMethod method) {
  check(ansatz, theta);
  MetricDiagonal m;
  const int n = ansatz.num_params();
  m.entries.resize(n);
  StateVector state = ansatz.reference_state();
  for (int k = 0; k < n; ++k) {
    if (k > 0) ansatz.apply_params(state, theta, k - 1, k);
    const GroupMoments g = ansatz.kernel().exact_moments(state, ansatz.group_index_for_param(k));
    m.entries[k] = metric_entry(method, ansatz.generator_spec(k).scale, g.mean, g.variance());
  }
  return m;
}

std::vector<double> metric_step(std::span<const double> theta, std::span<const double> grad,
                                std::span<const double> metric, double eta, double reg) {
  if (grad.size() != theta.size() || metric.size() != theta.size()) throw InputError("step vectors differ in length");
  std::vector<double> out(theta.begin(), theta.end());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] -= eta * grad[k] / std::max(metric[k], reg);
  return out;
}

}  // namespace

MetricDiagonal exact_qfi_diagonal(const Ansatz& ansatz, std::span<const double> theta) {
  return exact_metric(ansatz, theta, QngMethod::Natural);
}

MetricDiagonal exact_ite_metric_diagonal(const Ansatz& ansatz, std::span<const double> theta) {
  return exact_metric(ansatz, theta, QngMethod::ImaginaryTime);
}

std::vector<double> natural_step(std::span<const double> theta, std::span<const double> grad,
                                 std::span<const double> metric, double eta, double reg) {
  return metric_step(theta, grad, metric, eta, reg);
}

std::vector<double> ite_step(std::span<const double> theta, std::span<const double> grad,
                             std::span<const double> metric, double eta, double reg) {
  return metric_step(theta, grad, metric, eta, reg);
}

std::int64_t qng_run(QngMethod method, OptimizerContext& ctx, const HyperparameterSet& h) {
  if (ctx.ansatz == nullptr) throw InputError("natural-gradient methods need an ansatz");
  if (!ctx.gradient) throw InputError("natural-gradient methods need a gradient spec");
  require_one_dimensional(ctx.ansatz->instance());
  const double eta = h.get("eta");
  std::vector<double> x = ctx.x0;
  for (std::int64_t it = 0;; ++it) {
    ctx.cost.set_iteration(it);
    ctx.cost(x);
    const std::vector<double> g = (*ctx.gradient)(ctx.cost, x, ctx.rng);
    if (method == QngMethod::GradientDescent) {
      for (std::size_t k = 0; k < x.size(); ++k) x[k] -= eta * g[k];
    } else {
      const MetricDiagonal m = sampled_metric(*ctx.ansatz, ctx.cost, x, method);
      x = metric_step(x, g, m.entries, eta, kMetricRegularization);
    }
  }
}

}  // namespace hubvqe
