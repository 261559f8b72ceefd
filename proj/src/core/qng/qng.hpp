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

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ansatz/ansatz.hpp"
#include "cost/cost.hpp"
#include "opt/optimizer.hpp"

namespace hubvqe {

enum class QngMethod { GradientDescent, Natural, ImaginaryTime };

inline constexpr double kMetricRegularization = 1e-4;

// Diagonal of the quantum Fisher information (Natural) or of the
// imaginary-time metric A = F + mean^2 (ImaginaryTime); entries are >= 0.
struct MetricDiagonal {
  std::vector<double> entries;
  std::int64_t nshots = 0;  // shots per entry; 0 for exact values
};

// Throws UnsupportedError unless the grid is a single row or column.
void require_one_dimensional(const HubbardInstance& instance);

// theta with coordinates k.. set to zero: the circuit prefix before gate k.
std::vector<double> prefix_parameters(std::span<const double> theta, int k);

// One recorded call to `cost` per parameter, at the prefix parameters of that
// parameter; the entry is scale^2 times the variance (Natural) or variance
// plus squared mean (ImaginaryTime) of the generator group's shot values.
MetricDiagonal sampled_metric(const Ansatz& ansatz, CostFunction& cost, std::span<const double> theta,
                              QngMethod method);
MetricDiagonal qfi_diagonal(const Ansatz& ansatz, CostFunction& cost, std::span<const double> theta);
MetricDiagonal ite_metric_diagonal(const Ansatz& ansatz, CostFunction& cost, std::span<const double> theta);

// Same quantities from exact prefix-state moments.
MetricDiagonal exact_qfi_diagonal(const Ansatz& ansatz, std::span<const double> theta);
MetricDiagonal exact_ite_metric_diagonal(const Ansatz& ansatz, std::span<const double> theta);

// theta_k - eta * grad_k / max(metric_k, reg).
std::vector<double> natural_step(std::span<const double> theta, std::span<const double> grad,
                                 std::span<const double> metric, double eta, double reg = kMetricRegularization);
std::vector<double> ite_step(std::span<const double> theta, std::span<const double> grad,
                             std::span<const double> metric, double eta, double reg = kMetricRegularization);

// Per iteration: one cost evaluation, one gradient, the metric (Natural and
// ImaginaryTime only), one step. The recorder's iteration column carries the
// iteration index.
std::int64_t qng_run(QngMethod method, OptimizerContext& ctx, const HyperparameterSet& h);

}  // namespace hubvqe
