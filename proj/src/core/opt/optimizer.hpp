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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ansatz/ansatz.hpp"
#include "cost/cost.hpp"
#include "grad/gradients.hpp"
#include "opt/hyperparams.hpp"
#include "util/rng.hpp"

namespace hubvqe {

// Everything one optimizer run sees. The optimizer only queries `cost`;
// `ansatz` is set for instance-aware methods (coordinate descent, QNG).
struct OptimizerContext {
  RecordedCost& cost;
  std::vector<double> x0;
  Rng& rng;
  const Ansatz* ansatz = nullptr;
  std::optional<GradientEstimator> gradient;
  std::string external_command;  // for the external adapter
};

struct OptimizerResult {
  std::vector<double> best_params;
  double best_value = 0.0;
  std::int64_t calls = 0;
  std::int64_t iterations = 0;
  StopReason stop_reason = StopReason::Budget;
  std::string message;
};

// Raised by an optimizer that cannot continue (e.g. external protocol error).
class OptimizerFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OptimizerInfo {
  std::string name;
  bool needs_gradient = false;
  bool needs_ansatz = false;
  bool one_dimensional_only = false;
};

const std::vector<OptimizerInfo>& optimizer_registry();
const OptimizerInfo& optimizer_info(std::string_view name);
bool is_gradient_family(std::string_view name);

OptimizerResult run_optimizer(std::string_view name, OptimizerContext& ctx, const HyperparameterSet& hparams);

// Individual optimizers. Each loops until the recorder raises BudgetExhausted
// (propagated to run_optimizer) and returns the iteration count on internal
// convergence.
std::int64_t hill_climber(OptimizerContext& ctx, const HyperparameterSet& h);
std::int64_t spsa(OptimizerContext& ctx, const HyperparameterSet& h);
std::int64_t gradient_descent_family(std::string_view variant, OptimizerContext& ctx, const HyperparameterSet& h);
std::int64_t coordinate_descent(OptimizerContext& ctx, const HyperparameterSet& h);
std::int64_t bayes_mgd(OptimizerContext& ctx, const HyperparameterSet& h);
std::int64_t cmaes(OptimizerContext& ctx, const HyperparameterSet& h);
std::int64_t pso(OptimizerContext& ctx, const HyperparameterSet& h);
std::int64_t mu_plus_lambda(OptimizerContext& ctx, const HyperparameterSet& h);
std::int64_t nelder_mead(OptimizerContext& ctx, const HyperparameterSet& h);
std::int64_t external_optimizer(OptimizerContext& ctx, const HyperparameterSet& h);

// Gradient-family iterations that also evaluate the cost at the current point.
inline constexpr int kEvaluateEvery = 20;

struct SpsaGains {
  double a_k = 0.0;
  double c_k = 0.0;
};
SpsaGains spsa_gains(const HyperparameterSet& h, std::int64_t k);

// Degree-D trigonometric model along one coordinate, fitted from 2D+1
// equally spaced samples centred on `center` over one period.
class TrigModel {
 public:
  TrigModel(std::span<const double> samples, double center, double period);
  static std::vector<double> sample_angles(int degree, double center, double period);

  double operator()(double theta) const;
  double derivative(double theta) const;
  // Global minimiser: dense scan then Newton polish on the model.
  double argmin() const;
  int degree() const noexcept { return static_cast<int>(a_.size()) - 1; }

 private:
  double center_, omega_;
  std::vector<double> a_, b_;  // a_[0] constant; cos/sin coefficients for d >= 1
};

// Posterior-mean coefficients of the quadratic surrogate, in monomial order
// 1, d_i (i < n), d_i d_j (i <= j), with d = point - center.
struct QuadraticFit {
  double constant = 0.0;
  std::vector<double> gradient;
};
QuadraticFit fit_quadratic_surrogate(std::span<const std::vector<double>> points, std::span<const double> values,
                                     std::span<const double> std_errors, std::span<const double> center, double l0);

}  // namespace hubvqe
