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
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "cost/cost.hpp"
#include "util/rng.hpp"

namespace hubvqe {

enum class GradientKind { FiniteDifference, SimultaneousPerturbation, Exact };

std::string_view gradient_kind_name(GradientKind k);  // "fd", "sp", "exact"
GradientKind parse_gradient_kind(std::string_view name);

struct GradientSpec {
  GradientKind kind = GradientKind::FiniteDifference;
  double step = 0.4;

  static GradientSpec defaults(GradientKind kind);
  void validate() const;
};

inline constexpr double kExactGradientStep = 1e-5;

using ExactOracle = std::function<double(std::span<const double>)>;

// Central differences, 2 nu calls.
std::vector<double> finite_difference(CostFunction& cost, std::span<const double> theta, double eps);
// Rademacher perturbation, 2 calls.
std::vector<double> simultaneous_perturbation(CostFunction& cost, std::span<const double> theta, double eps,
                                              Rng& rng);
// Central differences at kExactGradientStep on a noiseless oracle.
std::vector<double> exact_gradient(const ExactOracle& oracle, std::span<const double> theta,
                                   double eps = kExactGradientStep);

// Dispatches on the spec. Exact gradients are computed on `oracle` and cost no
// recorded calls.
class GradientEstimator {
 public:
  GradientEstimator(GradientSpec spec, ExactOracle oracle = {});
  const GradientSpec& spec() const noexcept { return spec_; }
  std::int64_t calls_per_gradient(int nparams) const noexcept;
  std::vector<double> operator()(CostFunction& cost, std::span<const double> theta, Rng& rng) const;

 private:
  GradientSpec spec_;
  ExactOracle oracle_;
};

struct StepSweepOptions {
  int points = 100;
  int eps_count = 999;  // grid eps_min, eps_min + eps_step, ...
  double eps_min = 0.001;
  double eps_step = 0.001;
  std::int64_t nshots = 0;  // 0: the instance's shot count
  std::uint64_t seed = 1;
  int jobs = 1;
};

struct StepSweepPoint {
  int point = 0;
  double best_eps = 0.0;
  double err_at_best = 0.0;
  double err_at_min_eps = 0.0;
  double err_at_max_eps = 0.0;
};

struct StepSweepResult {
  std::vector<StepSweepPoint> points;
  std::vector<double> eps;
  std::vector<double> mean_error;  // averaged over points, per eps
  double mean_best_eps = 0.0;
};

// For each random point in [0, 2 pi)^nu: L2 error of the shot-noise FD
// gradient against the exact gradient, minimised over the eps grid.
StepSweepResult sweep_step_size(const HubbardInstance& instance, const StepSweepOptions& options);

}  // namespace hubvqe
