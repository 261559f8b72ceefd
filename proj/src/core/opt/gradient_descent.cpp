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

#include <cmath>

#include "opt/optimizer.hpp"
#include "util/errors.hpp"

namespace hubvqe {

namespace {

constexpr double kAdaDeltaEps = 1e-6;
constexpr double kAdamEps = 1e-8;

}  // namespace

std::int64_t gradient_descent_family(std::string_view variant, OptimizerContext& ctx, const HyperparameterSet& h) {
  const GradientEstimator& grad = *ctx.gradient;
  const bool exact = grad.spec().kind == GradientKind::Exact;
  const std::size_t n = ctx.x0.size();
  std::vector<double> x = ctx.x0, v(n, 0.0), m(n, 0.0), s(n, 0.0), lookahead(n);

  const bool momentum = variant == "momentum", adadelta = variant == "adadelta", adam = variant == "adam";
  if (!momentum && !adadelta && !adam && variant != "gd") throw InputError("unknown gradient variant");
  const bool nesterov = momentum && h.get_bool("nesterov");
  const bool nadam = adam && h.get_bool("nadam");

  for (std::int64_t t = 0;; ++t) {
    ctx.cost.set_iteration(t);
    // Noiseless gradients cost nothing, so the trace gets a point every step.
    if (exact || t % kEvaluateEvery == 0) ctx.cost(x);

    std::vector<double> g;
    if (nesterov) {
      const double gamma = h.get("gamma");
      for (std::size_t i = 0; i < n; ++i) lookahead[i] = x[i] - gamma * v[i];
      g = grad(ctx.cost, lookahead, ctx.rng);
    } else {
      g = grad(ctx.cost, x, ctx.rng);
    }

    if (variant == "gd") {
      const double eta = h.get("eta");
      for (std::size_t i = 0; i < n; ++i) x[i] -= eta * g[i];
    } else if (momentum) {
      const double eta = h.get("eta"), gamma = h.get("gamma");
      for (std::size_t i = 0; i < n; ++i) {
        v[i] = gamma * v[i] + eta * g[i];
        x[i] -= v[i];
      }
    } else if (adadelta) {
      // m: running mean of squared gradients; s: of squared updates.
      const double rho = h.get("gamma");
      for (std::size_t i = 0; i < n; ++i) {
        m[i] = rho * m[i] + (1 - rho) * g[i] * g[i];
        const double dx = -std::sqrt(s[i] + kAdaDeltaEps) / std::sqrt(m[i] + kAdaDeltaEps) * g[i];
        s[i] = rho * s[i] + (1 - rho) * dx * dx;
        x[i] += dx;
      }
    } else {
      const double alpha = h.get("alpha"), b1 = h.get("beta1"), b2 = h.get("beta2");
      const double step = static_cast<double>(t + 1);
      double c1 = 1 - std::pow(b1, step), c2 = 1 - std::pow(b2, step);
      if (!(c1 > 0)) c1 = 1.0;
      if (!(c2 > 0)) c2 = 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        m[i] = b1 * m[i] + (1 - b1) * g[i];
        s[i] = b2 * s[i] + (1 - b2) * g[i] * g[i];
        const double mhat = m[i] / c1, vhat = s[i] / c2;
        const double dir = nadam ? b1 * mhat + (1 - b1) * g[i] / c1 : mhat;
        x[i] -= alpha * dir / (std::sqrt(vhat) + kAdamEps);
      }
    }
  }
}

}  // namespace hubvqe
