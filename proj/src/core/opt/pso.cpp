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
#include <random>

#include "opt/optimizer.hpp"

namespace hubvqe {

std::int64_t pso(OptimizerContext& ctx, const HyperparameterSet& h) {
  const long long pop = h.get_int("pop_size");
  const double ind_sigma = h.get("ind_sigma"), smin = h.get("smin"), smax = h.get("smax"), phi1 = h.get("phi1"),
               phi2 = h.get("phi2");
  const std::size_t n = ctx.x0.size();
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  std::vector<std::vector<double>> x(pop, ctx.x0), v(pop, std::vector<double>(n, 0.0)), pbest;
  for (auto& p : x) {
    for (auto& c : p) c += ind_sigma * normal(ctx.rng);
  }
  std::vector<double> pbest_f(pop, 0.0), gbest;
  double gbest_f = 0.0;
  bool have_g = false;
  pbest = x;

  auto evaluate_all = [&](bool first) {
    for (long long i = 0; i < pop; ++i) {
      const double f = ctx.cost(x[i]).value;
      if (first || f < pbest_f[i]) {
        pbest_f[i] = f;
        pbest[i] = x[i];
      }
      if (!have_g || f < gbest_f) {
        gbest_f = f;
        gbest = x[i];
        have_g = true;
      }
    }
  };
  ctx.cost.set_iteration(0);
  evaluate_all(true);
  for (std::int64_t it = 1;; ++it) {
    ctx.cost.set_iteration(it);
    for (long long i = 0; i < pop; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        const double r1 = u01(ctx.rng) * phi1, r2 = u01(ctx.rng) * phi2;
        v[i][k] += r1 * (pbest[i][k] - x[i][k]) + r2 * (gbest[k] - x[i][k]);
        v[i][k] = std::clamp(v[i][k], smin, smax);
        x[i][k] += v[i][k];
      }
    }
    evaluate_all(false);
  }
}

}  // namespace hubvqe
