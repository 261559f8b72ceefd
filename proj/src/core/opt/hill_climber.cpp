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

#include <random>

#include "opt/optimizer.hpp"

namespace hubvqe {

std::int64_t hill_climber(OptimizerContext& ctx, const HyperparameterSet& h) {
  const double sigma = h.get("sigma");
  const long long n = h.get_int("n");
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<double> x = ctx.x0, z(x.size());
  ctx.cost.set_iteration(0);
  double v = ctx.cost(x).value;
  for (std::int64_t it = 1;; ++it) {
    ctx.cost.set_iteration(it);
    std::vector<double> best = x;
    for (long long i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < x.size(); ++k) z[k] = x[k] + sigma * noise(ctx.rng);
      const double w = ctx.cost(z).value;
      if (w < v) {
        v = w;
        best = z;
      }
    }
    x = best;
  }
}

}  // namespace hubvqe
