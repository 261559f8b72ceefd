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

namespace hubvqe {

SpsaGains spsa_gains(const HyperparameterSet& h, std::int64_t k) {
  const double kk = static_cast<double>(k);
  return {h.get("a") / std::pow(kk + h.get("A"), h.get("alpha")), h.get("c") / std::pow(kk, h.get("gamma"))};
}

std::int64_t spsa(OptimizerContext& ctx, const HyperparameterSet& h) {
  std::vector<double> x = ctx.x0;
  ctx.cost.set_iteration(0);
  ctx.cost(x);
  for (std::int64_t k = 1;; ++k) {
    ctx.cost.set_iteration(k);
    if (k % kEvaluateEvery == 0) ctx.cost(x);
    const SpsaGains gains = spsa_gains(h, k);
    const auto g = simultaneous_perturbation(ctx.cost, x, gains.c_k, ctx.rng);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= gains.a_k * g[i];
  }
}

}  // namespace hubvqe
