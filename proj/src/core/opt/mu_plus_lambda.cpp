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
#include <random>

#include "opt/optimizer.hpp"
#include "util/errors.hpp"

namespace hubvqe {

namespace {

struct Individual {
  std::vector<double> x, strategy;
  double fitness = 0.0;
};

}  // namespace

// Self-adaptive (mu + lambda) evolution strategy with blend crossover and
// log-normal strategy mutation. The best individual always survives; the
// remaining mu - 1 slots are filled by tournaments over parents and offspring.
std::int64_t mu_plus_lambda(OptimizerContext& ctx, const HyperparameterSet& h) {
  const double min_strat = h.get("min_strat"), max_strat = h.get("max_strat"), alpha = h.get("alpha"),
               sigma = h.get("sigma"), c = h.get("c"), indpb = h.get("indpb"), pb_sum = h.get("pb_sum"),
               pb_cut = h.get("pb_cut");
  const long long mu = h.get_int("mu"), lambda = mu * h.get_int("lambda_factor"), tournsize = h.get_int("tournsize");
  if (pb_sum > 1.0) throw InputError("mu-plus-lambda: pb_sum must not exceed 1");
  if (min_strat > max_strat) throw InputError("mu-plus-lambda: min_strat exceeds max_strat");
  const double cxpb = pb_sum * pb_cut, mutpb = pb_sum - cxpb;
  const std::size_t n = ctx.x0.size();
  const double tau = c / std::sqrt(2.0 * n), tau0 = c / std::sqrt(2.0 * std::sqrt(static_cast<double>(n)));

  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::uniform_real_distribution<double> ustrat(min_strat, max_strat);
  auto clamp_strategy = [&](Individual& ind) {
    for (auto& s : ind.strategy) s = std::clamp(s, min_strat, max_strat);
  };

  std::vector<Individual> pop(mu);
  for (auto& ind : pop) {
    ind.x = ctx.x0;
    for (auto& v : ind.x) v += sigma * normal(ctx.rng);
    ind.strategy.resize(n);
    for (auto& s : ind.strategy) s = ustrat(ctx.rng);
  }
  ctx.cost.set_iteration(0);
  for (auto& ind : pop) ind.fitness = ctx.cost(ind.x).value;

  std::uniform_int_distribution<long long> pick(0, mu - 1);
  std::vector<Individual> offspring(lambda);
  for (std::int64_t gen = 1;; ++gen) {
    ctx.cost.set_iteration(gen);
    for (auto& child : offspring) {
      const double r = u01(ctx.rng);
      if (r < cxpb) {
        const long long a = pick(ctx.rng);
        long long b = pick(ctx.rng);
        if (mu > 1) {
          while (b == a) b = pick(ctx.rng);
        }
        child = pop[a];
        for (std::size_t i = 0; i < n; ++i) {
          const double g = (1.0 + 2.0 * alpha) * u01(ctx.rng) - alpha;
          child.x[i] = (1.0 - g) * pop[a].x[i] + g * pop[b].x[i];
          child.strategy[i] = (1.0 - g) * pop[a].strategy[i] + g * pop[b].strategy[i];
        }
      } else if (r < cxpb + mutpb) {
        child = pop[pick(ctx.rng)];
        const double global = tau0 * normal(ctx.rng);
        for (std::size_t i = 0; i < n; ++i) {
          if (u01(ctx.rng) < indpb) {
            child.strategy[i] *= std::exp(global + tau * normal(ctx.rng));
            child.x[i] += child.strategy[i] * normal(ctx.rng);
          }
        }
      } else {
        child = pop[pick(ctx.rng)];
      }
      clamp_strategy(child);
    }
    // Noisy costs make re-evaluation of reproduced individuals informative; every offspring costs one call.
    for (auto& child : offspring) child.fitness = ctx.cost(child.x).value;

    std::vector<Individual> pool = pop;
    pool.insert(pool.end(), offspring.begin(), offspring.end());
    std::vector<Individual> next;
    next.reserve(mu);
    next.push_back(*std::min_element(pool.begin(), pool.end(),
                                     [](const Individual& a, const Individual& b) { return a.fitness < b.fitness; }));
    std::uniform_int_distribution<std::size_t> any(0, pool.size() - 1);
    while (static_cast<long long>(next.size()) < mu) {
      std::size_t best = any(ctx.rng);
      for (long long t = 1; t < tournsize; ++t) {
        const std::size_t cand = any(ctx.rng);
        if (pool[cand].fitness < pool[best].fitness) best = cand;
      }
      next.push_back(pool[best]);
    }
    pop = std::move(next);
  }
}

}  // namespace hubvqe
