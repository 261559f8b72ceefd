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

namespace hubvqe {

namespace {
constexpr double kTol = 1e-4;  // simplex diameter and value spread at convergence
}

std::int64_t nelder_mead(OptimizerContext& ctx, const HyperparameterSet& h) {
  const bool adaptive = h.get_bool("adaptive"), bounded = h.get_bool("bounds");
  const std::size_t n = ctx.x0.size();
  const double dn = static_cast<double>(n);
  const double rho = 1.0, chi = adaptive ? 1.0 + 2.0 / dn : 2.0, psi = adaptive ? 0.75 - 0.5 / dn : 0.5,
               sigma = adaptive ? 1.0 - 1.0 / dn : 0.5;
  const double lim = 2.0 * std::numbers::pi;
  auto clip = [&](std::vector<double>& p) {
    if (bounded) {
      for (auto& v : p) v = std::clamp(v, -lim, lim);
    }
  };

  std::vector<std::vector<double>> sim(n + 1, ctx.x0);
  clip(sim[0]);
  for (std::size_t k = 0; k < n; ++k) {
    auto& p = sim[k + 1];
    p[k] = p[k] != 0.0 ? 1.05 * p[k] : 0.00025;
    clip(p);
  }
  ctx.cost.set_iteration(0);
  std::vector<double> f(n + 1);
  for (std::size_t i = 0; i <= n; ++i) f[i] = ctx.cost(sim[i]).value;
  std::vector<std::size_t> idx(n + 1);
  auto sort_simplex = [&] {
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return f[a] < f[b]; });
    std::vector<std::vector<double>> s2(n + 1);
    std::vector<double> f2(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      s2[i] = std::move(sim[idx[i]]);
      f2[i] = f[idx[i]];
    }
    sim = std::move(s2);
    f = std::move(f2);
  };
  sort_simplex();

  std::vector<double> xbar(n), xr(n), xe(n), xc(n);
  auto combine = [&](std::vector<double>& out, double coef) {
    for (std::size_t i = 0; i < n; ++i) out[i] = (1.0 + coef) * xbar[i] - coef * sim[n][i];
    clip(out);
  };
  for (std::int64_t it = 1;; ++it) {
    double xspread = 0.0, fspread = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      fspread = std::max(fspread, std::fabs(f[0] - f[k]));
      for (std::size_t i = 0; i < n; ++i) xspread = std::max(xspread, std::fabs(sim[k][i] - sim[0][i]));
    }
    if (xspread <= kTol && fspread <= kTol) return it;

    ctx.cost.set_iteration(it);
    std::fill(xbar.begin(), xbar.end(), 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) xbar[i] += sim[k][i] / dn;
    }
    combine(xr, rho);
    const double fr = ctx.cost(xr).value;
    bool shrink = false;
    if (fr < f[0]) {
      combine(xe, rho * chi);
      const double fe = ctx.cost(xe).value;
      if (fe < fr) {
        sim[n] = xe;
        f[n] = fe;
      } else {
        sim[n] = xr;
        f[n] = fr;
      }
    } else if (fr < f[n - 1]) {
      sim[n] = xr;
      f[n] = fr;
    } else if (fr < f[n]) {
      combine(xc, psi * rho);
      const double fc = ctx.cost(xc).value;
      if (fc <= fr) {
        sim[n] = xc;
        f[n] = fc;
      } else {
        shrink = true;
      }
    } else {
      combine(xc, -psi);
      const double fc = ctx.cost(xc).value;
      if (fc < f[n]) {
        sim[n] = xc;
        f[n] = fc;
      } else {
        shrink = true;
      }
    }
    if (shrink) {
      for (std::size_t k = 1; k <= n; ++k) {
        for (std::size_t i = 0; i < n; ++i) sim[k][i] = sim[0][i] + sigma * (sim[k][i] - sim[0][i]);
        clip(sim[k]);
        f[k] = ctx.cost(sim[k]).value;
      }
    }
    sort_simplex();
  }
}

}  // namespace hubvqe
