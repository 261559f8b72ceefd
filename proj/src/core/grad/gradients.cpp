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

#include "grad/gradients.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "util/errors.hpp"

namespace hubvqe {

std::string_view gradient_kind_name(GradientKind k) {
  switch (k) {
    case GradientKind::FiniteDifference: return "fd";
    case GradientKind::SimultaneousPerturbation: return "sp";
    case GradientKind::Exact: return "exact";
  }
  return "fd";
}

GradientKind parse_gradient_kind(std::string_view name) {
  if (name == "fd") return GradientKind::FiniteDifference;
  if (name == "sp") return GradientKind::SimultaneousPerturbation;
  if (name == "exact") return GradientKind::Exact;
  throw InputError("unknown gradient kind '" + std::string(name) + "' (expected fd, sp or exact)");
}

GradientSpec GradientSpec::defaults(GradientKind kind) {
  switch (kind) {
    case GradientKind::FiniteDifference: return {kind, 0.4};
    case GradientKind::SimultaneousPerturbation: return {kind, 0.15};
    case GradientKind::Exact: return {kind, kExactGradientStep};
  }
  return {};
}

void GradientSpec::validate() const {
  if (!(step > 0)) throw InputError("gradient step must be positive");
}

std::vector<double> finite_difference(CostFunction& cost, std::span<const double> theta, double eps) {
  std::vector<double> x(theta.begin(), theta.end()), g(theta.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    x[k] = theta[k] + eps;
    const double fp = cost(x).value;
    x[k] = theta[k] - eps;
    const double fm = cost(x).value;
    x[k] = theta[k];
    g[k] = (fp - fm) / (2.0 * eps);
  }
  return g;
}

std::vector<double> simultaneous_perturbation(CostFunction& cost, std::span<const double> theta, double eps,
                                              Rng& rng) {
  std::bernoulli_distribution coin(0.5);
  std::vector<double> delta(theta.size());
  for (auto& d : delta) d = coin(rng) ? 1.0 : -1.0;
  std::vector<double> xp(theta.begin(), theta.end()), xm(theta.begin(), theta.end());
  for (std::size_t k = 0; k < xp.size(); ++k) {
    xp[k] += eps * delta[k];
    xm[k] -= eps * delta[k];
  }
  const double diff = cost(xp).value - cost(xm).value;
  std::vector<double> g(theta.size());
  for (std::size_t k = 0; k < g.size(); ++k) g[k] = diff / (2.0 * eps * delta[k]);
  return g;
}

std::vector<double> exact_gradient(const ExactOracle& oracle, std::span<const double> theta, double eps) {
  std::vector<double> x(theta.begin(), theta.end()), g(theta.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    x[k] = theta[k] + eps;
    const double fp = oracle(x);
    x[k] = theta[k] - eps;
    const double fm = oracle(x);
    x[k] = theta[k];
    g[k] = (fp - fm) / (2.0 * eps);
  }
  return g;
}

GradientEstimator::GradientEstimator(GradientSpec spec, ExactOracle oracle)
    : spec_(spec), oracle_(std::move(oracle)) {
  spec_.validate();
  if (spec_.kind == GradientKind::Exact && !oracle_) throw InputError("exact gradient needs an exact oracle");
}

std::int64_t GradientEstimator::calls_per_gradient(int nparams) const noexcept {
  switch (spec_.kind) {
    case GradientKind::FiniteDifference: return 2 * static_cast<std::int64_t>(nparams);
    case GradientKind::SimultaneousPerturbation: return 2;
    case GradientKind::Exact: return 0;
  }
  return 0;
}

std::vector<double> GradientEstimator::operator()(CostFunction& cost, std::span<const double> theta,
                                                  Rng& rng) const {
  switch (spec_.kind) {
    case GradientKind::FiniteDifference: return finite_difference(cost, theta, spec_.step);
    case GradientKind::SimultaneousPerturbation: return simultaneous_perturbation(cost, theta, spec_.step, rng);
    case GradientKind::Exact: return exact_gradient(oracle_, theta, spec_.step);
  }
  return {};
}

namespace {

struct PointWork {
  std::vector<double> errors;  // per eps
  StepSweepPoint summary;
};

// Shot-noise energy of the state obtained by continuing the prefix at `k`.
double shot_energy(const Ansatz& ansatz, const StateVector& prefix, std::span<const double> x, int k,
                   std::int64_t nshots, Rng& rng, StateVector& scratch) {
  scratch = prefix;
  ansatz.apply_params(scratch, x, k, ansatz.num_params());
  const auto& params = ansatz.instance().params;
  const auto& groups = ansatz.groups();
  double e = 0.0;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    e += group_coefficient(groups[gi], params) * ansatz.kernel().sample(scratch, gi, nshots, rng).mean();
  }
  return e;
}

PointWork sweep_point(const Ansatz& ansatz, const StepSweepOptions& opt, int point) {
  const int nu = ansatz.num_params();
  const std::int64_t nshots = opt.nshots > 0 ? opt.nshots : ansatz.instance().nshots;
  Rng rng(derive_seed(opt.seed, {0x5357ULL, static_cast<std::uint64_t>(point)}));
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<double> theta(static_cast<std::size_t>(nu));
  for (auto& t : theta) t = angle(rng);

  ExactCost exact(std::make_shared<Ansatz>(ansatz));
  const auto g_exact = exact_gradient([&](std::span<const double> x) { return exact.value(x); }, theta);

  std::vector<StateVector> prefixes;
  prefixes.reserve(static_cast<std::size_t>(nu));
  prefixes.push_back(ansatz.reference_state());
  for (int k = 1; k < nu; ++k) {
    prefixes.push_back(prefixes.back());
    ansatz.apply_params(prefixes.back(), theta, k - 1, k);
  }

  PointWork work;
  work.errors.resize(static_cast<std::size_t>(opt.eps_count));
  StateVector scratch;
  std::vector<double> x = theta;
  for (int e = 0; e < opt.eps_count; ++e) {
    const double eps = opt.eps_min + opt.eps_step * e;
    double err2 = 0.0;
    for (int k = 0; k < nu; ++k) {
      x[k] = theta[k] + eps;
      const double fp = shot_energy(ansatz, prefixes[k], x, k, nshots, rng, scratch);
      x[k] = theta[k] - eps;
      const double fm = shot_energy(ansatz, prefixes[k], x, k, nshots, rng, scratch);
      x[k] = theta[k];
      const double d = (fp - fm) / (2.0 * eps) - g_exact[k];
      err2 += d * d;
    }
    work.errors[e] = std::sqrt(err2);
  }
  const auto best = std::min_element(work.errors.begin(), work.errors.end());
  work.summary.point = point;
  work.summary.best_eps = opt.eps_min + opt.eps_step * static_cast<double>(best - work.errors.begin());
  work.summary.err_at_best = *best;
  work.summary.err_at_min_eps = work.errors.front();
  work.summary.err_at_max_eps = work.errors.back();
  return work;
}

}  // namespace

StepSweepResult sweep_step_size(const HubbardInstance& instance, const StepSweepOptions& options) {
  if (options.points < 1 || options.eps_count < 1) throw InputError("sweep needs at least one point and step");
  if (!(options.eps_min > 0) || !(options.eps_step > 0)) throw InputError("step grid must be positive");
  const Ansatz ansatz(instance);
  std::vector<PointWork> work(static_cast<std::size_t>(options.points));

  std::atomic<int> next{0};
  auto worker = [&] {
    for (int p = next++; p < options.points; p = next++) work[p] = sweep_point(ansatz, options, p);
  };
  const int jobs = std::max(1, std::min(options.jobs, options.points));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  StepSweepResult out;
  out.eps.resize(static_cast<std::size_t>(options.eps_count));
  out.mean_error.assign(out.eps.size(), 0.0);
  for (int e = 0; e < options.eps_count; ++e) out.eps[e] = options.eps_min + options.eps_step * e;
  double acc = 0.0;
  for (const auto& w : work) {
    out.points.push_back(w.summary);
    acc += w.summary.best_eps;
    for (std::size_t e = 0; e < out.eps.size(); ++e) out.mean_error[e] += w.errors[e] / options.points;
  }
  out.mean_best_eps = acc / options.points;
  return out;
}

}  // namespace hubvqe
