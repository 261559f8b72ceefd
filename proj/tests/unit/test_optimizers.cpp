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
#include <map>
#include <numbers>

#include <gtest/gtest.h>

#include "ansatz/ansatz.hpp"
#include "grad/gradients.hpp"
#include "opt/optimizer.hpp"
#include "util/errors.hpp"

namespace hubvqe {
namespace {

double sphere(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

double rosenbrock(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    s += 100.0 * (x[i + 1] - x[i] * x[i]) * (x[i + 1] - x[i] * x[i]) + (1 - x[i]) * (1 - x[i]);
  }
  return s;
}

struct Trace {
  OptimizerResult result;
  std::vector<RunRecord> records;
};

HyperparameterSet hp(std::string name, std::map<std::string, double> values = {}) {
  HyperparameterSet h;
  h.optimizer = std::move(name);
  h.values = std::move(values);
  return h;
}

Trace run_function(const std::string& name, std::function<double(std::span<const double>)> f, std::vector<double> x0,
                 std::int64_t budget, std::uint64_t seed = 1, std::optional<GradientSpec> grad = std::nullopt,
                 std::map<std::string, double> values = {}, double noise = 0.0, std::string external = "") {
  FunctionCost cost(static_cast<int>(x0.size()), std::move(f), noise, seed);
  MemoryRunSink sink;
  RecordedCost rec(cost, &sink, {budget, 3600.0}, {true, false});
  Rng rng(seed);
  OptimizerContext ctx{rec, std::move(x0), rng};
  if (grad) ctx.gradient.emplace(*grad);
  ctx.external_command = std::move(external);
  Trace r;
  r.result = run_optimizer(name, ctx, hp(name, std::move(values)));
  r.records = sink.records;
  return r;
}

std::map<std::int64_t, std::int64_t> calls_per_iteration(const std::vector<RunRecord>& records) {
  std::map<std::int64_t, std::int64_t> out;
  for (const auto& r : records) ++out[r.iteration];
  return out;
}

const std::vector<double> kStart = {0.5, -0.4, 0.3, 0.6, -0.2, 0.45};

TEST(Gradients, FiniteDifferenceIsExactOnQuadratics) {
  FunctionCost f(3, [](std::span<const double> x) { return x[0] * x[0] + 3 * x[1] * x[2] - x[2]; });
  MemoryRunSink sink;
  RecordedCost rec(f, &sink, {});
  const std::vector<double> x = {0.2, -0.5, 1.5};
  const auto g = finite_difference(rec, x, 0.4);
  EXPECT_NEAR(g[0], 0.4, 1e-12);
  EXPECT_NEAR(g[1], 4.5, 1e-12);
  EXPECT_NEAR(g[2], -2.5, 1e-12);
  EXPECT_EQ(rec.calls(), 6);
}

TEST(Gradients, SimultaneousPerturbationFormulaAndMean) {
  const std::vector<double> a = {1.0, -2.0, 0.5};
  FunctionCost f(3, [&](std::span<const double> x) { return a[0] * x[0] + a[1] * x[1] + a[2] * x[2]; });
  MemoryRunSink sink;
  RecordedCost rec(f, &sink, {1000000, 3600.0});
  Rng rng(3);
  const std::vector<double> x = {0.1, 0.2, 0.3};
  std::vector<double> mean(3, 0.0);
  const int reps = 4000;
  for (int r = 0; r < reps; ++r) {
    const auto g = simultaneous_perturbation(rec, x, 0.15, rng);
    // Every component is (a . Delta) / Delta_k, so |g_k| takes values in a finite set.
    for (int k = 0; k < 3; ++k) mean[k] += g[k] / reps;
  }
  EXPECT_EQ(rec.calls(), 2 * reps);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(mean[k], a[k], 0.1);
  // Check the two evaluation points are theta +- eps * Delta for a single draw.
  const auto& r0 = sink.records[0].params;
  const auto& r1 = sink.records[1].params;
  for (int k = 0; k < 3; ++k) {
    EXPECT_NEAR(r0[k] + r1[k], 2 * x[k], 1e-6);
    EXPECT_NEAR(std::fabs(r0[k] - r1[k]), 0.3, 1e-6);
  }
}

TEST(Gradients, EstimatorCallCounts) {
  EXPECT_EQ(GradientEstimator(GradientSpec::defaults(GradientKind::FiniteDifference)).calls_per_gradient(7), 14);
  EXPECT_EQ(GradientEstimator(GradientSpec::defaults(GradientKind::SimultaneousPerturbation)).calls_per_gradient(7), 2);
  EXPECT_THROW(GradientEstimator(GradientSpec::defaults(GradientKind::Exact)), InputError);
  EXPECT_DOUBLE_EQ(GradientSpec::defaults(GradientKind::FiniteDifference).step, 0.4);
  EXPECT_DOUBLE_EQ(GradientSpec::defaults(GradientKind::SimultaneousPerturbation).step, 0.15);
  EXPECT_THROW((GradientSpec{GradientKind::FiniteDifference, 0.0}.validate()), InputError);
  EXPECT_EQ(parse_gradient_kind("sp"), GradientKind::SimultaneousPerturbation);
  EXPECT_THROW(parse_gradient_kind("ps"), InputError);
}

TEST(Gradients, ExactGradientMatchesAnalytic) {
  const auto g = exact_gradient([](std::span<const double> x) { return std::sin(x[0]) * std::cos(x[1]); },
                                std::vector<double>{0.3, 1.1});
  EXPECT_NEAR(g[0], std::cos(0.3) * std::cos(1.1), 1e-9);
  EXPECT_NEAR(g[1], -std::sin(0.3) * std::sin(1.1), 1e-9);
}

TEST(Gradients, SmallStepSweepIsWellFormed) {
  StepSweepOptions opt;
  opt.points = 3;
  opt.eps_count = 40;
  opt.eps_step = 0.025;
  opt.eps_min = 0.025;
  const auto res = sweep_step_size(parse_instance_id("sw_3x1_U4_quarter_L2_S1000"), opt);
  ASSERT_EQ(res.points.size(), 3u);
  ASSERT_EQ(res.eps.size(), 40u);
  EXPECT_NEAR(res.eps.front(), 0.025, 1e-12);
  EXPECT_NEAR(res.eps.back(), 1.0, 1e-12);
  // Tiny steps amplify shot noise: the error there dominates the optimum.
  for (const auto& p : res.points) {
    EXPECT_GT(p.err_at_min_eps, p.err_at_best);
    EXPECT_GE(p.best_eps, 0.025);
  }
  const auto again = sweep_step_size(parse_instance_id("sw_3x1_U4_quarter_L2_S1000"), opt);
  EXPECT_EQ(res.mean_error, again.mean_error);
}

TEST(Spsa, GainSchedule) {
  const auto h = default_hyperparameters("spsa");
  const SpsaGains g1 = spsa_gains(h, 1), g2 = spsa_gains(h, 2);
  EXPECT_NEAR(g1.a_k, 0.2 / std::pow(2.0, 0.602), 1e-15);
  EXPECT_NEAR(g1.c_k, 0.15, 1e-15);
  EXPECT_NEAR(g2.c_k, 0.15 / std::pow(2.0, 0.101), 1e-15);
}

TEST(Spsa, ReproducesPublishedTraceStep) {
  // Rows 2 and 3 of the published trace are x0 +- c1 Delta1, row 4 is x1 + c2 Delta2.
  const auto h = default_hyperparameters("spsa");
  const std::vector<double> delta1 = {-1, 1, 1, -1, 1, 1}, delta2 = {1, 1, 1, 1, 1, -1};
  const double fplus = -1.531, fminus = -1.409;
  const SpsaGains g1 = spsa_gains(h, 1), g2 = spsa_gains(h, 2);
  const std::vector<double> expected = {0.586272, 0.693444, 0.693444, 0.586272, 0.693444, 0.413728};
  for (int k = 0; k < 6; ++k) {
    const double x1 = 0.5 - g1.a_k * (fplus - fminus) / (2 * g1.c_k * delta1[k]);
    EXPECT_NEAR(x1 + g2.c_k * delta2[k], expected[k], 1e-5);
  }
}

TEST(Spsa, TwoCallsPerIterationPlusPeriodicEvaluation) {
  const Trace r = run_function("spsa", sphere, kStart, 301);
  const auto per = calls_per_iteration(r.records);
  EXPECT_EQ(per.at(0), 1);
  for (const auto& [it, n] : per) {
    if (it == 0 || it == per.rbegin()->first) continue;
    EXPECT_EQ(n, it % 20 == 0 ? 3 : 2) << "iteration " << it;
  }
  EXPECT_EQ(r.result.stop_reason, StopReason::Budget);
  EXPECT_EQ(r.result.calls, 301);
}

TEST(GradientFamily, CallCountsPerIteration) {
  for (const char* name : {"gd", "momentum", "adadelta", "adam"}) {
    for (GradientKind kind : {GradientKind::FiniteDifference, GradientKind::SimultaneousPerturbation}) {
      const Trace r = run_function(name, sphere, kStart, 2000, 1, GradientSpec::defaults(kind));
      const std::int64_t per_grad = kind == GradientKind::FiniteDifference ? 12 : 2;
      const auto per = calls_per_iteration(r.records);
      for (const auto& [it, n] : per) {
        if (it == per.rbegin()->first) continue;
        EXPECT_EQ(n, per_grad + (it % 20 == 0 ? 1 : 0)) << name << " iteration " << it;
      }
    }
  }
}

TEST(GradientFamily, PlainGradientDescentGeometricDecay) {
  // f = x^2, eta 0.1: central differences are exact, x_t = 0.8^t.
  const Trace r = run_function("gd", sphere, {1.0}, 42, 1, GradientSpec::defaults(GradientKind::FiniteDifference),
                             {{"eta", 0.1}});
  ASSERT_EQ(r.records.size(), 42u);
  EXPECT_EQ(r.records[41].iteration, 20);
  EXPECT_NEAR(r.records[41].params[0], std::pow(0.8, 20), 1e-12);
  EXPECT_NEAR(r.records[41].value, std::pow(0.8, 40), 1e-12);
  EXPECT_NEAR(r.records[3].params[0] - 0.4, 0.8, 1e-12);  // x1 +- eps evaluated in iteration 1
}

TEST(GradientFamily, ConvergesOnSphere) {
  for (const char* name : {"gd", "momentum", "adam"}) {
    std::map<std::string, double> v;
    if (std::string(name) == "gd") v = {{"eta", 0.1}};
    if (std::string(name) == "adam") v = {{"alpha", 0.01}};
    const Trace r = run_function(name, sphere, kStart, 6000, 1, GradientSpec::defaults(GradientKind::FiniteDifference), v);
    EXPECT_LT(r.result.best_value, 1e-3) << name;
  }
  const Trace r = run_function("adadelta", sphere, kStart, 6000, 1, GradientSpec::defaults(GradientKind::FiniteDifference));
  EXPECT_LT(r.result.best_value, sphere(kStart)) << "adadelta";
}

TEST(GradientFamily, RequiresGradientSpec) {
  EXPECT_THROW(run_function("adam", sphere, kStart, 10), InputError);
}

TEST(CmaEs, SolvesSphere) {
  const Trace r = run_function("cmaes", sphere, kStart, 20000);
  EXPECT_LT(r.result.best_value, 1e-8);
  EXPECT_EQ(r.result.stop_reason, StopReason::Converged);
  // lambda = 4 + floor(3 ln 6) = 9 evaluations per generation.
  const auto per = calls_per_iteration(r.records);
  for (const auto& [it, n] : per) {
    if (it > 0 && it != per.rbegin()->first) EXPECT_EQ(n, 9);
  }
}

TEST(CmaEs, SolvesRosenbrock) {
  const Trace r = run_function("cmaes", rosenbrock, {-1.2, 1.0, 0.5}, 20000, 1, std::nullopt, {{"sigma", 0.5}});
  EXPECT_LT(r.result.best_value, 1e-6);
}

TEST(NelderMead, SolvesSphereWithinBudget) {
  const Trace r = run_function("nelder-mead", sphere, kStart, 2000);
  EXPECT_LT(r.result.best_value, 1e-6);
  EXPECT_LE(r.result.calls, 2000);
  EXPECT_EQ(r.result.stop_reason, StopReason::Converged);
  const Trace again = run_function("nelder-mead", sphere, kStart, 2000);
  EXPECT_EQ(r.result.calls, again.result.calls);
  EXPECT_EQ(r.result.best_params, again.result.best_params);
}

TEST(NelderMead, SolvesRosenbrockAndRespectsBounds) {
  const Trace r = run_function("nelder-mead", rosenbrock, {-1.2, 1.0}, 5000, 1, std::nullopt, {{"adaptive", 0}});
  EXPECT_LT(r.result.best_value, 1e-6);
  const Trace b = run_function("nelder-mead", [](std::span<const double> x) { return x[0]; }, {0.0, 0.0}, 3000);
  for (const auto& rec : b.records) EXPECT_GE(rec.params[0], -2 * std::numbers::pi - 1e-6);
}

TEST(EvolutionaryOptimizers, ImproveAndRepeat) {
  for (const char* name : {"pso", "mu-plus-lambda", "hill-climber"}) {
    const Trace a = run_function(name, sphere, kStart, 1500, 9);
    const Trace b = run_function(name, sphere, kStart, 1500, 9);
    EXPECT_LT(a.result.best_value, 0.5 * sphere(kStart)) << name;
    ASSERT_EQ(a.records.size(), b.records.size()) << name;
    for (std::size_t i = 0; i < a.records.size(); ++i) ASSERT_EQ(a.records[i].value, b.records[i].value) << name;
  }
}

TEST(MuPlusLambda, RejectsProbabilitySumAboveOne) {
  EXPECT_THROW(run_function("mu-plus-lambda", sphere, kStart, 100, 1, std::nullopt, {{"pb_sum", 1.5}}), InputError);
}

TEST(MuPlusLambda, EvaluatesLambdaOffspringPerGeneration) {
  // mu = 2, lambda_factor = 5: ten offspring per generation.
  const Trace r = run_function("mu-plus-lambda", sphere, kStart, 500);
  const auto per = calls_per_iteration(r.records);
  for (const auto& [it, n] : per) {
    if (it > 0 && it != per.rbegin()->first) EXPECT_EQ(n, 10);
  }
  // Elitism: the best value among generation survivors never gets worse.
  double best = INFINITY;
  std::int64_t last_it = -1;
  std::vector<double> best_by_gen;
  for (const auto& rec : r.records) {
    if (rec.iteration != last_it && last_it >= 0) best_by_gen.push_back(best);
    best = std::min(best, rec.value);
    last_it = rec.iteration;
  }
  for (std::size_t i = 1; i < best_by_gen.size(); ++i) EXPECT_LE(best_by_gen[i], best_by_gen[i - 1]);
}

TEST(BayesMgd, SampleCountPerIteration) {
  // ceil(0.6 / 2 * 7 * 8) = 17 new points per iteration for six parameters.
  const Trace r = run_function("bayes-mgd", sphere, kStart, 400, 2, std::nullopt, {}, 0.01);
  const auto per = calls_per_iteration(r.records);
  for (const auto& [it, n] : per) {
    if (it > 0 && it != per.rbegin()->first) EXPECT_EQ(n, 17);
  }
  EXPECT_LT(r.result.best_value, sphere(kStart));
}

TEST(BayesMgd, SurrogateRecoversQuadraticGradient) {
  Rng rng(4);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  const std::vector<double> center = {0.2, -0.1, 0.4};
  auto f = [](std::span<const double> x) { return 1.0 + 2 * x[0] - x[1] + x[0] * x[2] + 0.5 * x[1] * x[1]; };
  std::vector<std::vector<double>> pts;
  std::vector<double> vals, ses;
  for (int i = 0; i < 40; ++i) {
    std::vector<double> p = center;
    for (auto& v : p) v += u(rng);
    vals.push_back(f(p));
    ses.push_back(1e-6);
    pts.push_back(p);
  }
  const QuadraticFit fit = fit_quadratic_surrogate(pts, vals, ses, center, 0.2);
  EXPECT_NEAR(fit.gradient[0], 2 + center[2], 1e-6);
  EXPECT_NEAR(fit.gradient[1], -1 + center[1], 1e-6);
  EXPECT_NEAR(fit.gradient[2], center[0], 1e-6);
}

TEST(External, FollowsLineProtocol) {
  const std::string script =
      "read verb n a b; echo \"ask 1 2\"; read v f s; echo \"iteration 1\"; echo \"ask 0 0\"; read v f s; echo done";
  const Trace r = run_function("external", sphere, {0.5, 0.5}, 100, 1, std::nullopt, {}, 0.0, script);
  ASSERT_EQ(r.records.size(), 2u);
  EXPECT_EQ(r.records[0].value, 5.0);
  EXPECT_EQ(r.records[1].value, 0.0);
  EXPECT_EQ(r.records[1].iteration, 1);
  EXPECT_EQ(r.result.stop_reason, StopReason::Converged);
}

TEST(External, MalformedRepliesFail) {
  const Trace r = run_function("external", sphere, {0.5, 0.5}, 100, 1, std::nullopt, {}, 0.0,
                             "read l; echo \"ask 1 nope\"");
  EXPECT_EQ(r.result.stop_reason, StopReason::Failed);
  EXPECT_NE(r.result.message.find("line 1"), std::string::npos);
  const Trace w = run_function("external", sphere, {0.5, 0.5}, 100, 1, std::nullopt, {}, 0.0, "read l; echo \"ask 1\"");
  EXPECT_EQ(w.result.stop_reason, StopReason::Failed);
  const Trace e = run_function("external", sphere, {0.5, 0.5}, 100, 1, std::nullopt, {}, 0.0, "read l; exit 0");
  EXPECT_EQ(e.result.stop_reason, StopReason::Failed);
}

TEST(External, StopsOnBudget) {
  const Trace r = run_function("external", sphere, {0.5, 0.5}, 3, 1, std::nullopt, {}, 0.0,
                             "read l; while true; do echo \"ask 1 1\"; read v f s || exit 0; "
                             "[ \"$v\" = stop ] && exit 0; done");
  EXPECT_EQ(r.result.stop_reason, StopReason::Budget);
  EXPECT_EQ(r.records.size(), 3u);
}

TEST(TrigModel, ExactForTrigonometricPolynomials) {
  auto f = [](double t) { return 0.3 + std::cos(t) - 0.2 * std::sin(2 * t) + 0.05 * std::cos(3 * t); };
  const auto angles = TrigModel::sample_angles(3, 0.7, 2 * std::numbers::pi);
  std::vector<double> vals;
  for (double a : angles) vals.push_back(f(a));
  const TrigModel m(vals, 0.7, 2 * std::numbers::pi);
  for (double t : {-2.0, 0.1, 1.3, 4.4}) EXPECT_NEAR(m(t), f(t), 1e-12);
  const double tmin = m.argmin();
  EXPECT_NEAR(m.derivative(tmin), 0.0, 1e-9);
  for (int i = 0; i < 200; ++i) EXPECT_LE(m(tmin), f(i * 0.0314) + 1e-12);
}

TEST(CoordinateDescent, ModelMatchesExactSlicesAndCallBound) {
  for (const char* id : {"b1_1x3_U4_half_L2_S1000", "b1_2x2_U4_half_L2_S1000"}) {
    const auto inst = parse_instance_id(id);
    const auto ansatz = std::make_shared<const Ansatz>(inst);
    Rng rng(6);
    std::uniform_real_distribution<double> u(-3, 3);
    std::vector<double> x(static_cast<std::size_t>(ansatz->num_params()));
    for (auto& v : x) v = u(rng);
    std::int64_t per_sweep = 0;
    for (int k = 0; k < ansatz->num_params(); ++k) {
      const GeneratorSpec g = ansatz->generator_spec(k);
      const auto angles = TrigModel::sample_angles(g.degree, x[k], g.period);
      per_sweep += static_cast<std::int64_t>(angles.size());
      std::vector<double> vals;
      auto y = x;
      for (double a : angles) {
        y[k] = a;
        vals.push_back(ansatz->exact_energy(y));
      }
      const TrigModel m(vals, x[k], g.period);
      for (int j = 0; j < 10; ++j) {
        y[k] = u(rng) * 2;
        EXPECT_NEAR(m(y[k]), ansatz->exact_energy(y), 1e-8) << id << " param " << k;
      }
    }
    EXPECT_LE(per_sweep, (4 * inst.grid.sites() + 1) * ansatz->num_params());
    ExactCost cost(ansatz);
    MemoryRunSink sink;
    RecordedCost rec(cost, &sink, {1 + 2 * per_sweep, 3600.0});
    OptimizerContext ctx{rec, initial_parameters(ansatz->spec()), rng, ansatz.get()};
    const auto r = run_optimizer("coordinate-descent", ctx, hp("coordinate-descent"));
    const auto per = calls_per_iteration(sink.records);
    EXPECT_EQ(per.at(1), per_sweep);
    EXPECT_EQ(per.at(2), per_sweep);
    EXPECT_LT(r.best_value, ansatz->exact_energy(ctx.x0));
  }
}

}  // namespace
}  // namespace hubvqe
