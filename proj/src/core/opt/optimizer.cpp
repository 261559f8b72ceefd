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

#include "opt/optimizer.hpp"

#include <algorithm>

#include "qng/qng.hpp"
#include "util/errors.hpp"

namespace hubvqe {

const std::vector<OptimizerInfo>& optimizer_registry() {
  static const std::vector<OptimizerInfo> registry = {
      {"hill-climber", false, false, false},  {"coordinate-descent", false, true, false},
      {"bayes-mgd", false, false, false},     {"spsa", false, false, false},
      {"gd", true, false, false},             {"momentum", true, false, false},
      {"adadelta", true, false, false},       {"adam", true, false, false},
      {"mu-plus-lambda", false, false, false}, {"pso", false, false, false},
      {"cmaes", false, false, false},         {"nelder-mead", false, false, false},
      {"qng-gd", true, true, true},           {"qng-nat", true, true, true},
      {"qng-ite", true, true, true},          {"external", false, false, false},
  };
  return registry;
}

const OptimizerInfo& optimizer_info(std::string_view name) {
  const auto& r = optimizer_registry();
  const auto it = std::find_if(r.begin(), r.end(), [&](const OptimizerInfo& i) { return i.name == name; });
  if (it == r.end()) throw InputError("unknown optimizer '" + std::string(name) + "'");
  return *it;
}

bool is_gradient_family(std::string_view name) {
  return name == "gd" || name == "momentum" || name == "adadelta" || name == "adam";
}

namespace {

std::int64_t dispatch(std::string_view name, OptimizerContext& ctx, const HyperparameterSet& h) {
  if (name == "hill-climber") return hill_climber(ctx, h);
  if (name == "coordinate-descent") return coordinate_descent(ctx, h);
  if (name == "bayes-mgd") return bayes_mgd(ctx, h);
  if (name == "spsa") return spsa(ctx, h);
  if (is_gradient_family(name)) return gradient_descent_family(name, ctx, h);
  if (name == "mu-plus-lambda") return mu_plus_lambda(ctx, h);
  if (name == "pso") return pso(ctx, h);
  if (name == "cmaes") return cmaes(ctx, h);
  if (name == "nelder-mead") return nelder_mead(ctx, h);
  if (name == "qng-gd") return qng_run(QngMethod::GradientDescent, ctx, h);
  if (name == "qng-nat") return qng_run(QngMethod::Natural, ctx, h);
  if (name == "qng-ite") return qng_run(QngMethod::ImaginaryTime, ctx, h);
  if (name == "external") return external_optimizer(ctx, h);
  throw InputError("unknown optimizer '" + std::string(name) + "'");
}

}  // namespace

OptimizerResult run_optimizer(std::string_view name, OptimizerContext& ctx, const HyperparameterSet& hparams) {
  const OptimizerInfo& info = optimizer_info(name);
  HyperparameterSet partial = hparams;
  partial.optimizer = std::string(name);
  const HyperparameterSet h = complete_hyperparameters(name, partial);
  if (info.needs_gradient && !ctx.gradient) throw InputError(std::string(name) + " needs a gradient spec");
  if (info.needs_ansatz && ctx.ansatz == nullptr) throw InputError(std::string(name) + " needs an ansatz instance");
  if (static_cast<int>(ctx.x0.size()) != ctx.cost.num_params()) throw InputError("x0 length does not match the cost");

  OptimizerResult r;
  try {
    r.iterations = dispatch(name, ctx, h);
    r.stop_reason = StopReason::Converged;
  } catch (const BudgetExhausted& e) {
    r.stop_reason = e.reason();
    r.iterations = ctx.cost.iteration() + 1;
  } catch (const OptimizerFailure& e) {
    r.stop_reason = StopReason::Failed;
    r.message = e.what();
    r.iterations = ctx.cost.iteration() + 1;
  }
  r.calls = ctx.cost.calls();
  r.best_value = ctx.cost.best_value();
  r.best_params = ctx.cost.best_params();
  if (r.best_params.empty()) r.best_params = ctx.x0;
  return r;
}

}  // namespace hubvqe
