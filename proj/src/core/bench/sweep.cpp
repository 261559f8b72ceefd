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

#include "bench/sweep.hpp"

#include <fstream>
#include <limits>

#include "bench/campaign.hpp"
#include "util/errors.hpp"
#include "util/format.hpp"
#include "util/parallel.hpp"
#include "util/rng.hpp"

namespace hubvqe {

HparamSweepResult sweep_hyperparameters(const std::string& optimizer, const BenchmarkInstance& instance,
                                        const HparamSweepOptions& options) {
  if (options.trials < 0 || options.eval_budget < 1) throw InputError("sweep needs trials >= 0 and budget >= 1");
  const OptimizerInfo& info = optimizer_info(optimizer);
  HparamSweepResult out;
  out.optimizer = optimizer;
  out.instance_id = instance.id;
  out.best = default_hyperparameters(optimizer);
  out.best_objective = std::numeric_limits<double>::quiet_NaN();
  if (hyperparameter_schema(optimizer).empty()) return out;
  if (info.needs_gradient && !options.gradient) throw InputError(optimizer + " needs a gradient for sweeping");

  // Trial sets are drawn up front so results do not depend on scheduling.
  out.trials.resize(static_cast<std::size_t>(options.trials));
  for (int t = 0; t < options.trials; ++t) {
    Rng rng = make_rng(options.seed, {hash_string(instance.id), hash_string(optimizer), static_cast<std::uint64_t>(t)});
    out.trials[t].set = sample_hyperparameters(optimizer, rng);
    out.trials[t].set.label = "trial" + std::to_string(t);
  }
  TerminationPolicy policy;
  policy.max_calls = options.eval_budget;
  policy.max_wall_seconds = std::numeric_limits<double>::infinity();
  RecorderOptions rec;
  rec.exact_shadow = false;
  rec.record_time = false;
  parallel_for(out.trials.size(), options.jobs, [&](std::size_t t) {
    RunSpec spec;
    spec.instance = instance;
    spec.optimizer = optimizer;
    spec.gradient = options.gradient;
    spec.hparams = out.trials[t].set;
    spec.seed = derive_seed(options.seed, {0x7377, hash_string(instance.id), t});
    out.trials[t].objective = execute_run(spec, nullptr, policy, rec).best_value;
  });
  std::size_t best = 0;
  for (std::size_t t = 1; t < out.trials.size(); ++t) {
    if (out.trials[t].objective < out.trials[best].objective) best = t;
  }
  if (!out.trials.empty()) {
    out.best = out.trials[best].set;
    out.best_objective = out.trials[best].objective;
  }
  return out;
}

std::vector<HyperparameterSet> carried_hyperparameters(const std::string& optimizer,
                                                       const std::vector<HparamSweepResult>& results) {
  std::vector<HyperparameterSet> out = {default_hyperparameters(optimizer)};
  if (hyperparameter_schema(optimizer).empty()) return out;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].trials.empty()) continue;
    HyperparameterSet h = results[i].best;
    h.label = "sw" + std::to_string(i + 1);
    out.push_back(std::move(h));
  }
  return out;
}

void write_sweep_trials_csv(const HparamSweepResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  std::vector<std::string> keys;
  for (const auto& d : hyperparameter_schema(result.optimizer)) keys.push_back(d.name);
  out << "trial,objective";
  for (const auto& k : keys) out << ',' << k;
  out << '\n';
  for (std::size_t t = 0; t < result.trials.size(); ++t) {
    out << t << ',' << format_real(result.trials[t].objective);
    for (const auto& k : keys) out << ',' << format_real(result.trials[t].set.values.at(k));
    out << '\n';
  }
}

}  // namespace hubvqe
