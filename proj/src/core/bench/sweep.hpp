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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bench/suite.hpp"
#include "grad/gradients.hpp"
#include "opt/hyperparams.hpp"

namespace hubvqe {

struct HparamSweepOptions {
  int trials = 1000;
  std::int64_t eval_budget = 100;  // calls per trial
  std::uint64_t seed = 1;
  std::optional<GradientSpec> gradient;
  int jobs = 1;
};

struct HparamTrial {
  HyperparameterSet set;
  double objective = 0.0;  // best noisy value seen within the trial budget
};

struct HparamSweepResult {
  std::string optimizer;
  std::string instance_id;
  std::vector<HparamTrial> trials;
  HyperparameterSet best;
  double best_objective = 0.0;
};

// Random search over the optimizer's declared space. Optimizers without
// hyperparameters return their defaults and no trials.
HparamSweepResult sweep_hyperparameters(const std::string& optimizer, const BenchmarkInstance& instance,
                                        const HparamSweepOptions& options);

// Defaults plus the per-instance winners, labelled sw1, sw2, ...
std::vector<HyperparameterSet> carried_hyperparameters(const std::string& optimizer,
                                                       const std::vector<HparamSweepResult>& results);

void write_sweep_trials_csv(const HparamSweepResult& result, const std::string& path);

}  // namespace hubvqe
