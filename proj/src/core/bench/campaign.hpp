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
#include "cost/cost.hpp"
#include "grad/gradients.hpp"
#include "opt/hyperparams.hpp"
#include "opt/optimizer.hpp"

namespace hubvqe {

// One optimizer run on one instance.
struct RunSpec {
  BenchmarkInstance instance;
  std::string optimizer;                 // registry name
  std::optional<GradientSpec> gradient;  // required by gradient-based optimizers
  HyperparameterSet hparams;
  std::uint64_t seed = 1;
  bool exact_cost = false;  // noiseless cost function instead of shot sampling
  std::string external_command;

  // "adam-fd" for gradient-based optimizers, otherwise the registry name.
  std::string label() const;
  // {label}_{hparamset}_{instance_id}_{seed}.csv
  std::string file_name() const;
};

// Splits a run file name back into its parts; returns false if it does not match.
struct RunFileName {
  std::string label, hparam_label, instance_id;
  std::uint64_t seed = 0;
};
bool parse_run_file_name(const std::string& file_name, RunFileName& out);

// Builds the cost stack, runs the optimizer and streams rows to `sink`.
OptimizerResult execute_run(const RunSpec& spec, RunSink* sink, const TerminationPolicy& policy,
                            const RecorderOptions& options);

// execute_run writing `path`, terminated by an end marker naming the stop reason.
OptimizerResult execute_run_to_file(const RunSpec& spec, const std::string& path, const TerminationPolicy& policy,
                                    const RecorderOptions& options);

struct CampaignOptions {
  std::vector<int> benchmarks = {1, 2};
  std::vector<std::string> instance_ids;  // nonempty: these instances instead of the benchmarks
  std::vector<std::string> optimizers;  // empty: every native optimizer usable on noisy costs
  int seeds = 1;                        // replicates per (instance, optimizer, hparam set)
  std::uint64_t master_seed = 1;
  bool presets = true;  // carry the tabled swept sets in addition to the defaults
  TerminationPolicy policy;
  RecorderOptions recorder;
  int jobs = 1;
  std::string out_dir;
  int max_qubits = 12;  // instances above this are left out of the plan
};

struct CampaignStats {
  std::int64_t planned = 0, ran = 0, skipped = 0, failed = 0;
};

// Optimizer names included by "all": the native optimizers minus the external
// adapter and the 1-D natural-gradient methods.
std::vector<std::string> campaign_optimizers();
std::vector<RunSpec> plan_campaign(const CampaignOptions& options);
// Writes manifest.json and ground_energies.csv, then every run file that is
// not already complete.
CampaignStats run_campaign(const CampaignOptions& options);

// Per-run seed: hash of the master seed, instance id, optimizer label,
// hyperparameter-set index and replicate.
std::uint64_t run_seed(std::uint64_t master, const std::string& instance_id, const std::string& label,
                       std::size_t hparam_index, int replicate);

struct ExpressivityRow {
  std::string instance_id;
  double ground_energy = 0.0;
  double best_energy = 0.0;
  std::string best_optimizer;
  bool degenerate = false;  // ground state not separated by > 1e-8 in its sector
};

// Runs the noiseless suite (adaptive and plain Nelder-Mead, plus any external
// commands) on the exact cost and keeps the lowest final energy per instance.
std::vector<ExpressivityRow> expressivity_check(const std::vector<BenchmarkInstance>& instances,
                                                const TerminationPolicy& policy,
                                                const std::vector<std::string>& external_commands = {},
                                                int jobs = 1);
void write_expressivity_csv(const std::vector<ExpressivityRow>& rows, const std::string& path);

}  // namespace hubvqe
