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

#include "bench/campaign.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>

#include <json.hpp>

#include "ansatz/ansatz.hpp"
#include "util/errors.hpp"
#include "util/format.hpp"
#include "util/parallel.hpp"
#include "util/rng.hpp"

namespace hubvqe {

namespace fs = std::filesystem;

std::string RunSpec::label() const {
  if (gradient && optimizer_info(optimizer).needs_gradient) {
    return optimizer + "-" + std::string(gradient_kind_name(gradient->kind));
  }
  return optimizer;
}

std::string RunSpec::file_name() const {
  return label() + "_" + hparams.label + "_" + instance.id + "_" + std::to_string(seed) + ".csv";
}

bool parse_run_file_name(const std::string& file_name, RunFileName& out) {
  std::string stem = file_name;
  if (stem.size() < 5 || stem.substr(stem.size() - 4) != ".csv") return false;
  stem.resize(stem.size() - 4);
  const auto parts = split(stem, '_');
  if (parts.size() < 9) return false;
  out.label = parts[0];
  out.hparam_label = parts[1];
  out.instance_id.clear();
  for (std::size_t i = 2; i + 1 < parts.size(); ++i) {
    if (i > 2) out.instance_id += "_";
    out.instance_id += parts[i];
  }
  try {
    std::size_t pos = 0;
    out.seed = std::stoull(parts.back(), &pos);
    return pos == parts.back().size();
  } catch (const std::exception&) {
    return false;
  }
}

OptimizerResult execute_run(const RunSpec& spec, RunSink* sink, const TerminationPolicy& policy,
                            const RecorderOptions& options) {
  const OptimizerInfo& info = optimizer_info(spec.optimizer);
  auto ansatz = std::make_shared<const Ansatz>(spec.instance.instance);
  std::unique_ptr<CostFunction> inner;
  if (spec.exact_cost) {
    inner = std::make_unique<ExactCost>(ansatz);
  } else {
    inner = std::make_unique<StatisticalCost>(ansatz, derive_seed(spec.seed, {1}));
  }
  RecordedCost cost(*inner, sink, policy, options);
  Rng rng(derive_seed(spec.seed, {2}));
  OptimizerContext ctx{cost, initial_parameters(ansatz->spec()), rng, ansatz.get(), std::nullopt,
                       spec.external_command};
  if (info.needs_gradient) {
    if (!spec.gradient) throw InputError(spec.optimizer + " needs --gradient");
    ctx.gradient.emplace(*spec.gradient, [ansatz](std::span<const double> x) { return ansatz->exact_energy(x); });
  }
  return run_optimizer(spec.optimizer, ctx, spec.hparams);
}

OptimizerResult execute_run_to_file(const RunSpec& spec, const std::string& path, const TerminationPolicy& policy,
                                    const RecorderOptions& options) {
  const bool with_iteration = spec.optimizer.rfind("qng-", 0) == 0;
  CsvRunSink sink(path, with_iteration);
  OptimizerResult r = execute_run(spec, &sink, policy, options);
  std::string note(stop_reason_name(r.stop_reason));
  if (!r.message.empty()) note += ": " + r.message;
  for (auto& c : note) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  sink.finish(note);
  return r;
}

std::vector<std::string> campaign_optimizers() {
  std::vector<std::string> out;
  for (const auto& info : optimizer_registry()) {
    if (info.name == "external" || info.one_dimensional_only) continue;
    out.push_back(info.name);
  }
  return out;
}

std::uint64_t run_seed(std::uint64_t master, const std::string& instance_id, const std::string& label,
                       std::size_t hparam_index, int replicate) {
  return derive_seed(master, {hash_string(instance_id), hash_string(label), hparam_index,
                              static_cast<std::uint64_t>(replicate)}) >>
         1;  // 63 bits keep the value exact in JSON readers that use doubles for large integers
}

std::vector<RunSpec> plan_campaign(const CampaignOptions& options) {
  if (options.seeds < 1) throw InputError("seeds must be at least 1");
  const std::vector<std::string> names = options.optimizers.empty() ? campaign_optimizers() : options.optimizers;
  std::vector<BenchmarkInstance> instances;
  if (options.instance_ids.empty()) {
    instances = enumerate_benchmarks(options.benchmarks);
  } else {
    for (const auto& id : options.instance_ids) instances.push_back(resolve_instance(id));
  }
  std::vector<RunSpec> plan;
  for (const auto& inst : instances) {
    if (inst.instance.grid.num_qubits() > options.max_qubits) continue;
    for (const auto& name : names) {
      const OptimizerInfo& info = optimizer_info(name);
      if (name == "external") throw InputError("campaigns do not run the external adapter");
      if (info.one_dimensional_only && inst.instance.grid.rows != 1 && inst.instance.grid.cols != 1) continue;
      std::vector<std::optional<GradientSpec>> gradients = {std::nullopt};
      if (info.needs_gradient) {
        gradients = {GradientSpec::defaults(GradientKind::FiniteDifference),
                     GradientSpec::defaults(GradientKind::SimultaneousPerturbation)};
      }
      for (const auto& g : gradients) {
        std::vector<HyperparameterSet> sets = {default_hyperparameters(name)};
        if (options.presets) {
          const std::string gname = g ? std::string(gradient_kind_name(g->kind)) : std::string();
          for (auto& p : preset_hyperparameters(name, gname)) sets.push_back(std::move(p));
        }
        for (std::size_t hi = 0; hi < sets.size(); ++hi) {
          for (int rep = 0; rep < options.seeds; ++rep) {
            RunSpec spec;
            spec.instance = inst;
            spec.optimizer = name;
            spec.gradient = g;
            spec.hparams = sets[hi];
            spec.seed = run_seed(options.master_seed, inst.id, spec.label(), hi, rep);
            plan.push_back(std::move(spec));
          }
        }
      }
    }
  }
  return plan;
}

namespace {

struct GroundRecord {
  double energy = 0.0;
  bool degenerate = false;
};

constexpr double kDegeneracyGap = 1e-8;

// Ground energies for the plan's distinct Hamiltonians, served from and
// appended to the sidecar cache.
std::map<std::string, GroundRecord> ground_energies(const std::vector<BenchmarkInstance>& instances,
                                                    const std::string& cache_path) {
  std::vector<GroundEnergyRow> cache;
  if (fs::exists(cache_path)) cache = load_ground_energy_cache(cache_path);
  std::map<std::string, GroundRecord> out;
  for (const auto& b : instances) {
    if (out.count(b.id)) continue;
    const HubbardInstance& h = b.instance;
    const GroundStateInfo info = ground_state_info(h);
    if (!lookup_ground_energy(cache, h.grid, h.params.U, h.occupation)) {
      GroundEnergyRow row{h.grid, h.params.U, h.occupation, info.energy};
      append_ground_energy_cache(cache_path, row);
      cache.push_back(row);
    }
    out[b.id] = {info.energy, info.gap <= kDegeneracyGap};
  }
  return out;
}

nlohmann::ordered_json instance_json(const BenchmarkInstance& b, const GroundRecord& g) {
  const HubbardInstance& h = b.instance;
  nlohmann::ordered_json j;
  j["id"] = b.id;
  j["benchmark"] = b.benchmark;
  j["rows"] = h.grid.rows;
  j["cols"] = h.grid.cols;
  j["t"] = h.params.t;
  j["U"] = h.params.U;
  j["filling"] = std::string(filling_name(h.filling));
  j["n_up"] = h.occupation.n_up;
  j["n_down"] = h.occupation.n_down;
  j["nlayers"] = h.nlayers;
  j["nshots"] = h.nshots;
  j["ground_energy"] = g.energy;
  j["degenerate"] = g.degenerate;
  return j;
}

}  // namespace

CampaignStats run_campaign(const CampaignOptions& options) {
  if (options.out_dir.empty()) throw InputError("campaign needs an output directory");
  options.policy.validate();
  fs::create_directories(options.out_dir);
  const std::vector<RunSpec> plan = plan_campaign(options);

  std::vector<BenchmarkInstance> instances;
  for (const auto& r : plan) {
    if (instances.empty() || instances.back().id != r.instance.id) instances.push_back(r.instance);
  }
  const auto ground = ground_energies(instances, (fs::path(options.out_dir) / "ground_energies.csv").string());

  nlohmann::ordered_json manifest;
  manifest["schema"] = 1;
  manifest["master_seed"] = options.master_seed;
  manifest["seeds"] = options.seeds;
  manifest["max_calls"] = options.policy.max_calls;
  manifest["max_wall_seconds"] = options.policy.max_wall_seconds;
  manifest["record_time"] = options.recorder.record_time;
  manifest["exact_shadow"] = options.recorder.exact_shadow;
  nlohmann::ordered_json inst_list = nlohmann::ordered_json::array();
  for (const auto& b : instances) inst_list.push_back(instance_json(b, ground.at(b.id)));
  manifest["instances"] = inst_list;
  nlohmann::ordered_json runs = nlohmann::ordered_json::array();
  for (const auto& r : plan) {
    nlohmann::ordered_json j;
    j["file"] = r.file_name();
    j["optimizer"] = r.optimizer;
    j["label"] = r.label();
    j["gradient"] = r.gradient ? std::string(gradient_kind_name(r.gradient->kind)) : std::string();
    if (r.gradient) j["gradient_step"] = r.gradient->step;
    j["hparam_label"] = r.hparams.label;
    j["hparams"] = nlohmann::ordered_json::parse(hyperparameters_to_json(complete_hyperparameters(r.optimizer, r.hparams)))["values"];
    j["instance"] = r.instance.id;
    j["seed"] = r.seed;
    runs.push_back(j);
  }
  manifest["runs"] = runs;
  {
    const fs::path mpath = fs::path(options.out_dir) / "manifest.json";
    const fs::path tmp = fs::path(options.out_dir) / "manifest.json.tmp";
    std::ofstream out(tmp);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << manifest.dump(2) << "\n";
    out.close();
    fs::rename(tmp, mpath);
  }

  CampaignStats stats;
  stats.planned = static_cast<std::int64_t>(plan.size());
  std::atomic<std::int64_t> ran{0}, skipped{0}, failed{0};
  parallel_for(plan.size(), options.jobs, [&](std::size_t i) {
    const std::string path = (fs::path(options.out_dir) / plan[i].file_name()).string();
    if (fs::exists(path) && run_file_complete(path)) {
      ++skipped;
      return;
    }
    const OptimizerResult r = execute_run_to_file(plan[i], path, options.policy, options.recorder);
    ++ran;
    if (r.stop_reason == StopReason::Failed) ++failed;
  });
  stats.ran = ran;
  stats.skipped = skipped;
  stats.failed = failed;
  return stats;
}

std::vector<ExpressivityRow> expressivity_check(const std::vector<BenchmarkInstance>& instances,
                                                const TerminationPolicy& policy,
                                                const std::vector<std::string>& external_commands, int jobs) {
  struct Candidate {
    std::string optimizer, label, command;
    HyperparameterSet h;
  };
  std::vector<Candidate> suite;
  for (bool adaptive : {true, false}) {
    HyperparameterSet h = default_hyperparameters("nelder-mead");
    h.values["adaptive"] = adaptive ? 1.0 : 0.0;
    suite.push_back({"nelder-mead", adaptive ? "nelder-mead-adaptive" : "nelder-mead", "", h});
  }
  suite.push_back({"coordinate-descent", "coordinate-descent", "", default_hyperparameters("coordinate-descent")});
  for (std::size_t i = 0; i < external_commands.size(); ++i) {
    suite.push_back({"external", "external" + std::to_string(i + 1), external_commands[i], {}});
  }

  std::vector<ExpressivityRow> rows(instances.size());
  parallel_for(instances.size(), jobs, [&](std::size_t i) {
    const BenchmarkInstance& b = instances[i];
    const GroundStateInfo g = ground_state_info(b.instance);
    ExpressivityRow row{b.id, g.energy, std::numeric_limits<double>::infinity(), "", g.gap <= kDegeneracyGap};
    for (const auto& c : suite) {
      RunSpec spec;
      spec.instance = b;
      spec.optimizer = c.optimizer;
      spec.hparams = c.h;
      spec.exact_cost = true;
      spec.external_command = c.command;
      RecorderOptions opts;
      opts.exact_shadow = false;
      opts.record_time = false;
      const OptimizerResult r = execute_run(spec, nullptr, policy, opts);
      if (r.best_value < row.best_energy) {
        row.best_energy = r.best_value;
        row.best_optimizer = c.label;
      }
    }
    rows[i] = row;
  });
  return rows;
}

void write_expressivity_csv(const std::vector<ExpressivityRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "instance,ground_energy,best_energy,error,best_optimizer,degenerate\n";
  for (const auto& r : rows) {
    out << r.instance_id << ',' << format_real(r.ground_energy) << ',' << format_real(r.best_energy) << ','
        << format_real(r.best_energy - r.ground_energy) << ',' << r.best_optimizer << ','
        << (r.degenerate ? "true" : "false") << '\n';
  }
}

}  // namespace hubvqe
