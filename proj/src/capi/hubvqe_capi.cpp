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

#include "hubvqe/hubvqe.h"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <new>
#include <string>

#include <json.hpp>

#include "analysis/analysis.hpp"
#include "ansatz/ansatz.hpp"
#include "bench/campaign.hpp"
#include "bench/suite.hpp"
#include "bench/sweep.hpp"
#include "cost/cost.hpp"
#include "grad/gradients.hpp"
#include "model/hubbard.hpp"
#include "opt/hyperparams.hpp"
#include "opt/optimizer.hpp"
#include "util/errors.hpp"
#include "util/format.hpp"

struct hubvqe_instance {
  hubvqe::BenchmarkInstance bench;
  std::shared_ptr<const hubvqe::Ansatz> ansatz;
};

struct hubvqe_cost {
  std::shared_ptr<const hubvqe::Ansatz> ansatz;
  std::unique_ptr<hubvqe::CostFunction> cost;
};

namespace {

namespace fs = std::filesystem;
using namespace hubvqe;

thread_local std::string g_last_error;

hubvqe_status fail(hubvqe_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

// Maps every exception escaping the core to a status code.
template <class Fn>
hubvqe_status guarded(Fn&& fn) {
  try {
    fn();
    return HUBVQE_OK;
  } catch (const InputError& e) {
    return fail(HUBVQE_ERR_INPUT, e.what());
  } catch (const ResourceError& e) {
    return fail(HUBVQE_ERR_RESOURCE, e.what());
  } catch (const UnsupportedError& e) {
    return fail(HUBVQE_ERR_UNSUPPORTED, e.what());
  } catch (const ParseError& e) {
    return fail(HUBVQE_ERR_PARSE, e.what());
  } catch (const IoError& e) {
    return fail(HUBVQE_ERR_IO, e.what());
  } catch (const fs::filesystem_error& e) {
    return fail(HUBVQE_ERR_IO, e.what());
  } catch (const BudgetExhausted& e) {
    return fail(HUBVQE_ERR_BUDGET, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(HUBVQE_ERR_PARSE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(HUBVQE_ERR_RESOURCE, "out of memory");
  } catch (const std::exception& e) {
    return fail(HUBVQE_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(HUBVQE_ERR_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw InputError(what);
}

void copy_out(const std::string& s, char* buf, size_t cap, size_t* needed) {
  if (needed) *needed = s.size();
  if (cap <= s.size()) {
    if (buf && cap > 0) buf[0] = '\0';
    throw InputError("buffer too small: need " + std::to_string(s.size() + 1) + " bytes");
  }
  std::memcpy(buf, s.c_str(), s.size() + 1);
}

hubvqe_instance* wrap(BenchmarkInstance b) {
  auto* h = new hubvqe_instance{std::move(b), nullptr};
  h->ansatz = std::make_shared<const Ansatz>(h->bench.instance);
  return h;
}

std::vector<std::string> split_list(const char* text) {
  std::vector<std::string> out;
  if (!text) return out;
  for (const auto& p : split(text, ',')) {
    const std::string t = trim(p);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

RunSpec make_run_spec(const hubvqe_instance* inst, const hubvqe_run_options* o) {
  require(inst && o && o->optimizer, "run needs an instance and an optimizer");
  RunSpec spec;
  spec.instance = inst->bench;
  spec.optimizer = o->optimizer;
  optimizer_info(spec.optimizer);
  if (o->gradient && *o->gradient) {
    GradientSpec g = GradientSpec::defaults(parse_gradient_kind(o->gradient));
    if (o->gradient_step > 0) g.step = o->gradient_step;
    g.validate();
    spec.gradient = g;
  }
  spec.hparams = o->hparams_json && *o->hparams_json ? hyperparameters_from_json(o->hparams_json, spec.optimizer)
                                                     : default_hyperparameters(spec.optimizer);
  spec.hparams = complete_hyperparameters(spec.optimizer, spec.hparams);
  spec.seed = o->seed;
  spec.exact_cost = o->exact_cost != 0;
  if (o->external_command) spec.external_command = o->external_command;
  return spec;
}

}  // namespace

extern "C" {

const char* hubvqe_last_error(void) { return g_last_error.c_str(); }
const char* hubvqe_version(void) { return "0.1.0"; }

const char* hubvqe_stop_reason_name(int reason) {
  switch (reason) {
    case HUBVQE_STOP_BUDGET:
      return "budget";
    case HUBVQE_STOP_WALLCLOCK:
      return "wallclock";
    case HUBVQE_STOP_CONVERGED:
      return "converged";
    case HUBVQE_STOP_FAILED:
      return "failed";
    default:
      return "unknown";
  }
}

hubvqe_status hubvqe_instance_create(int rows, int cols, double t, double u, int n_up, int n_down, int nlayers,
                                     int nshots, hubvqe_instance** out) {
  return guarded([&] {
    require(out, "null output pointer");
    BenchmarkInstance b;
    b.instance.grid = {rows, cols};
    b.instance.params = {t, u};
    b.instance.occupation = {n_up, n_down};
    b.instance.nlayers = nlayers;
    b.instance.nshots = nshots;
    b.instance.grid.validate();
    b.instance.filling = classify_filling(b.instance.grid, b.instance.occupation);
    b.instance.validate();
    b.id = instance_id(b.instance, "x");
    *out = wrap(std::move(b));
  });
}

hubvqe_status hubvqe_instance_from_id(const char* id, hubvqe_instance** out) {
  return guarded([&] {
    require(id && out, "null argument");
    *out = wrap(resolve_instance(id));
  });
}

void hubvqe_instance_destroy(hubvqe_instance* inst) { delete inst; }

hubvqe_status hubvqe_instance_id(const hubvqe_instance* inst, char* buf, size_t cap, size_t* needed) {
  return guarded([&] {
    require(inst, "null instance");
    copy_out(inst->bench.id, buf, cap, needed);
  });
}

hubvqe_status hubvqe_instance_num_params(const hubvqe_instance* inst, int* out) {
  return guarded([&] {
    require(inst && out, "null argument");
    *out = inst->ansatz->num_params();
  });
}

hubvqe_status hubvqe_instance_num_qubits(const hubvqe_instance* inst, int* out) {
  return guarded([&] {
    require(inst && out, "null argument");
    *out = inst->bench.instance.grid.num_qubits();
  });
}

hubvqe_status hubvqe_initial_parameters(const hubvqe_instance* inst, double* out, size_t n) {
  return guarded([&] {
    require(inst && out, "null argument");
    const auto p = initial_parameters(inst->ansatz->spec());
    require(n == p.size(), "parameter buffer has wrong length");
    std::copy(p.begin(), p.end(), out);
  });
}

hubvqe_status hubvqe_exact_energy(const hubvqe_instance* inst, const double* params, size_t n, double* out) {
  return guarded([&] {
    require(inst && params && out, "null argument");
    *out = inst->ansatz->exact_energy(std::span<const double>(params, n));
  });
}

hubvqe_status hubvqe_ground_energy(const hubvqe_instance* inst, const char* cache_path, double* out) {
  return guarded([&] {
    require(inst && out, "null argument");
    const HubbardInstance& h = inst->bench.instance;
    if (cache_path && *cache_path) {
      std::vector<GroundEnergyRow> rows;
      if (fs::exists(cache_path)) rows = load_ground_energy_cache(cache_path);
      if (auto e = lookup_ground_energy(rows, h.grid, h.params.U, h.occupation)) {
        *out = *e;
        return;
      }
      *out = exact_ground_energy(h);
      append_ground_energy_cache(cache_path, {h.grid, h.params.U, h.occupation, *out});
      return;
    }
    *out = exact_ground_energy(h);
  });
}

hubvqe_status hubvqe_list_instances(const char* which, char* buf, size_t cap, size_t* needed) {
  return guarded([&] {
    require(which, "null argument");
    const std::string w = trim(which);
    const auto list = w == "sweep" ? sweeping_instances() : enumerate_benchmarks(parse_benchmark_list(w));
    std::string s;
    for (const auto& b : list) s += b.id + "\n";
    copy_out(s, buf, cap, needed);
  });
}

hubvqe_status hubvqe_cost_create(const hubvqe_instance* inst, int exact, uint64_t seed, int64_t nshots,
                                 hubvqe_cost** out) {
  return guarded([&] {
    require(inst && out, "null argument");
    auto c = std::make_unique<hubvqe_cost>();
    c->ansatz = inst->ansatz;
    if (exact) {
      c->cost = std::make_unique<ExactCost>(c->ansatz);
    } else {
      c->cost = std::make_unique<StatisticalCost>(c->ansatz, seed, nshots > 0 ? nshots : 0);
    }
    *out = c.release();
  });
}

void hubvqe_cost_destroy(hubvqe_cost* cost) { delete cost; }

hubvqe_status hubvqe_cost_evaluate(hubvqe_cost* cost, const double* params, size_t n, double* value,
                                   double* std_error, int64_t* nmeas, double* exact_value) {
  return guarded([&] {
    require(cost && params, "null argument");
    const CostSample s = cost->cost->sample(std::span<const double>(params, n), exact_value != nullptr);
    if (value) *value = s.estimate.value;
    if (std_error) *std_error = s.estimate.std_error;
    if (nmeas) *nmeas = s.estimate.nmeas;
    if (exact_value) *exact_value = s.exact_value;
  });
}

void hubvqe_run_options_init(hubvqe_run_options* opts) {
  if (!opts) return;
  *opts = hubvqe_run_options{};
  opts->seed = 1;
  opts->max_calls = 5000;
  opts->max_wall_seconds = 3600.0;
  opts->record_time = 1;
}

hubvqe_status hubvqe_list_optimizers(char* buf, size_t cap, size_t* needed) {
  return guarded([&] {
    std::string s;
    for (const auto& info : optimizer_registry()) s += info.name + "\n";
    copy_out(s, buf, cap, needed);
  });
}

hubvqe_status hubvqe_run(const hubvqe_instance* inst, const hubvqe_run_options* opts, const char* csv_path,
                         hubvqe_run_result* out) {
  return guarded([&] {
    const RunSpec spec = make_run_spec(inst, opts);
    TerminationPolicy policy{opts->max_calls, opts->max_wall_seconds};
    policy.validate();
    RecorderOptions rec;
    rec.record_time = opts->record_time != 0;
    const OptimizerResult r = csv_path && *csv_path ? execute_run_to_file(spec, csv_path, policy, rec)
                                                    : execute_run(spec, nullptr, policy, rec);
    if (out) {
      out->best_value = r.best_value;
      out->calls = r.calls;
      out->iterations = r.iterations;
      out->stop_reason = static_cast<int>(r.stop_reason);
    }
  });
}

hubvqe_status hubvqe_run_file_name(const hubvqe_instance* inst, const hubvqe_run_options* opts, char* buf,
                                   size_t cap, size_t* needed) {
  return guarded([&] { copy_out(make_run_spec(inst, opts).file_name(), buf, cap, needed); });
}

void hubvqe_step_sweep_options_init(hubvqe_step_sweep_options* opts) {
  if (!opts) return;
  const StepSweepOptions d;
  *opts = hubvqe_step_sweep_options{d.points, d.eps_count, d.eps_min, d.eps_step, d.nshots, d.seed, d.jobs};
}

hubvqe_status hubvqe_step_sweep(const hubvqe_instance* inst, const hubvqe_step_sweep_options* opts,
                                const char* points_csv, const char* curve_csv, double* mean_best_eps) {
  return guarded([&] {
    require(inst && opts, "null argument");
    StepSweepOptions o;
    o.points = opts->points;
    o.eps_count = opts->eps_count;
    o.eps_min = opts->eps_min;
    o.eps_step = opts->eps_step;
    o.nshots = opts->nshots > 0 ? opts->nshots : 0;
    o.seed = opts->seed;
    o.jobs = opts->jobs;
    const StepSweepResult r = sweep_step_size(inst->bench.instance, o);
    if (points_csv && *points_csv) {
      std::ofstream f(points_csv);
      if (!f) throw IoError(std::string("cannot write ") + points_csv);
      f << "point,best_eps,err_at_best\n";
      for (const auto& p : r.points) f << p.point << ',' << format_real(p.best_eps) << ',' << format_real(p.err_at_best) << '\n';
    }
    if (curve_csv && *curve_csv) {
      std::ofstream f(curve_csv);
      if (!f) throw IoError(std::string("cannot write ") + curve_csv);
      f << "eps,mean_error\n";
      for (std::size_t e = 0; e < r.eps.size(); ++e) f << format_real(r.eps[e]) << ',' << format_real(r.mean_error[e]) << '\n';
    }
    if (mean_best_eps) *mean_best_eps = r.mean_best_eps;
  });
}

hubvqe_status hubvqe_sweep_hparams(const char* optimizer, const char* gradient, const char* instance_id, int trials,
                                   int64_t eval_budget, uint64_t seed, int jobs, const char* out_dir) {
  return guarded([&] {
    require(optimizer && out_dir, "null argument");
    HparamSweepOptions o;
    o.trials = trials;
    o.eval_budget = eval_budget;
    o.seed = seed;
    o.jobs = jobs;
    if (gradient && *gradient) o.gradient = GradientSpec::defaults(parse_gradient_kind(gradient));
    std::vector<BenchmarkInstance> targets;
    if (instance_id && *instance_id) {
      targets.push_back(resolve_instance(instance_id));
    } else {
      targets = sweeping_instances();
    }
    fs::create_directories(out_dir);
    std::string tag = optimizer;
    if (o.gradient && optimizer_info(optimizer).needs_gradient) tag += "-" + std::string(gradient_kind_name(o.gradient->kind));
    std::vector<HparamSweepResult> results;
    for (const auto& b : targets) {
      results.push_back(sweep_hyperparameters(optimizer, b, o));
      write_sweep_trials_csv(results.back(), (fs::path(out_dir) / ("trials_" + tag + "_" + b.id + ".csv")).string());
    }
    nlohmann::ordered_json sets = nlohmann::ordered_json::array();
    for (const auto& h : carried_hyperparameters(optimizer, results)) {
      sets.push_back(nlohmann::ordered_json::parse(hyperparameters_to_json(h)));
    }
    std::ofstream f(fs::path(out_dir) / ("hparams_" + tag + ".json"));
    if (!f) throw IoError("cannot write hyperparameter file in " + std::string(out_dir));
    f << sets.dump(2) << '\n';
  });
}

void hubvqe_campaign_options_init(hubvqe_campaign_options* opts) {
  if (!opts) return;
  *opts = hubvqe_campaign_options{};
  opts->benchmarks = "1,2";
  opts->optimizers = "all";
  opts->seeds = 1;
  opts->master_seed = 1;
  opts->presets = 1;
  opts->max_calls = 5000;
  opts->max_wall_seconds = 3600.0;
  opts->record_time = 1;
  opts->jobs = 1;
  opts->max_qubits = 12;
}

hubvqe_status hubvqe_campaign(const hubvqe_campaign_options* opts, hubvqe_campaign_stats* out) {
  return guarded([&] {
    require(opts && opts->out_dir, "campaign needs options and an output directory");
    CampaignOptions o;
    o.benchmarks = parse_benchmark_list(opts->benchmarks ? opts->benchmarks : "1,2");
    if (opts->instances && !trim(opts->instances).empty()) o.instance_ids = split_list(opts->instances);
    if (opts->optimizers && trim(opts->optimizers) != "all") o.optimizers = split_list(opts->optimizers);
    for (const auto& n : o.optimizers) optimizer_info(n);
    o.seeds = opts->seeds;
    o.master_seed = opts->master_seed;
    o.presets = opts->presets != 0;
    o.policy = {opts->max_calls, opts->max_wall_seconds};
    o.recorder.record_time = opts->record_time != 0;
    o.jobs = opts->jobs;
    o.max_qubits = opts->max_qubits;
    o.out_dir = opts->out_dir;
    const CampaignStats s = run_campaign(o);
    if (out) *out = hubvqe_campaign_stats{s.planned, s.ran, s.skipped, s.failed};
  });
}

hubvqe_status hubvqe_expressivity(const char* benchmarks, int max_qubits, int64_t max_calls,
                                  const char* external_commands, int jobs, const char* out_csv) {
  return guarded([&] {
    require(out_csv, "null output path");
    std::vector<BenchmarkInstance> chosen;
    // Shot count and layer variants share the exact cost; keep one per (grid, U, filling, layers).
    std::vector<std::string> seen;
    for (auto& b : enumerate_benchmarks(parse_benchmark_list(benchmarks ? benchmarks : "1,2"))) {
      if (b.instance.grid.num_qubits() > max_qubits) continue;
      const std::string id = instance_id(b.instance, "e");
      const std::string key = id.substr(0, id.rfind('_'));
      if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
      seen.push_back(key);
      chosen.push_back(std::move(b));
    }
    TerminationPolicy policy{max_calls, std::numeric_limits<double>::infinity()};
    std::vector<std::string> ext;
    if (external_commands) {
      for (const auto& p : split(external_commands, ';')) {
        if (!trim(p).empty()) ext.push_back(trim(p));
      }
    }
    write_expressivity_csv(expressivity_check(chosen, policy, ext, jobs), out_csv);
  });
}

hubvqe_status hubvqe_analyze(const char* runs_dir, const char* out_dir, const double* tolerances, size_t ntol,
                             hubvqe_analyze_stats* out) {
  return guarded([&] {
    require(runs_dir && out_dir, "null argument");
    std::vector<double> tols = kDefaultTolerances;
    if (tolerances && ntol > 0) tols.assign(tolerances, tolerances + ntol);
    for (double t : tols) require(t > 0, "tolerances must be positive");
    const LoadedRuns runs = load_runs(runs_dir, tols);
    emit_tables(runs.summaries, out_dir, tols);
    if (out) {
      *out = hubvqe_analyze_stats{static_cast<int64_t>(runs.summaries.size()), runs.incomplete, runs.unmatched};
    }
  });
}

}  // extern "C"
