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

// Command-line front end. Uses only the public C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hubvqe/hubvqe.h"

namespace {

class ApiError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void check(hubvqe_status s) {
  if (s != HUBVQE_OK) throw ApiError(hubvqe_last_error());
}

// Sizes the buffer with a first call, then fetches the string.
template <class Fn>
std::string fetch_string(Fn&& fn) {
  size_t needed = 0;
  fn(nullptr, 0, &needed);
  std::string s(needed + 1, '\0');
  check(fn(s.data(), s.size(), &needed));
  s.resize(needed);
  return s;
}

struct Instance {
  hubvqe_instance* ptr = nullptr;
  explicit Instance(const std::string& id) { check(hubvqe_instance_from_id(id.c_str(), &ptr)); }
  Instance(int rows, int cols, double t, double u, int n_up, int n_down) {
    check(hubvqe_instance_create(rows, cols, t, u, n_up, n_down, 1, 1000, &ptr));
  }
  Instance(const Instance&) = delete;
  Instance& operator=(const Instance&) = delete;
  ~Instance() { hubvqe_instance_destroy(ptr); }
};

std::pair<int, int> parse_grid(const std::string& text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos) throw CLI::ValidationError("--grid", "expected MxN");
  try {
    return {std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1))};
  } catch (const std::exception&) {
    throw CLI::ValidationError("--grid", "expected MxN");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ApiError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// An object is used as-is; from an array the entry whose label matches is chosen.
nlohmann::json select_hparams(const std::string& path, const std::string& label) {
  nlohmann::json j = nlohmann::json::parse(read_file(path));
  if (!j.is_array()) return j;
  if (j.empty()) throw ApiError(path + " holds no hyperparameter sets");
  if (label.empty()) return j.front();
  for (const auto& e : j) {
    if (e.contains("label") && e["label"] == label) return e;
  }
  throw ApiError("no hyperparameter set labelled '" + label + "' in " + path);
}

int cmd_exact_ground(const std::string& grid, double t, double u, int occ, const std::string& format,
                     const std::string& cache) {
  const auto [rows, cols] = parse_grid(grid);
  int n_up = 0;
  if (occ < 0) {
    n_up = rows * cols / 2;
  } else {
    if (occ % 2 != 0) throw ApiError("--occ counts both spins and must be even");
    n_up = occ / 2;
  }
  Instance inst(rows, cols, t, u, n_up, n_up);
  double e = 0.0;
  check(hubvqe_ground_energy(inst.ptr, cache.empty() ? nullptr : cache.c_str(), &e));
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", e);
  if (format == "csv") {
    std::cout << "grid,u,n_up,n_down,energy\n" << rows << 'x' << cols << ',' << u << ',' << n_up << ',' << n_up << ','
              << buf << '\n';
  } else {
    std::cout << "grid " << rows << 'x' << cols << "  U " << u << "  n_up " << n_up << "  n_down " << n_up
              << "  ground energy " << buf << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark VQE optimisers on Fermi-Hubbard instances"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(hubvqe_version()));

  // exact-ground
  auto* eg = app.add_subcommand("exact-ground", "Exact ground energy in a particle-number sector");
  std::string eg_grid, eg_format = "text", eg_cache;
  double eg_t = -1.0, eg_u = 4.0;
  int eg_occ = -1;
  eg->add_option("--grid", eg_grid, "Grid as MxN")->required();
  eg->add_option("--u", eg_u, "Onsite interaction U");
  eg->add_option("--t", eg_t, "Hopping amplitude");
  eg->add_option("--occ", eg_occ, "Total particle number (even); default half filling");
  eg->add_option("--format", eg_format, "Output format")->check(CLI::IsMember({"text", "csv"}));
  eg->add_option("--cache", eg_cache, "ground_energies.csv sidecar to read and extend");

  // sweep-gradient
  auto* sg = app.add_subcommand("sweep-gradient", "Finite-difference step-size sweep");
  std::string sg_instance, sg_out, sg_curve;
  hubvqe_step_sweep_options sg_opts;
  hubvqe_step_sweep_options_init(&sg_opts);
  sg->add_option("--instance", sg_instance, "Instance id")->required();
  sg->add_option("--points", sg_opts.points, "Random parameter points");
  sg->add_option("--eps-count", sg_opts.eps_count, "Number of step sizes");
  sg->add_option("--eps-min", sg_opts.eps_min, "Smallest step size");
  sg->add_option("--eps-step", sg_opts.eps_step, "Step-size increment");
  sg->add_option("--shots", sg_opts.nshots, "Shots per group (default: the instance's)");
  sg->add_option("--seed", sg_opts.seed, "Seed");
  sg->add_option("--jobs", sg_opts.jobs, "Worker threads");
  sg->add_option("--out", sg_out, "Per-point CSV (point,best_eps,err_at_best)")->required();
  sg->add_option("--curve", sg_curve, "Mean error per step size CSV");

  // run
  auto* rn = app.add_subcommand("run", "Run one optimizer on one instance");
  std::string rn_opt, rn_instance, rn_hparams, rn_label, rn_gradient, rn_out, rn_out_dir, rn_external;
  double rn_step = 0.0, rn_eta = -1.0, rn_wall = 3600.0;
  std::uint64_t rn_seed = 1;
  std::int64_t rn_budget = 5000;
  bool rn_exact = false, rn_no_time = false;
  rn->add_option("--optimizer", rn_opt, "Optimizer name (see list-optimizers)")->required();
  rn->add_option("--instance", rn_instance, "Instance id")->required();
  rn->add_option("--hparams", rn_hparams, "JSON hyperparameter file (object or list of sets)");
  rn->add_option("--hparam-label", rn_label, "Label of the set to use when --hparams holds a list");
  rn->add_option("--gradient", rn_gradient, "Gradient estimator")->check(CLI::IsMember({"fd", "sp", "exact"}));
  rn->add_option("--step", rn_step, "Gradient step size (default per estimator)");
  rn->add_option("--eta", rn_eta, "Learning rate shortcut for the natural-gradient methods");
  rn->add_option("--seed", rn_seed, "Run seed");
  rn->add_option("--budget", rn_budget, "Maximum cost-function calls");
  rn->add_option("--walltime", rn_wall, "Maximum wall-clock seconds");
  rn->add_flag("--exact", rn_exact, "Use the noiseless cost function");
  rn->add_flag("--no-time", rn_no_time, "Write 0 into the time column");
  rn->add_option("--external", rn_external, "Command for the external optimizer");
  auto* rn_out_opt = rn->add_option("--out", rn_out, "Trace CSV path");
  rn->add_option("--out-dir", rn_out_dir, "Directory for a trace with the standard file name")->excludes(rn_out_opt);

  // campaign
  auto* cp = app.add_subcommand("campaign", "Run a resumable benchmark campaign");
  hubvqe_campaign_options cp_opts;
  hubvqe_campaign_options_init(&cp_opts);
  std::string cp_bench = cp_opts.benchmarks, cp_opt = cp_opts.optimizers, cp_out, cp_instances;
  bool cp_no_presets = false, cp_no_time = false;
  cp->add_option("--benchmarks", cp_bench, "Benchmarks, e.g. 1,2 or all");
  cp->add_option("--instances", cp_instances, "Comma-separated instance ids (overrides --benchmarks)");
  cp->add_option("--optimizers", cp_opt, "all or a comma-separated list");
  cp->add_option("--seeds", cp_opts.seeds, "Replicates per run configuration");
  cp->add_option("--master-seed", cp_opts.master_seed, "Campaign seed");
  cp->add_option("--budget", cp_opts.max_calls, "Maximum calls per run");
  cp->add_option("--walltime", cp_opts.max_wall_seconds, "Maximum seconds per run");
  cp->add_option("--jobs", cp_opts.jobs, "Concurrent runs");
  cp->add_option("--max-qubits", cp_opts.max_qubits, "Skip larger instances");
  cp->add_flag("--no-presets", cp_no_presets, "Only default hyperparameters");
  cp->add_flag("--no-time", cp_no_time, "Write 0 into the time column (byte-identical reruns)");
  cp->add_option("--out", cp_out, "Output directory")->required();

  // sweep-hparams
  auto* sh = app.add_subcommand("sweep-hparams", "Random-search hyperparameter sweep");
  std::string sh_opt, sh_gradient, sh_instance, sh_out = "hparam_sweep";
  int sh_trials = 1000, sh_jobs = 1;
  std::int64_t sh_budget = 100;
  std::uint64_t sh_seed = 1;
  sh->add_option("--optimizer", sh_opt, "Optimizer name")->required();
  sh->add_option("--gradient", sh_gradient, "Gradient estimator")->check(CLI::IsMember({"fd", "sp", "exact"}));
  sh->add_option("--instance", sh_instance, "Single instance id (default: the sweeping set)");
  sh->add_option("--trials", sh_trials, "Trials per instance");
  sh->add_option("--budget", sh_budget, "Calls per trial");
  sh->add_option("--seed", sh_seed, "Seed");
  sh->add_option("--jobs", sh_jobs, "Worker threads");
  sh->add_option("--out", sh_out, "Output directory");

  // analyze
  auto* an = app.add_subcommand("analyze", "Summarise run traces into tables");
  std::string an_runs, an_out, an_tol = "0.1,0.01,0.001";
  an->add_option("--runs", an_runs, "Directory with run CSVs")->required();
  an->add_option("--out", an_out, "Output directory")->required();
  an->add_option("--tolerances", an_tol, "Comma-separated absolute energy tolerances");

  // expressivity
  auto* ex = app.add_subcommand("expressivity", "Noiseless-suite check of ansatz expressivity");
  std::string ex_bench = "1,2", ex_external, ex_out;
  int ex_qubits = 12, ex_jobs = 1;
  std::int64_t ex_budget = 5000;
  ex->add_option("--benchmarks", ex_bench, "Benchmarks");
  ex->add_option("--max-qubits", ex_qubits, "Skip larger instances");
  ex->add_option("--budget", ex_budget, "Calls per optimizer run");
  ex->add_option("--external", ex_external, "Semicolon-separated external optimizer commands");
  ex->add_option("--jobs", ex_jobs, "Worker threads");
  ex->add_option("--out", ex_out, "Output CSV")->required();

  auto* li = app.add_subcommand("list-instances", "Print benchmark instance ids");
  std::string li_which = "all";
  li->add_option("--which", li_which, "Benchmarks (1,2 / all) or sweep");
  auto* lo = app.add_subcommand("list-optimizers", "Print optimizer names");

  CLI11_PARSE(app, argc, argv);

  try {
    if (eg->parsed()) return cmd_exact_ground(eg_grid, eg_t, eg_u, eg_occ, eg_format, eg_cache);

    if (sg->parsed()) {
      Instance inst(sg_instance);
      double mean = 0.0;
      check(hubvqe_step_sweep(inst.ptr, &sg_opts, sg_out.c_str(), sg_curve.empty() ? nullptr : sg_curve.c_str(), &mean));
      std::printf("mean best eps %.5f\n", mean);
      return 0;
    }

    if (rn->parsed()) {
      Instance inst(rn_instance);
      nlohmann::json h = nlohmann::json::object();
      if (!rn_hparams.empty()) h = select_hparams(rn_hparams, rn_label);
      if (rn_eta > 0) {
        if (h.contains("values")) {
          h["values"]["eta"] = rn_eta;
        } else {
          h["eta"] = rn_eta;
        }
      }
      const std::string hjson = h.dump();
      hubvqe_run_options o;
      hubvqe_run_options_init(&o);
      o.optimizer = rn_opt.c_str();
      o.gradient = rn_gradient.empty() ? nullptr : rn_gradient.c_str();
      o.gradient_step = rn_step;
      o.hparams_json = hjson.c_str();
      o.seed = rn_seed;
      o.max_calls = rn_budget;
      o.max_wall_seconds = rn_wall;
      o.exact_cost = rn_exact;
      o.record_time = !rn_no_time;
      o.external_command = rn_external.empty() ? nullptr : rn_external.c_str();
      std::string path = rn_out;
      if (!rn_out_dir.empty()) {
        path = rn_out_dir + "/" + fetch_string([&](char* b, size_t c, size_t* n) {
                 return hubvqe_run_file_name(inst.ptr, &o, b, c, n);
               });
      }
      hubvqe_run_result r{};
      check(hubvqe_run(inst.ptr, &o, path.empty() ? nullptr : path.c_str(), &r));
      std::printf("best value %.9f  calls %lld  iterations %lld  stop %s\n", r.best_value,
                  static_cast<long long>(r.calls), static_cast<long long>(r.iterations),
                  hubvqe_stop_reason_name(r.stop_reason));
      if (!path.empty()) std::printf("trace %s\n", path.c_str());
      return r.stop_reason == HUBVQE_STOP_FAILED ? 1 : 0;
    }

    if (cp->parsed()) {
      cp_opts.benchmarks = cp_bench.c_str();
      cp_opts.optimizers = cp_opt.c_str();
      cp_opts.instances = cp_instances.empty() ? nullptr : cp_instances.c_str();
      cp_opts.presets = !cp_no_presets;
      cp_opts.record_time = !cp_no_time;
      cp_opts.out_dir = cp_out.c_str();
      hubvqe_campaign_stats s{};
      check(hubvqe_campaign(&cp_opts, &s));
      std::printf("planned %lld  ran %lld  skipped %lld  failed %lld\n", static_cast<long long>(s.planned),
                  static_cast<long long>(s.ran), static_cast<long long>(s.skipped), static_cast<long long>(s.failed));
      return 0;
    }

    if (sh->parsed()) {
      check(hubvqe_sweep_hparams(sh_opt.c_str(), sh_gradient.empty() ? nullptr : sh_gradient.c_str(),
                                 sh_instance.empty() ? nullptr : sh_instance.c_str(), sh_trials, sh_budget, sh_seed,
                                 sh_jobs, sh_out.c_str()));
      std::printf("wrote %s\n", sh_out.c_str());
      return 0;
    }

    if (an->parsed()) {
      std::vector<double> tols;
      std::stringstream ss(an_tol);
      for (std::string piece; std::getline(ss, piece, ',');) {
        if (!piece.empty()) tols.push_back(std::stod(piece));
      }
      hubvqe_analyze_stats s{};
      check(hubvqe_analyze(an_runs.c_str(), an_out.c_str(), tols.data(), tols.size(), &s));
      std::printf("runs %lld  incomplete %lld  unmatched %lld\n", static_cast<long long>(s.runs),
                  static_cast<long long>(s.incomplete), static_cast<long long>(s.unmatched));
      return 0;
    }

    if (ex->parsed()) {
      check(hubvqe_expressivity(ex_bench.c_str(), ex_qubits, ex_budget,
                                ex_external.empty() ? nullptr : ex_external.c_str(), ex_jobs, ex_out.c_str()));
      std::printf("wrote %s\n", ex_out.c_str());
      return 0;
    }

    if (li->parsed()) {
      std::cout << fetch_string([&](char* b, size_t c, size_t* n) { return hubvqe_list_instances(li_which.c_str(), b, c, n); });
      return 0;
    }

    if (lo->parsed()) {
      std::cout << fetch_string([](char* b, size_t c, size_t* n) { return hubvqe_list_optimizers(b, c, n); });
      return 0;
    }
  } catch (const ApiError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
