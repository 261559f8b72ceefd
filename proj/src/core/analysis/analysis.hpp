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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cost/run_log.hpp"
#include "model/hubbard.hpp"

namespace hubvqe {

inline const std::vector<double> kDefaultTolerances = {0.1, 0.01, 0.001};
inline constexpr double kSelfTolerance = 0.001;

struct RunSummary {
  std::string instance_id;
  std::string optimizer;  // run label, e.g. "adam-fd"
  std::string hparam_label;
  std::uint64_t seed = 0;
  int sites = 0;
  int nshots = 0;
  std::string filling;
  double ground_energy = 0.0;
  double best_exact_energy = 0.0;  // running minimum of the exact column at the last call
  double normalized_error = 0.0;   // (best_exact_energy - ground_energy) / sites
  std::map<double, std::optional<std::int64_t>> calls_to_tol;
  std::int64_t calls_to_self_tol = 0;
  std::int64_t total_calls = 0;
  std::int64_t total_nmeas = 0;
  bool noisy_fallback = false;  // exact column absent; noisy values used
  bool complete = false;
};

// Throws InputError on an empty trace or non-finite ground energy.
RunSummary summarize_run(const std::vector<RunRecord>& records, double ground_energy, const GridSpec& grid,
                         const std::vector<double>& tolerances = kDefaultTolerances);

// Running minimum of the exact column (noisy column if exact is absent).
std::vector<double> best_exact_series(const std::vector<RunRecord>& records, bool* noisy_fallback = nullptr);

// First `iter` whose running minimum is within `tol` of the run's own final value.
std::int64_t calls_to_self_tolerance(const std::vector<RunRecord>& records, double tol = kSelfTolerance);

// Reads every complete run file in `dir`. Instance metadata and ground
// energies come from manifest.json when present, otherwise from the file name
// and exact diagonalisation.
struct LoadedRuns {
  std::vector<RunSummary> summaries;
  std::int64_t incomplete = 0;  // files without end marker, skipped
  std::int64_t unmatched = 0;   // CSV files whose name is not a run name
};
LoadedRuns load_runs(const std::string& dir, const std::vector<double>& tolerances = kDefaultTolerances);

// Best summary value per (instance, optimizer): median over seeds, then the
// minimum over hyperparameter sets.
struct OptimizerScore {
  std::string instance_id, optimizer, hparam_label;
  int nshots = 0;
  std::string filling;
  double best_exact_energy = 0.0;
  double normalized_error = 0.0;
  double calls_to_self_tol = 0.0;
};
std::vector<OptimizerScore> best_per_optimizer(const std::vector<RunSummary>& summaries);

struct WinnerCount {
  std::string slice_shots;    // "all" or the shot count
  std::string slice_filling;  // "all" or the filling name
  std::string optimizer;
  int wins = 0;
};
// Per instance the optimizers whose rounded best energy is lowest share the win.
std::vector<WinnerCount> winners(const std::vector<RunSummary>& summaries, int decimals = 5);

struct FdSpPair {
  std::string base, instance_id;
  double fd_error = 0.0, sp_error = 0.0;
  double fd_self_calls = 0.0, sp_self_calls = 0.0;
};
std::vector<FdSpPair> fd_sp_pairs(const std::vector<RunSummary>& summaries);

// Writes summaries.csv, errors.csv, boxplot.csv, calls_to_tolerance.csv,
// winners.csv and fd_vs_sp.csv.
void emit_tables(const std::vector<RunSummary>& summaries, const std::string& out_dir,
                 const std::vector<double>& tolerances = kDefaultTolerances);

}  // namespace hubvqe
