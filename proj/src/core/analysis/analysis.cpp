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

#include "analysis/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <tuple>

#include <json.hpp>

#include "bench/campaign.hpp"
#include "bench/suite.hpp"
#include "util/errors.hpp"
#include "util/format.hpp"

namespace hubvqe {

namespace fs = std::filesystem;

std::vector<double> best_exact_series(const std::vector<RunRecord>& records, bool* noisy_fallback) {
  bool any_exact = false;
  for (const auto& r : records) any_exact = any_exact || std::isfinite(r.exact_value);
  if (noisy_fallback) *noisy_fallback = !any_exact;
  std::vector<double> out;
  out.reserve(records.size());
  double best = std::numeric_limits<double>::infinity();
  for (const auto& r : records) {
    const double v = any_exact ? r.exact_value : r.value;
    if (std::isfinite(v)) best = std::min(best, v);
    out.push_back(best);
  }
  return out;
}

std::int64_t calls_to_self_tolerance(const std::vector<RunRecord>& records, double tol) {
  if (records.empty()) return 0;
  const auto series = best_exact_series(records);
  const double target = series.back() + tol;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (series[i] <= target) return records[i].iter;
  }
  return records.back().iter;
}

RunSummary summarize_run(const std::vector<RunRecord>& records, double ground_energy, const GridSpec& grid,
                         const std::vector<double>& tolerances) {
  if (records.empty()) throw InputError("run trace is empty");
  if (!std::isfinite(ground_energy)) throw InputError("ground energy missing");
  RunSummary s;
  s.sites = grid.sites();
  s.ground_energy = ground_energy;
  const auto series = best_exact_series(records, &s.noisy_fallback);
  s.best_exact_energy = series.back();
  s.normalized_error = (s.best_exact_energy - ground_energy) / s.sites;
  for (double tol : tolerances) {
    std::optional<std::int64_t> hit;
    for (std::size_t i = 0; i < series.size(); ++i) {
      if (series[i] <= ground_energy + tol) {
        hit = records[i].iter;
        break;
      }
    }
    s.calls_to_tol[tol] = hit;
  }
  s.calls_to_self_tol = calls_to_self_tolerance(records);
  s.total_calls = records.back().iter;
  s.total_nmeas = records.back().nmeas;
  return s;
}

namespace {

struct InstanceMeta {
  GridSpec grid;
  int nshots = 0;
  std::string filling;
  double ground = 0.0;
};

std::map<std::string, InstanceMeta> read_manifest(const fs::path& path) {
  std::map<std::string, InstanceMeta> out;
  std::ifstream in(path);
  if (!in) return out;
  nlohmann::json j;
  try {
    in >> j;
    for (const auto& e : j.at("instances")) {
      InstanceMeta m;
      m.grid = {e.at("rows").get<int>(), e.at("cols").get<int>()};
      m.nshots = e.at("nshots").get<int>();
      m.filling = e.at("filling").get<std::string>();
      m.ground = e.at("ground_energy").get<double>();
      out[e.at("id").get<std::string>()] = m;
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
  return out;
}

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Linear interpolation between order statistics.
double quantile(std::vector<double> v, double q) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

std::string tol_name(double tol) { return format_real(tol); }

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p);
  if (!out) throw IoError("cannot write " + p.string());
  return out;
}

}  // namespace

LoadedRuns load_runs(const std::string& dir, const std::vector<double>& tolerances) {
  if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir);
  const auto manifest = read_manifest(fs::path(dir) / "manifest.json");
  std::map<std::string, InstanceMeta> derived;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".csv") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  LoadedRuns out;
  for (const auto& p : files) {
    RunFileName name;
    if (!parse_run_file_name(p.filename().string(), name)) {
      ++out.unmatched;
      continue;
    }
    InstanceMeta meta;
    if (auto it = manifest.find(name.instance_id); it != manifest.end()) {
      meta = it->second;
    } else if (auto jt = derived.find(name.instance_id); jt != derived.end()) {
      meta = jt->second;
    } else {
      BenchmarkInstance b;
      try {
        b = resolve_instance(name.instance_id);
      } catch (const InputError&) {
        ++out.unmatched;
        continue;
      }
      meta = {b.instance.grid, b.instance.nshots, std::string(filling_name(b.instance.filling)),
              exact_ground_energy(b.instance)};
      derived[name.instance_id] = meta;
    }
    const RunCsv csv = read_run_csv(p.string());
    if (!csv.complete || csv.records.empty()) {
      ++out.incomplete;
      continue;
    }
    RunSummary s = summarize_run(csv.records, meta.ground, meta.grid, tolerances);
    s.instance_id = name.instance_id;
    s.optimizer = name.label;
    s.hparam_label = name.hparam_label;
    s.seed = name.seed;
    s.nshots = meta.nshots;
    s.filling = meta.filling;
    s.complete = true;
    out.summaries.push_back(std::move(s));
  }
  return out;
}

std::vector<OptimizerScore> best_per_optimizer(const std::vector<RunSummary>& summaries) {
  using Key = std::tuple<std::string, std::string, std::string>;  // instance, optimizer, hparam
  std::map<Key, std::vector<const RunSummary*>> groups;
  for (const auto& s : summaries) groups[{s.instance_id, s.optimizer, s.hparam_label}].push_back(&s);
  std::map<std::pair<std::string, std::string>, OptimizerScore> best;
  for (const auto& [key, runs] : groups) {
    std::vector<double> e, err, calls;
    for (const auto* r : runs) {
      e.push_back(r->best_exact_energy);
      err.push_back(r->normalized_error);
      calls.push_back(static_cast<double>(r->calls_to_self_tol));
    }
    OptimizerScore sc{std::get<0>(key), std::get<1>(key), std::get<2>(key), runs.front()->nshots,
                      runs.front()->filling, median(e), median(err), median(calls)};
    auto [it, inserted] = best.try_emplace({sc.instance_id, sc.optimizer}, sc);
    if (!inserted && sc.best_exact_energy < it->second.best_exact_energy) it->second = sc;
  }
  std::vector<OptimizerScore> out;
  for (auto& [k, v] : best) out.push_back(v);
  return out;
}

std::vector<WinnerCount> winners(const std::vector<RunSummary>& summaries, int decimals) {
  const auto scores = best_per_optimizer(summaries);
  std::set<std::string> optimizers;
  std::map<std::string, std::vector<const OptimizerScore*>> by_instance;
  for (const auto& s : scores) {
    optimizers.insert(s.optimizer);
    by_instance[s.instance_id].push_back(&s);
  }
  // counts[(shots, filling)][optimizer]
  std::map<std::pair<std::string, std::string>, std::map<std::string, int>> counts;
  std::set<std::string> shot_keys = {"all"}, fill_keys = {"all"};
  for (const auto& [id, list] : by_instance) {
    double low = std::numeric_limits<double>::infinity();
    for (const auto* s : list) low = std::min(low, round_to(s->best_exact_energy, decimals));
    const std::string shots = std::to_string(list.front()->nshots), fill = list.front()->filling;
    shot_keys.insert(shots);
    fill_keys.insert(fill);
    for (const auto* s : list) {
      if (round_to(s->best_exact_energy, decimals) != low) continue;
      for (const std::string& a : {std::string("all"), shots}) {
        for (const std::string& b : {std::string("all"), fill}) ++counts[{a, b}][s->optimizer];
      }
    }
  }
  std::vector<WinnerCount> out;
  for (const auto& a : shot_keys) {
    for (const auto& b : fill_keys) {
      for (const auto& o : optimizers) {
        auto it = counts.find({a, b});
        const int w = it == counts.end() || !it->second.count(o) ? 0 : it->second.at(o);
        out.push_back({a, b, o, w});
      }
    }
  }
  return out;
}

std::vector<FdSpPair> fd_sp_pairs(const std::vector<RunSummary>& summaries) {
  const auto scores = best_per_optimizer(summaries);
  std::map<std::pair<std::string, std::string>, const OptimizerScore*> index;
  for (const auto& s : scores) index[{s.instance_id, s.optimizer}] = &s;
  std::vector<FdSpPair> out;
  for (const auto& s : scores) {
    const std::string& o = s.optimizer;
    if (o.size() < 4 || o.substr(o.size() - 3) != "-fd") continue;
    const std::string base = o.substr(0, o.size() - 3);
    auto it = index.find({s.instance_id, base + "-sp"});
    if (it == index.end()) continue;
    out.push_back({base, s.instance_id, s.normalized_error, it->second->normalized_error, s.calls_to_self_tol,
                   it->second->calls_to_self_tol});
  }
  return out;
}

void emit_tables(const std::vector<RunSummary>& summaries, const std::string& out_dir,
                 const std::vector<double>& tolerances) {
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  // Input order must not matter.
  std::vector<const RunSummary*> runs;
  for (const auto& s : summaries) runs.push_back(&s);
  std::sort(runs.begin(), runs.end(), [](const RunSummary* a, const RunSummary* b) {
    return std::tie(a->optimizer, a->instance_id, a->hparam_label, a->seed) <
           std::tie(b->optimizer, b->instance_id, b->hparam_label, b->seed);
  });

  std::map<std::string, std::vector<double>> errors;
  for (const auto* s : runs) errors[s->optimizer].push_back(s->normalized_error);
  std::vector<std::pair<double, std::string>> order;
  for (const auto& [o, v] : errors) {
    double m = 0.0;
    for (double x : v) m += x;
    order.push_back({m / static_cast<double>(v.size()), o});
  }
  std::sort(order.begin(), order.end());
  std::map<std::string, std::size_t> rank;
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i].second] = i;
  std::stable_sort(runs.begin(), runs.end(),
                   [&](const RunSummary* a, const RunSummary* b) { return rank[a->optimizer] < rank[b->optimizer]; });

  {
    auto out = open_out(dir / "summaries.csv");
    out << "optimizer,hparams,instance,seed,nshots,filling,sites,ground_energy,best_exact_energy,normalized_error,"
           "calls_to_self_tol,total_calls,total_nmeas,noisy_fallback\n";
    for (const auto* s : runs) {
      out << s->optimizer << ',' << s->hparam_label << ',' << s->instance_id << ',' << s->seed << ',' << s->nshots
          << ',' << s->filling << ',' << s->sites << ',' << format_real(s->ground_energy) << ','
          << format_real(s->best_exact_energy) << ',' << format_real(s->normalized_error) << ','
          << s->calls_to_self_tol << ',' << s->total_calls << ',' << s->total_nmeas << ','
          << (s->noisy_fallback ? "true" : "false") << '\n';
    }
  }
  {
    auto out = open_out(dir / "errors.csv");
    out << "optimizer,instance,hparams,seed,normalized_error\n";
    for (const auto* s : runs) {
      out << s->optimizer << ',' << s->instance_id << ',' << s->hparam_label << ',' << s->seed << ','
          << format_real(s->normalized_error) << '\n';
    }
  }
  {
    auto out = open_out(dir / "boxplot.csv");
    out << "optimizer,n,mean,q1,median,q3,whisker_low,whisker_high,outliers\n";
    for (const auto& [mean, o] : order) {
      const auto& v = errors[o];
      const double q1 = quantile(v, 0.25), q3 = quantile(v, 0.75), iqr = q3 - q1;
      double lo = std::numeric_limits<double>::infinity(), hi = -lo;
      int outliers = 0;
      for (double x : v) {
        if (x < q1 - 1.5 * iqr || x > q3 + 1.5 * iqr) {
          ++outliers;
        } else {
          lo = std::min(lo, x);
          hi = std::max(hi, x);
        }
      }
      out << o << ',' << v.size() << ',' << format_real(mean) << ',' << format_real(q1) << ',' << format_real(median(v))
          << ',' << format_real(q3) << ',' << format_real(lo) << ',' << format_real(hi) << ',' << outliers << '\n';
    }
  }
  {
    auto out = open_out(dir / "calls_to_tolerance.csv");
    out << "optimizer,instance,hparams,seed,tolerance,calls\n";
    for (const auto* s : runs) {
      for (double tol : tolerances) {
        auto it = s->calls_to_tol.find(tol);
        out << s->optimizer << ',' << s->instance_id << ',' << s->hparam_label << ',' << s->seed << ','
            << tol_name(tol) << ',';
        if (it != s->calls_to_tol.end() && it->second) out << *it->second;
        out << '\n';
      }
    }
  }
  {
    auto out = open_out(dir / "winners.csv");
    out << "shots,filling,optimizer,wins\n";
    for (const auto& w : winners(summaries)) {
      out << w.slice_shots << ',' << w.slice_filling << ',' << w.optimizer << ',' << w.wins << '\n';
    }
  }
  {
    auto out = open_out(dir / "fd_vs_sp.csv");
    out << "optimizer,instance,fd_normalized_error,sp_normalized_error,fd_calls_to_self_tol,sp_calls_to_self_tol\n";
    for (const auto& p : fd_sp_pairs(summaries)) {
      out << p.base << ',' << p.instance_id << ',' << format_real(p.fd_error) << ',' << format_real(p.sp_error) << ','
          << format_real(p.fd_self_calls) << ',' << format_real(p.sp_self_calls) << '\n';
    }
  }
}

}  // namespace hubvqe
