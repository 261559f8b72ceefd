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

#include "opt/hyperparams.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "util/errors.hpp"

namespace hubvqe {

namespace {

HyperparamDecl pos(std::string name, double d) { return {std::move(name), SweepKind::PositiveLog, d, {}, false}; }
HyperparamDecl neg(std::string name, double d) { return {std::move(name), SweepKind::NegativeLog, d, {}, false}; }
HyperparamDecl unit(std::string name, double d) { return {std::move(name), SweepKind::UnitInterval, d, {}, false}; }
HyperparamDecl integer(std::string name, double d) { return {std::move(name), SweepKind::IntegerLog, d, {}, false}; }
HyperparamDecl flag(std::string name, bool d) { return {std::move(name), SweepKind::Categorical, d ? 1.0 : 0.0, {0.0, 1.0}, true}; }

const std::map<std::string, std::vector<HyperparamDecl>, std::less<>>& schemas() {
  static const std::map<std::string, std::vector<HyperparamDecl>, std::less<>> table = {
      {"hill-climber", {pos("sigma", 0.1), integer("n", 3)}},
      {"coordinate-descent", {flag("shuffle", false)}},
      {"bayes-mgd",
       {pos("alpha", 0.602), pos("gamma", 0.3), pos("A", 1.0), pos("delta", 0.6), pos("xi", 0.101), pos("eta", 0.6),
        pos("l0", 0.2)}},
      {"spsa", {pos("alpha", 0.602), pos("gamma", 0.101), pos("a", 0.2), pos("c", 0.15), pos("A", 1.0)}},
      {"gd", {pos("eta", 0.01)}},
      {"momentum", {pos("eta", 0.01), unit("gamma", 0.9), flag("nesterov", false)}},
      {"adadelta", {unit("gamma", 0.9)}},
      {"adam", {pos("alpha", 0.001), unit("beta1", 0.9), unit("beta2", 0.999), flag("nadam", false)}},
      {"mu-plus-lambda",
       {pos("min_strat", 0.01), pos("max_strat", 5.0), integer("mu", 2), integer("lambda_factor", 5),
        pos("alpha", 0.1), pos("sigma", 0.1), pos("c", 1.0), unit("indpb", 0.03), unit("pb_sum", 0.9),
        unit("pb_cut", 0.333), integer("tournsize", 3)}},
      {"pso",
       {integer("pop_size", 5), pos("ind_sigma", 0.1), neg("smin", -3.0), pos("smax", 3.0), pos("phi1", 2.0),
        pos("phi2", 2.0)}},
      {"cmaes", {pos("sigma", 0.1)}},
      {"nelder-mead", {flag("adaptive", true), flag("bounds", true)}},
      {"qng-gd", {pos("eta", 0.01)}},
      {"qng-nat", {pos("eta", 0.01)}},
      {"qng-ite", {pos("eta", 0.01)}},
      {"external", {}},
  };
  return table;
}

using Rows = std::vector<std::vector<double>>;

struct PresetTable {
  std::vector<std::string> keys;
  Rows fd;     // finite-difference sets, or the only sets for non-gradient optimizers
  Rows sp;     // simultaneous-perturbation sets
};

const std::map<std::string, PresetTable, std::less<>>& preset_tables() {
  static const std::map<std::string, PresetTable, std::less<>> table = {
      {"hill-climber", {{"sigma", "n"}, {{0.1, 14}, {0.0892, 5}, {0.108, 5}, {0.1006, 14}}, {}}},
      {"coordinate-descent", {{"shuffle"}, {{1}}, {}}},
      {"bayes-mgd",
       {{"alpha", "gamma", "A", "delta", "xi", "eta", "l0"},
        {{0.086, 7.4755, 0.0485, 0.1208, 0.0197, 0.0185, 0.0081},
         {0.0487, 1.2355, 15.0934, 0.234, 0.0108, 0.0706, 0.1125},
         {0.2337, 3.5308, 0.3922, 0.2262, 0.0225, 0.0102, 0.0924},
         {0.5303, 0.2918, 0.2582, 0.3682, 0.2253, 0.0071, 1.4672}},
        {}}},
      {"spsa",
       {{"alpha", "gamma", "a", "c", "A"},
        {{0.0247, 0.4476, 0.1208, 0.4926, 0.1579},
         {0.0104, 0.0074, 0.045, 0.0411, 0.0285},
         {0.0085, 0.0381, 0.0082, 0.0149, 0.3002},
         {0.552, 0.0383, 0.1926, 0.1202, 61.5955}},
        {}}},
      {"gd", {{"eta"}, {{0.0157}, {0.1045}, {0.0336}, {0.0063}}, {{0.0076}, {0.0264}, {0.0095}, {0.005}}}},
      {"momentum",
       {{"eta", "gamma", "nesterov"},
        {{0.7113, 0.7238, 0}, {0.3476, 0.462, 0}, {0.0657, 0.7631, 0}, {0.0739, 0.6769, 1}},
        {{0.0001, 0.3808, 0}, {0.0182, 0.8154, 1}, {0.7013, 0.4951, 1}, {0.0455, 0.3182, 0}}}},
      {"adadelta", {{"gamma"}, {{0.3318}, {0.8995}, {0.6603}, {0.99}}, {{0.99}, {0.9921}, {0.0005}}}},
      {"adam",
       {{"alpha", "beta1", "beta2", "nadam"},
        {{0.0701, 0.6798, 0.0928, 1}, {0.0992, 0.5233, 0.0652, 1}, {0.0, 0.6223, 0.8977, 0}, {0.0727, 0.0168, 0.479, 0}},
        {{0.0692, 0.0996, 0.4881, 0}, {0.0575, 0.0904, 0.3212, 0}, {0.0424, 0.5542, 0.2278, 0}, {0.0256, 0.7416, 0.3236, 0}}}},
      {"mu-plus-lambda",
       {{"min_strat", "max_strat", "mu", "lambda_factor", "alpha", "sigma", "c", "indpb", "pb_sum", "pb_cut", "tournsize"},
        {{0.4857, 2.0073, 10, 6, 0.1091, 0.1853, 0.7551, 0.3484, 0.305, 0.0337, 6},
         {0.1164, 3.5681, 7, 1, 8.1756, 0.0161, 0.3634, 0.108, 0.2048, 0.7677, 5},
         {0.7165, 3.4974, 5, 8, 3.9816, 0.0431, 0.2467, 0.5829, 0.9431, 0.0374, 10},
         {0.0555, 4.8834, 12, 6, 0.0209, 0.1759, 0.0479, 0.4767, 0.2732, 0.3227, 5}},
        {}}},
      {"pso",
       {{"pop_size", "ind_sigma", "smin", "smax", "phi1", "phi2"},
        {{14, 0.072, -9.4335, 0.3746, 3.0398, 2.5012},
         {17, 0.0327, -8.8692, 0.267, 2.9392, 6.8784},
         {2, 0.0869, -4.1556, 0.1707, 7.5111, 1.6902},
         {10, 0.143, -8.1941, 0.2252, 5.0192, 3.398}},
        {}}},
      {"cmaes", {{"sigma"}, {{0.1104}, {0.085}, {0.1726}, {0.1332}}, {}}},
      {"nelder-mead", {{"adaptive", "bounds"}, {{1, 0}, {0, 1}, {0, 0}}, {}}},
  };
  return table;
}

void validate_value(const std::string& optimizer, const HyperparamDecl& d, double v) {
  auto fail = [&](const std::string& why) {
    throw InputError("hyperparameter " + optimizer + "." + d.name + " = " + std::to_string(v) + ": " + why);
  };
  if (!std::isfinite(v)) fail("must be finite");
  switch (d.kind) {
    case SweepKind::PositiveLog:
      if (v < 0) fail("must be non-negative");
      break;
    case SweepKind::NegativeLog:
      if (v > 0) fail("must be non-positive");
      break;
    case SweepKind::UnitInterval:
      if (v < 0 || v > 1) fail("must lie in [0, 1]");
      break;
    case SweepKind::IntegerLog:
      if (v < 1 || v != std::floor(v)) fail("must be a positive integer");
      break;
    case SweepKind::Categorical:
      if (std::find(d.choices.begin(), d.choices.end(), v) == d.choices.end()) fail("not an allowed choice");
      break;
  }
}

}  // namespace

double HyperparameterSet::get(const std::string& key) const {
  const auto it = values.find(key);
  if (it == values.end()) throw InputError("missing hyperparameter '" + key + "' for " + optimizer);
  return it->second;
}

long long HyperparameterSet::get_int(const std::string& key) const { return std::llround(get(key)); }

bool HyperparameterSet::get_bool(const std::string& key) const { return get(key) != 0.0; }

const std::vector<HyperparamDecl>& hyperparameter_schema(std::string_view optimizer) {
  const auto& t = schemas();
  const auto it = t.find(optimizer);
  if (it == t.end()) throw InputError("unknown optimizer '" + std::string(optimizer) + "'");
  return it->second;
}

HyperparameterSet default_hyperparameters(std::string_view optimizer) {
  HyperparameterSet h;
  h.optimizer = std::string(optimizer);
  for (const auto& d : hyperparameter_schema(optimizer)) h.values[d.name] = d.default_value;
  return h;
}

HyperparameterSet complete_hyperparameters(std::string_view optimizer, const HyperparameterSet& partial) {
  HyperparameterSet h = default_hyperparameters(optimizer);
  h.label = partial.label;
  const auto& schema = hyperparameter_schema(optimizer);
  for (const auto& [k, v] : partial.values) {
    const auto it = std::find_if(schema.begin(), schema.end(), [&](const HyperparamDecl& d) { return d.name == k; });
    if (it == schema.end()) throw InputError("unknown hyperparameter '" + k + "' for " + std::string(optimizer));
    validate_value(h.optimizer, *it, v);
    h.values[k] = v;
  }
  return h;
}

HyperparameterSet sample_hyperparameters(std::string_view optimizer, Rng& rng) {
  HyperparameterSet h;
  h.optimizer = std::string(optimizer);
  h.label = "sampled";
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  auto log_uniform = [&](double lo, double hi) { return std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * u01(rng)); };
  for (const auto& d : hyperparameter_schema(optimizer)) {
    double v = d.default_value;
    switch (d.kind) {
      case SweepKind::PositiveLog:
        v = log_uniform(d.default_value / 100.0, d.default_value * 100.0);
        break;
      case SweepKind::NegativeLog:
        v = -log_uniform(-d.default_value / 100.0, -d.default_value * 100.0);
        break;
      case SweepKind::UnitInterval:
        v = u01(rng);
        break;
      case SweepKind::IntegerLog: {
        const double lo = std::max(1.0, d.default_value / 100.0), hi = d.default_value * 100.0;
        v = std::clamp(std::floor(log_uniform(lo, hi + 1.0)), lo, hi);
        break;
      }
      case SweepKind::Categorical:
        v = d.choices[std::uniform_int_distribution<std::size_t>(0, d.choices.size() - 1)(rng)];
        break;
    }
    h.values[d.name] = v;
  }
  return h;
}

std::vector<HyperparameterSet> preset_hyperparameters(std::string_view optimizer, std::string_view gradient) {
  hyperparameter_schema(optimizer);  // validates the name
  std::vector<HyperparameterSet> out;
  const auto& t = preset_tables();
  const auto it = t.find(optimizer);
  if (it == t.end()) return out;
  const PresetTable& p = it->second;
  const bool gradient_family = !p.sp.empty();
  const bool use_sp = gradient_family && gradient == "sp";
  const Rows& rows = use_sp ? p.sp : p.fd;
  const std::string prefix = !gradient_family ? "alt" : (use_sp ? "sp" : "fd");
  for (std::size_t r = 0; r < rows.size(); ++r) {
    HyperparameterSet h = default_hyperparameters(optimizer);
    h.label = prefix + std::to_string(r + 1);
    for (std::size_t c = 0; c < p.keys.size(); ++c) h.values[p.keys[c]] = rows[r][c];
    out.push_back(std::move(h));
  }
  return out;
}

std::string hyperparameters_to_json(const HyperparameterSet& h) {
  nlohmann::ordered_json j;
  j["optimizer"] = h.optimizer;
  j["label"] = h.label;
  nlohmann::ordered_json values = nlohmann::ordered_json::object();
  for (const auto& d : hyperparameter_schema(h.optimizer)) {
    const auto it = h.values.find(d.name);
    if (it == h.values.end()) continue;
    if (d.boolean) {
      values[d.name] = it->second != 0.0;
    } else if (d.kind == SweepKind::IntegerLog) {
      values[d.name] = std::llround(it->second);
    } else {
      values[d.name] = it->second;
    }
  }
  j["values"] = values;
  return j.dump(2);
}

HyperparameterSet hyperparameters_from_json(std::string_view text, std::string_view optimizer) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("hyperparameter file: ") + e.what(), 0);
  }
  if (!j.is_object()) throw ParseError("hyperparameter file must hold a JSON object", 0);
  HyperparameterSet partial;
  partial.optimizer = std::string(optimizer);
  if (j.contains("optimizer") && j["optimizer"].is_string() && j["optimizer"].get<std::string>() != optimizer) {
    throw InputError("hyperparameters are for '" + j["optimizer"].get<std::string>() + "', not '" +
                     std::string(optimizer) + "'");
  }
  if (j.contains("label") && j["label"].is_string()) partial.label = j["label"].get<std::string>();
  const nlohmann::json& values = j.contains("values") ? j["values"] : j;
  for (const auto& [k, v] : values.items()) {
    if (&values == &j && (k == "optimizer" || k == "label")) continue;
    if (v.is_boolean()) {
      partial.values[k] = v.get<bool>() ? 1.0 : 0.0;
    } else if (v.is_number()) {
      partial.values[k] = v.get<double>();
    } else {
      throw ParseError("hyperparameter '" + k + "' must be a number or boolean", 0);
    }
  }
  return complete_hyperparameters(optimizer, partial);
}

HyperparameterSet load_hyperparameters(const std::string& path, std::string_view optimizer) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return hyperparameters_from_json(ss.str(), optimizer);
}

}  // namespace hubvqe
