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

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "util/rng.hpp"

namespace hubvqe {

// How a hyperparameter is drawn during random-search sweeping.
enum class SweepKind {
  PositiveLog,  // log-uniform on [d/100, 100 d]
  NegativeLog,  // -(log-uniform on [|d|/100, 100 |d|])
  UnitInterval, // uniform on [0, 1]
  IntegerLog,   // log-uniform integer on [max(1, d/100), 100 d]
  Categorical,  // uniform over choices
};

struct HyperparamDecl {
  std::string name;
  SweepKind kind = SweepKind::PositiveLog;
  double default_value = 0.0;
  std::vector<double> choices;  // categorical only; booleans are {0, 1}
  bool boolean = false;
};

// Values are stored as doubles; integers and booleans are exact in a double.
struct HyperparameterSet {
  std::string optimizer;
  std::string label = "default";
  std::map<std::string, double> values;

  double get(const std::string& key) const;
  long long get_int(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  friend bool operator==(const HyperparameterSet&, const HyperparameterSet&) = default;
};

// Declared hyperparameters of an optimizer (empty for parameter-free ones).
const std::vector<HyperparamDecl>& hyperparameter_schema(std::string_view optimizer);
HyperparameterSet default_hyperparameters(std::string_view optimizer);

// Fills missing keys with defaults and rejects unknown keys or invalid values.
HyperparameterSet complete_hyperparameters(std::string_view optimizer, const HyperparameterSet& partial);

// One draw from the sweep space of every declared hyperparameter.
HyperparameterSet sample_hyperparameters(std::string_view optimizer, Rng& rng);

// Tuned sets published alongside the defaults, labelled "fd1".."fd4",
// "sp1".. for gradient-family optimizers and "alt1".. otherwise.
std::vector<HyperparameterSet> preset_hyperparameters(std::string_view optimizer, std::string_view gradient = "");

// JSON object {"optimizer": ..., "label": ..., "values": {...}} or a flat map of values.
std::string hyperparameters_to_json(const HyperparameterSet& h);
HyperparameterSet hyperparameters_from_json(std::string_view text, std::string_view optimizer);
HyperparameterSet load_hyperparameters(const std::string& path, std::string_view optimizer);

}  // namespace hubvqe
