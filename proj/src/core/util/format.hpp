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

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hubvqe {

// Shortest round-trip decimal form, always carrying a fractional part or
// exponent ("0.5", "3.0", "1e-05", "nan"). Matches the repr of a Python float.
std::string format_real(double x);

// Rounds to `decimals` places; -0.0 is normalised to 0.0.
double round_to(double x, int decimals);

// "[0.5, 0.5, 0.413728]" with every entry rounded to six decimals.
std::string format_param_list(std::span<const double> params);
std::vector<double> parse_param_list(std::string_view text);

double parse_real(std::string_view text);
std::vector<std::string> split(std::string_view text, char sep);
std::string trim(std::string_view text);

}  // namespace hubvqe
