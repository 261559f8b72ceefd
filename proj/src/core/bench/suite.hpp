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

#include <string>
#include <string_view>
#include <vector>

#include "model/hubbard.hpp"

namespace hubvqe {

struct BenchmarkInstance {
  int benchmark = 0;  // 1..4, or 0 for the sweeping set
  HubbardInstance instance;
  std::string id;
};

inline constexpr int kNumBenchmarks = 4;

// Cartesian product for one benchmark (grids x U x fillings x layers x shots).
std::vector<BenchmarkInstance> enumerate_benchmark(int benchmark);
std::vector<BenchmarkInstance> enumerate_benchmarks(const std::vector<int>& benchmarks);
// The four instances reserved for step-size and hyperparameter sweeping.
std::vector<BenchmarkInstance> sweeping_instances();

// Parses "1,2" or "all".
std::vector<int> parse_benchmark_list(std::string_view text);

// Resolves an instance id from either enumeration, falling back to parsing.
BenchmarkInstance resolve_instance(std::string_view id);

}  // namespace hubvqe
