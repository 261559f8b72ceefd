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

#include "bench/suite.hpp"

#include <array>

#include "util/errors.hpp"
#include "util/format.hpp"

namespace hubvqe {

namespace {

struct Box {
  std::vector<GridSpec> grids;
  std::vector<Filling> fillings;
  std::vector<int> layers;
};

constexpr std::array<double, 3> kUValues = {2.0, 4.0, 8.0};
constexpr std::array<int, 2> kShots = {1000, 10000};

Box box_for(int benchmark) {
  switch (benchmark) {
    case 1:
      return {{{1, 2}}, {Filling::Half}, {2, 5}};
    case 2:
      return {{{1, 3}, {1, 4}, {2, 2}, {1, 5}, {1, 6}, {2, 3}}, {Filling::Half, Filling::Quarter}, {2, 5, 8}};
    case 3:
      return {{{1, 7}, {1, 8}, {2, 4}}, {Filling::Half, Filling::Quarter}, {5, 8, 10}};
    case 4:
      return {{{3, 3}}, {Filling::Half, Filling::Quarter}, {5, 8, 10}};
    default:
      throw InputError("benchmark must be 1..4, got " + std::to_string(benchmark));
  }
}

HubbardInstance make_instance(GridSpec grid, double U, Filling filling, int layers, int shots) {
  HubbardInstance inst;
  inst.grid = grid;
  inst.params.U = U;
  inst.filling = filling;
  inst.occupation = occupation_for(grid, filling);
  inst.nlayers = layers;
  inst.nshots = shots;
  inst.validate();
  return inst;
}

}  // namespace

std::vector<BenchmarkInstance> enumerate_benchmark(int benchmark) {
  const Box box = box_for(benchmark);
  const std::string prefix = "b" + std::to_string(benchmark);
  std::vector<BenchmarkInstance> out;
  for (const GridSpec& g : box.grids) {
    for (double U : kUValues) {
      for (Filling f : box.fillings) {
        for (int l : box.layers) {
          for (int s : kShots) {
            BenchmarkInstance b{benchmark, make_instance(g, U, f, l, s), {}};
            b.id = instance_id(b.instance, prefix);
            out.push_back(std::move(b));
          }
        }
      }
    }
  }
  return out;
}

std::vector<BenchmarkInstance> enumerate_benchmarks(const std::vector<int>& benchmarks) {
  std::vector<BenchmarkInstance> out;
  for (int b : benchmarks) {
    auto part = enumerate_benchmark(b);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::vector<BenchmarkInstance> sweeping_instances() {
  std::vector<BenchmarkInstance> out = {
      {0, make_instance({3, 1}, 4.0, Filling::Quarter, 2, 1000), {}},
      {0, make_instance({2, 2}, 2.0, Filling::Quarter, 5, 10000), {}},
      {0, make_instance({5, 1}, 8.0, Filling::Half, 8, 10000), {}},
      {0, make_instance({3, 2}, 4.0, Filling::Half, 5, 1000), {}},
  };
  for (auto& b : out) b.id = instance_id(b.instance, "sw");
  return out;
}

std::vector<int> parse_benchmark_list(std::string_view text) {
  if (trim(text) == "all") return {1, 2, 3, 4};
  std::vector<int> out;
  for (const auto& piece : split(text, ',')) {
    const std::string p = trim(piece);
    if (p.empty()) continue;
    if (p.size() != 1 || p[0] < '1' || p[0] > '4') throw InputError("benchmark must be 1..4, got '" + p + "'");
    out.push_back(p[0] - '0');
  }
  if (out.empty()) throw InputError("empty benchmark list");
  return out;
}

BenchmarkInstance resolve_instance(std::string_view id) {
  for (const auto& b : sweeping_instances()) {
    if (b.id == id) return b;
  }
  for (int k = 1; k <= kNumBenchmarks; ++k) {
    if (id.substr(0, 2) != "b" + std::to_string(k)) continue;
    for (auto& b : enumerate_benchmark(k)) {
      if (b.id == id) return b;
    }
  }
  BenchmarkInstance b;
  b.instance = parse_instance_id(id);
  b.id = std::string(id);
  return b;
}

}  // namespace hubvqe
