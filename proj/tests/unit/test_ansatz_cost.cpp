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

#include <bit>
#include <cmath>
#include <filesystem>
#include <numbers>

#include <gtest/gtest.h>

#include "ansatz/ansatz.hpp"
#include "cost/cost.hpp"
#include "oracles.hpp"
#include "util/errors.hpp"

namespace hubvqe {
namespace {

std::shared_ptr<const Ansatz> make_ansatz(std::string_view id) {
  return std::make_shared<const Ansatz>(parse_instance_id(id));
}

std::vector<double> random_params(int n, Rng& rng) {
  std::uniform_real_distribution<double> d(-std::numbers::pi, std::numbers::pi);
  std::vector<double> x(static_cast<std::size_t>(n));
  for (auto& v : x) v = d(rng);
  return x;
}

TEST(Ansatz, ParameterCountsFollowGateTable) {
  for (auto [r, c] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 3}}) {
    HubbardInstance inst;
    inst.grid = {r, c};
    inst.occupation = occupation_for(inst.grid, Filling::Half);
    inst.nlayers = 3;
    const Ansatz a(inst);
    EXPECT_EQ(a.num_params(), 3 * gate_count_table(inst.grid).params_per_layer);
  }
}

TEST(Ansatz, ReferenceStateHasFreeFermionEnergy) {
  // Two-site U = 0 ground state with one fermion per spin: -2|t|.
  HubbardInstance inst;
  inst.grid = {1, 2};
  inst.params = {-1.0, 0.0};
  inst.occupation = {1, 1};
  const Ansatz a(inst);
  EXPECT_NEAR(a.energy(a.reference_state()), -2.0, 1e-12);
  const auto zero = std::vector<double>(static_cast<std::size_t>(a.num_params()), 0.0);
  EXPECT_NEAR(a.exact_energy(zero), -2.0, 1e-12);
}

TEST(Ansatz, ReferenceStateLiesInOccupationSector) {
  const Ansatz a(parse_instance_id("sw_2x2_U2_quarter_L5_S10000"));
  const auto& s = a.reference_state();
  for (std::uint64_t b = 0; b < s.size(); ++b) {
    if (std::abs(s[b]) < 1e-14) continue;
    EXPECT_EQ(std::popcount(b & 0xF), 1);
    EXPECT_EQ(std::popcount(b >> 4), 1);
  }
  EXPECT_NEAR(s.norm(), 1.0, 1e-12);
}

TEST(Ansatz, PrefixStatesComposeToFullCircuit) {
  const auto a = make_ansatz("sw_3x1_U4_quarter_L2_S1000");
  Rng rng(3);
  const auto x = random_params(a->num_params(), rng);
  for (int k = 0; k <= a->num_params(); ++k) {
    StateVector s = a->prefix_state(x, k);
    a->apply_params(s, x, k, a->num_params());
    const StateVector full = a->prepare(x);
    for (std::size_t i = 0; i < s.size(); ++i) ASSERT_NEAR(std::abs(s[i] - full[i]), 0.0, 1e-12);
  }
}

TEST(Ansatz, GeneratorPeriodicity) {
  const auto a = make_ansatz("sw_2x2_U2_quarter_L5_S10000");
  Rng rng(4);
  const auto x = random_params(a->num_params(), rng);
  const double e0 = a->exact_energy(x);
  for (int k = 0; k < a->num_params(); ++k) {
    const GeneratorSpec g = a->generator_spec(k);
    EXPECT_DOUBLE_EQ(g.period, g.label == GroupLabel::O ? 2 * std::numbers::pi : 4 * std::numbers::pi);
    auto y = x;
    y[k] += g.period;
    EXPECT_NEAR(a->exact_energy(y), e0, 1e-10) << "param " << k;
  }
}

TEST(Ansatz, PublishedInitialEnergyAnchor) {
  const auto a = make_ansatz("sw_3x1_U4_quarter_L2_S1000");
  const auto x0 = initial_parameters(a->spec());
  EXPECT_NEAR(a->exact_energy(x0), -1.766045, 1e-6);
}

TEST(Ansatz, EnergyMatchesDenseHamiltonian) {
  const auto a = make_ansatz("sw_3x1_U4_quarter_L2_S1000");
  Rng rng(5);
  const auto x = random_params(a->num_params(), rng);
  const auto h = oracle::pauli_hamiltonian(a->instance().grid, a->instance().params);
  EXPECT_NEAR(a->exact_energy(x), oracle::expectation(h, a->prepare(x)), 1e-12);
}

TEST(Ansatz, RejectsWrongParameterLength) {
  const auto a = make_ansatz("sw_3x1_U4_quarter_L2_S1000");
  EXPECT_THROW(a->exact_energy(std::vector<double>(3, 0.0)), InputError);
}

TEST(Cost, FirstCallSpendsShotsPerGroup) {
  const auto a = make_ansatz("sw_3x1_U4_quarter_L2_S1000");
  StatisticalCost cost(a, 7);
  MemoryRunSink sink;
  RecordedCost rec(cost, &sink, {});
  const auto x0 = initial_parameters(a->spec());
  const CostSample s = rec.sample(x0, true);
  EXPECT_EQ(s.estimate.nmeas, 3000);
  ASSERT_EQ(sink.records.size(), 1u);
  EXPECT_EQ(sink.records[0].iter, 1);
  EXPECT_EQ(sink.records[0].nmeas, 3000);
  EXPECT_NEAR(sink.records[0].exact_value, -1.766045, 1e-6);
  rec(x0);
  EXPECT_EQ(sink.records[1].nmeas, 6000);
}

TEST(Cost, StatisticalCostIsUnbiased) {
  const auto a = make_ansatz("sw_3x1_U4_quarter_L2_S1000");
  Rng rng(8);
  const auto x = random_params(a->num_params(), rng);
  const double exact = a->exact_energy(x);
  StatisticalCost cost(a, 11, 100000);
  const CostSample s = cost.sample(x, true);
  EXPECT_NEAR(s.exact_value, exact, 1e-12);
  EXPECT_LE(std::fabs(s.estimate.value - exact), 4.0 * s.estimate.std_error);
  EXPECT_GT(s.estimate.std_error, 0.0);
}

TEST(Cost, SeededCostsRepeat) {
  const auto a = make_ansatz("sw_3x1_U4_quarter_L2_S1000");
  StatisticalCost c1(a, 5), c2(a, 5), c3(a, 6);
  const auto x0 = initial_parameters(a->spec());
  const double v1 = c1(x0).value, v2 = c2(x0).value, v3 = c3(x0).value;
  EXPECT_EQ(v1, v2);
  EXPECT_NE(v1, v3);
}

TEST(Cost, ExactCostReportsNoNoise) {
  const auto a = make_ansatz("sw_3x1_U4_quarter_L2_S1000");
  ExactCost cost(a);
  const auto x0 = initial_parameters(a->spec());
  const EnergyEstimate e = cost(x0);
  EXPECT_NEAR(e.value, -1.766045, 1e-6);
  EXPECT_EQ(e.std_error, 0.0);
  EXPECT_TRUE(cost.noiseless());
}

TEST(Cost, RecorderEnforcesBudget) {
  FunctionCost f(2, [](std::span<const double> x) { return x[0] * x[0] + x[1] * x[1]; });
  MemoryRunSink sink;
  RecordedCost rec(f, &sink, {3, 3600.0});
  const std::vector<double> x = {1.0, 2.0};
  for (int i = 0; i < 3; ++i) rec(x);
  EXPECT_EQ(rec.remaining_calls(), 0);
  EXPECT_THROW(rec(x), BudgetExhausted);
  EXPECT_THROW(rec.require(1), BudgetExhausted);
  EXPECT_EQ(sink.records.size(), 3u);
  EXPECT_DOUBLE_EQ(rec.best_value(), 5.0);
}

TEST(Cost, PolicyValidation) {
  EXPECT_THROW((TerminationPolicy{0, 10.0}.validate()), InputError);
  EXPECT_THROW((TerminationPolicy{10, 0.0}.validate()), InputError);
  EXPECT_NO_THROW((TerminationPolicy{10, 1.0}.validate()));
}

TEST(RunLog, CsvRoundTrip) {
  const auto path = (std::filesystem::temp_directory_path() / "hubvqe_runlog_test.csv").string();
  {
    CsvRunSink sink(path, true);
    sink.append({1, -1.25, {0.1234567, -2.0}, -1.5, 3000, 0.0, 0});
    sink.append({2, 0.5, {1e-7, 3.0}, std::nan(""), 6000, 0.25, 1});
    sink.finish("budget");
  }
  const RunCsv csv = read_run_csv(path);
  ASSERT_EQ(csv.records.size(), 2u);
  EXPECT_TRUE(csv.complete);
  EXPECT_TRUE(csv.has_iteration);
  EXPECT_EQ(csv.end_note, "budget");
  EXPECT_DOUBLE_EQ(csv.records[0].params[0], 0.123457);
  EXPECT_DOUBLE_EQ(csv.records[1].params[0], 0.0);
  EXPECT_TRUE(std::isnan(csv.records[1].exact_value));
  EXPECT_EQ(csv.records[1].nmeas, 6000);
  EXPECT_EQ(csv.records[1].iteration, 1);
  EXPECT_TRUE(run_file_complete(path));
  std::filesystem::remove(path);
}

TEST(RunLog, HeaderIsStable) {
  EXPECT_STREQ(kRunCsvHeader, "iter,value,params,exact value,nmeas,time");
  const std::string line = format_record({3, -1.0, {0.5}, -1.1, 10, 0.0, -1}, false);
  EXPECT_EQ(line.substr(0, 2), "3,");
}

}  // namespace
}  // namespace hubvqe
