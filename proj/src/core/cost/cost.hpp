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

#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ansatz/ansatz.hpp"
#include "cost/run_log.hpp"

namespace hubvqe {

struct EnergyEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t nmeas = 0;  // measurements spent by this call
};

// Shot statistics of one measured group (coefficient not applied).
struct GroupStats {
  GroupLabel label = GroupLabel::O;
  double mean = 0.0;
  double variance = 0.0;  // unbiased per-shot sample variance
  double second_moment = 0.0;
  std::int64_t nshots = 0;
};

struct CostSample {
  EnergyEstimate estimate;
  double exact_value = std::numeric_limits<double>::quiet_NaN();
  std::vector<GroupStats> groups;  // empty for costs that do not measure
};

class CostFunction {
 public:
  virtual ~CostFunction() = default;
  virtual int num_params() const = 0;
  // `want_exact` asks for the noiseless value alongside the estimate when cheap.
  virtual CostSample sample(std::span<const double> x, bool want_exact) = 0;
  // True when every call returns the exact value.
  virtual bool noiseless() const { return false; }

  EnergyEstimate operator()(std::span<const double> x) { return sample(x, false).estimate; }
};

// Keeps the states after each parameter of the last prepared vector so that
// calls differing only in trailing coordinates reuse the common prefix.
class PreparedStateCache {
 public:
  explicit PreparedStateCache(const Ansatz& ansatz, std::size_t max_bytes = std::size_t{96} << 20);
  const StateVector& prepare(std::span<const double> params);

 private:
  const Ansatz& ansatz_;
  bool enabled_ = true;
  std::vector<double> last_;
  std::vector<StateVector> after_;  // after_[k]: state after parameters [0, k)
  StateVector scratch_;
  bool valid_ = false;
};

class ExactCost final : public CostFunction {
 public:
  explicit ExactCost(std::shared_ptr<const Ansatz> ansatz);
  int num_params() const override { return ansatz_->num_params(); }
  CostSample sample(std::span<const double> x, bool want_exact) override;
  bool noiseless() const override { return true; }
  double value(std::span<const double> x);

 private:
  std::shared_ptr<const Ansatz> ansatz_;
  PreparedStateCache cache_;
};

// Shot-noise estimator: every group gets nshots shots from the exact
// measurement distribution; call number c uses RNG stream (seed, c, group).
class StatisticalCost final : public CostFunction {
 public:
  StatisticalCost(std::shared_ptr<const Ansatz> ansatz, std::uint64_t seed, std::int64_t nshots = 0);
  int num_params() const override { return ansatz_->num_params(); }
  CostSample sample(std::span<const double> x, bool want_exact) override;
  std::int64_t nshots() const noexcept { return nshots_; }
  std::int64_t calls() const noexcept { return calls_; }

 private:
  std::shared_ptr<const Ansatz> ansatz_;
  PreparedStateCache cache_;
  std::uint64_t seed_;
  std::int64_t nshots_;
  std::int64_t calls_ = 0;
};

// Arbitrary objective, optionally with additive Gaussian noise of fixed scale.
class FunctionCost final : public CostFunction {
 public:
  FunctionCost(int nparams, std::function<double(std::span<const double>)> f, double noise_sd = 0.0,
               std::uint64_t seed = 0);
  int num_params() const override { return nparams_; }
  CostSample sample(std::span<const double> x, bool want_exact) override;
  bool noiseless() const override { return noise_sd_ == 0.0; }

 private:
  int nparams_;
  std::function<double(std::span<const double>)> f_;
  double noise_sd_;
  Rng rng_;
};

struct TerminationPolicy {
  std::int64_t max_calls = 5000;
  double max_wall_seconds = 3600.0;
  void validate() const;
};

enum class StopReason { Budget, WallClock, Converged, Failed };
std::string_view stop_reason_name(StopReason r);

// Raised by RecordedCost when the next call would exceed the policy.
class BudgetExhausted : public std::runtime_error {
 public:
  explicit BudgetExhausted(StopReason reason);
  StopReason reason() const noexcept { return reason_; }

 private:
  StopReason reason_;
};

struct RecorderOptions {
  bool exact_shadow = true;
  bool record_time = true;  // false writes 0.0 so that reruns are byte-identical
};

// Wraps a cost function: enforces the policy, appends one RunRecord per call
// and tracks the best noisy value.
class RecordedCost final : public CostFunction {
 public:
  RecordedCost(CostFunction& inner, RunSink* sink, TerminationPolicy policy, RecorderOptions options = {});

  int num_params() const override { return inner_.num_params(); }
  CostSample sample(std::span<const double> x, bool want_exact) override;
  bool noiseless() const override { return inner_.noiseless(); }

  // Throws BudgetExhausted unless at least `n` more calls fit.
  void require(std::int64_t n = 1) const;
  std::int64_t remaining_calls() const noexcept { return policy_.max_calls - calls_; }

  std::int64_t calls() const noexcept { return calls_; }
  std::int64_t nmeas() const noexcept { return nmeas_; }
  double best_value() const noexcept { return best_value_; }
  const std::vector<double>& best_params() const noexcept { return best_params_; }
  const std::vector<RunRecord>& records() const noexcept { return records_; }
  const TerminationPolicy& policy() const noexcept { return policy_; }
  double elapsed_seconds() const;

  // Extra `iteration` column value attached to following rows (QNG traces).
  void set_iteration(std::int64_t it) noexcept { iteration_ = it; }
  std::int64_t iteration() const noexcept { return iteration_; }

 private:
  CostFunction& inner_;
  RunSink* sink_;
  TerminationPolicy policy_;
  RecorderOptions options_;
  std::int64_t calls_ = 0;
  std::int64_t nmeas_ = 0;
  std::int64_t iteration_ = -1;
  double best_value_ = std::numeric_limits<double>::infinity();
  std::vector<double> best_params_;
  std::vector<RunRecord> records_;
  std::chrono::steady_clock::time_point start_;
  std::optional<std::chrono::steady_clock::time_point> first_call_;
};

}  // namespace hubvqe
