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

#include "cost/cost.hpp"

#include <algorithm>
#include <cmath>

#include "util/errors.hpp"

namespace hubvqe {

PreparedStateCache::PreparedStateCache(const Ansatz& ansatz, std::size_t max_bytes) : ansatz_(ansatz) {
  const std::size_t per_state = ansatz.reference_state().size() * sizeof(Amplitude);
  enabled_ = per_state * static_cast<std::size_t>(ansatz.num_params() + 1) <= max_bytes;
}

const StateVector& PreparedStateCache::prepare(std::span<const double> params) {
  const int nu = ansatz_.num_params();
  if (static_cast<int>(params.size()) != nu) {
    throw InputError("expected " + std::to_string(nu) + " parameters, got " + std::to_string(params.size()));
  }
  if (!enabled_) {
    scratch_ = ansatz_.prepare(params);
    return scratch_;
  }
  if (!valid_) {
    after_.assign(static_cast<std::size_t>(nu + 1), ansatz_.reference_state());
    last_.assign(params.begin(), params.end());
    for (int k = 0; k < nu; ++k) {
      after_[k + 1] = after_[k];
      ansatz_.apply_params(after_[k + 1], params, k, k + 1);
    }
    valid_ = true;
    return after_[nu];
  }
  int d = 0;
  while (d < nu && last_[d] == params[d]) ++d;
  for (int k = d; k < nu; ++k) {
    last_[k] = params[k];
    after_[k + 1] = after_[k];
    ansatz_.apply_params(after_[k + 1], params, k, k + 1);
  }
  return after_[nu];
}

ExactCost::ExactCost(std::shared_ptr<const Ansatz> ansatz) : ansatz_(std::move(ansatz)), cache_(*ansatz_) {}

CostSample ExactCost::sample(std::span<const double> x, bool) {
  const StateVector& state = cache_.prepare(x);
  const auto& inst = ansatz_->instance();
  CostSample s;
  double e = 0.0;
  const auto& groups = ansatz_->groups();
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const GroupMoments m = ansatz_->kernel().exact_moments(state, gi);
    e += group_coefficient(groups[gi], inst.params) * m.mean;
    s.groups.push_back({groups[gi].label, m.mean, m.variance(), m.second, 0});
  }
  s.estimate = {e, 0.0, static_cast<std::int64_t>(ansatz_->groups().size()) * inst.nshots};
  s.exact_value = e;
  return s;
}

double ExactCost::value(std::span<const double> x) { return sample(x, true).exact_value; }

StatisticalCost::StatisticalCost(std::shared_ptr<const Ansatz> ansatz, std::uint64_t seed, std::int64_t nshots)
    : ansatz_(std::move(ansatz)),
      cache_(*ansatz_),
      seed_(seed),
      nshots_(nshots > 0 ? nshots : ansatz_->instance().nshots) {}

CostSample StatisticalCost::sample(std::span<const double> x, bool want_exact) {
  const StateVector& state = cache_.prepare(x);
  const auto& params = ansatz_->instance().params;
  const auto& groups = ansatz_->groups();
  CostSample s;
  double value = 0.0, var = 0.0, exact = 0.0;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    Rng rng(derive_seed(seed_, {static_cast<std::uint64_t>(calls_), gi}));
    GroupMoments m;
    const ShotBatch batch = ansatz_->kernel().sample(state, gi, nshots_, rng, want_exact ? &m : nullptr);
    const double c = group_coefficient(groups[gi], params);
    const double mean = batch.mean(), v = batch.variance();
    value += c * mean;
    var += c * c * v / static_cast<double>(nshots_);
    exact += c * m.mean;
    s.groups.push_back({groups[gi].label, mean, v, batch.second_moment(), nshots_});
  }
  ++calls_;
  s.estimate = {value, std::sqrt(var), static_cast<std::int64_t>(groups.size()) * nshots_};
  if (want_exact) s.exact_value = exact;
  return s;
}

FunctionCost::FunctionCost(int nparams, std::function<double(std::span<const double>)> f, double noise_sd,
                           std::uint64_t seed)
    : nparams_(nparams), f_(std::move(f)), noise_sd_(noise_sd), rng_(seed) {
  if (noise_sd < 0) throw InputError("noise_sd must be >= 0");
}

CostSample FunctionCost::sample(std::span<const double> x, bool) {
  if (static_cast<int>(x.size()) != nparams_) throw InputError("parameter length mismatch");
  const double exact = f_(x);
  CostSample s;
  s.exact_value = exact;
  double v = exact;
  if (noise_sd_ > 0) v += std::normal_distribution<double>(0.0, noise_sd_)(rng_);
  s.estimate = {v, noise_sd_, 1};
  return s;
}

void TerminationPolicy::validate() const {
  if (max_calls < 1) throw InputError("max_calls must be positive");
  if (!(max_wall_seconds > 0)) throw InputError("max_wall_seconds must be positive");
}

std::string_view stop_reason_name(StopReason r) {
  switch (r) {
    case StopReason::Budget: return "budget";
    case StopReason::WallClock: return "wall-clock";
    case StopReason::Converged: return "converged";
    case StopReason::Failed: return "failed";
  }
  return "failed";
}

BudgetExhausted::BudgetExhausted(StopReason reason)
    : std::runtime_error(std::string("budget exhausted: ") + std::string(stop_reason_name(reason))),
      reason_(reason) {}

RecordedCost::RecordedCost(CostFunction& inner, RunSink* sink, TerminationPolicy policy, RecorderOptions options)
    : inner_(inner), sink_(sink), policy_(policy), options_(options), start_(std::chrono::steady_clock::now()) {
  policy_.validate();
}

double RecordedCost::elapsed_seconds() const {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
}

void RecordedCost::require(std::int64_t n) const {
  if (calls_ + n > policy_.max_calls) throw BudgetExhausted(StopReason::Budget);
  if (elapsed_seconds() > policy_.max_wall_seconds) throw BudgetExhausted(StopReason::WallClock);
}

CostSample RecordedCost::sample(std::span<const double> x, bool want_exact) {
  require(1);
  const auto now = std::chrono::steady_clock::now();
  if (!first_call_) first_call_ = now;
  CostSample s = inner_.sample(x, want_exact || options_.exact_shadow);

  RunRecord r;
  r.iter = calls_ + 1;
  r.value = s.estimate.value;
  r.params.assign(x.begin(), x.end());
  r.exact_value = options_.exact_shadow ? s.exact_value : std::numeric_limits<double>::quiet_NaN();
  r.nmeas = nmeas_ + s.estimate.nmeas;
  r.time = options_.record_time ? std::chrono::duration<double>(now - *first_call_).count() : 0.0;
  r.iteration = iteration_;

  ++calls_;
  nmeas_ = r.nmeas;
  if (s.estimate.value < best_value_) {
    best_value_ = s.estimate.value;
    best_params_.assign(x.begin(), x.end());
  }
  if (sink_ != nullptr) sink_->append(r);
  records_.push_back(std::move(r));
  return s;
}

}  // namespace hubvqe
