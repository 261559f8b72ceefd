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

#include "sim/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_map>

#include "util/errors.hpp"

namespace hubvqe {

namespace {

constexpr std::uint64_t bit(int q) noexcept { return std::uint64_t{1} << q; }

inline double parity_sign(std::uint64_t x) noexcept { return (std::popcount(x) & 1) ? -1.0 : 1.0; }

void check_pair(const StateVector& state, QubitPair pair) {
  if (pair.j == pair.k || pair.j < 0 || pair.k < 0 || pair.j >= state.qubit_count() ||
      pair.k >= state.qubit_count()) {
    throw InputError("invalid qubit pair");
  }
}

}  // namespace

StateVector::StateVector(int qubit_count) : qubits_(qubit_count) {
  if (qubit_count < 0 || qubit_count > 30) throw ResourceError("state vector size out of range");
  amps_.assign(std::size_t{1} << qubit_count, Amplitude{});
  amps_[0] = 1.0;
}

StateVector StateVector::basis_state(int qubit_count, std::uint64_t index) {
  StateVector s(qubit_count);
  if (index >= s.size()) throw InputError("basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

double StateVector::norm() const {
  double acc = 0.0;
  for (const auto& a : amps_) acc += std::norm(a);
  return std::sqrt(acc);
}

void apply_onsite_phase(StateVector& state, QubitPair pair, double theta) {
  check_pair(state, pair);
  const std::uint64_t both = bit(pair.j) | bit(pair.k);
  const Amplitude phase = std::polar(1.0, theta);
  auto amps = state.amplitudes();
  for (std::uint64_t b = 0; b < amps.size(); ++b) {
    if ((b & both) == both) amps[b] *= phase;
  }
}

void apply_hopping_evolution(StateVector& state, QubitPair pair, std::uint64_t z_mask, double theta) {
  check_pair(state, pair);
  const std::uint64_t mj = bit(pair.j), mk = bit(pair.k);
  const double c = std::cos(theta), s = std::sin(theta);
  auto amps = state.amplitudes();
  for (std::uint64_t b = 0; b < amps.size(); ++b) {
    if ((b & mj) || !(b & mk)) continue;  // b has j=0, k=1
    const std::uint64_t partner = b ^ mj ^ mk;
    const Amplitude is{0.0, parity_sign(b & z_mask) * s};
    const Amplitude a01 = amps[b], a10 = amps[partner];
    amps[b] = c * a01 + is * a10;
    amps[partner] = is * a01 + c * a10;
  }
}

void apply_fswap(StateVector& state, QubitPair pair) {
  check_pair(state, pair);
  const std::uint64_t mj = bit(pair.j), mk = bit(pair.k);
  auto amps = state.amplitudes();
  for (std::uint64_t b = 0; b < amps.size(); ++b) {
    const bool bj = b & mj, bk = b & mk;
    if (bj && bk) {
      amps[b] = -amps[b];
    } else if (!bj && bk) {
      std::swap(amps[b], amps[b ^ mj ^ mk]);
    }
  }
}

double term_value(const FermionicTerm& term, std::uint64_t outcome) noexcept {
  const bool bj = outcome & bit(term.pair.j), bk = outcome & bit(term.pair.k);
  if (term.kind == TermKind::Onsite) return (bj && bk) ? 1.0 : 0.0;
  if (bj == bk) return 0.0;
  return (bk ? 1.0 : -1.0) * parity_sign(outcome & term.z_mask);
}

double group_value(const TermGroup& group, std::uint64_t outcome) noexcept {
  double v = 0.0;
  for (const auto& term : group.terms) v += term_value(term, outcome);
  return v;
}

void measurement_distribution(const StateVector& state, const TermGroup& group, std::vector<double>& probs) {
  const auto amps = state.amplitudes();
  probs.resize(amps.size());
  if (group.is_onsite()) {
    for (std::size_t b = 0; b < amps.size(); ++b) probs[b] = std::norm(amps[b]);
    return;
  }
  thread_local std::vector<Amplitude> scratch;
  scratch.assign(amps.begin(), amps.end());
  const double r = std::sqrt(0.5);
  for (const auto& term : group.terms) {
    const std::uint64_t mj = bit(term.pair.j), mk = bit(term.pair.k);
    for (std::uint64_t b = 0; b < scratch.size(); ++b) {
      if ((b & mj) || !(b & mk)) continue;
      const std::uint64_t partner = b ^ mj ^ mk;
      const Amplitude a01 = scratch[b], a10 = scratch[partner];
      scratch[b] = r * (a01 + a10);
      scratch[partner] = r * (a01 - a10);
    }
  }
  for (std::size_t b = 0; b < scratch.size(); ++b) probs[b] = std::norm(scratch[b]);
}

GroupMoments exact_group_moments(const StateVector& state, const TermGroup& group) {
  thread_local std::vector<double> probs;
  measurement_distribution(state, group, probs);
  GroupMoments m;
  for (std::uint64_t b = 0; b < probs.size(); ++b) {
    if (probs[b] == 0.0) continue;
    const double v = group_value(group, b);
    m.mean += probs[b] * v;
    m.second += probs[b] * v * v;
  }
  return m;
}

double exact_expectation(const StateVector& state, std::span<const TermGroup> groups, const HubbardParams& params) {
  double e = 0.0;
  for (const auto& g : groups) e += group_coefficient(g, params) * exact_group_moments(state, g).mean;
  return e;
}

double ShotBatch::mean() const noexcept {
  if (nshots == 0) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) acc += static_cast<double>(counts[i]) * values[i];
  return acc / static_cast<double>(nshots);
}

double ShotBatch::variance() const noexcept {
  if (nshots < 2) return 0.0;
  const double mu = mean();
  double acc = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = values[i] - mu;
    acc += static_cast<double>(counts[i]) * d * d;
  }
  return acc / static_cast<double>(nshots - 1);
}

double ShotBatch::second_moment() const noexcept {
  if (nshots == 0) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) acc += static_cast<double>(counts[i]) * values[i] * values[i];
  return acc / static_cast<double>(nshots);
}

std::vector<double> ShotBatch::shot_values() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(nshots));
  for (std::size_t i = 0; i < values.size(); ++i) out.insert(out.end(), static_cast<std::size_t>(counts[i]), values[i]);
  return out;
}

ShotBatch sample_group(const StateVector& state, const TermGroup& group, std::int64_t nshots, Rng& rng,
                       GroupMoments* exact) {
  if (nshots < 1) throw InputError("nshots must be >= 1");
  thread_local std::vector<double> probs;
  measurement_distribution(state, group, probs);
  if (exact != nullptr) {
    *exact = {};
    for (std::uint64_t b = 0; b < probs.size(); ++b) {
      if (probs[b] == 0.0) continue;
      const double v = group_value(group, b);
      exact->mean += probs[b] * v;
      exact->second += probs[b] * v * v;
    }
  }

  thread_local std::vector<std::uint64_t> support;
  thread_local std::vector<double> support_probs, support_values;
  support.clear();
  support_probs.clear();
  support_values.clear();
  for (std::uint64_t b = 0; b < probs.size(); ++b) {
    if (probs[b] > 0.0) {
      support.push_back(b);
      support_probs.push_back(probs[b]);
      support_values.push_back(group_value(group, b));
    }
  }
  return sample_distribution(support, support_probs, support_values, group.label, nshots, rng);
}

ShotBatch sample_distribution(std::span<const std::uint64_t> outcomes, std::span<const double> probs,
                              std::span<const double> values, GroupLabel label, std::int64_t nshots, Rng& rng) {
  if (nshots < 1) throw InputError("nshots must be >= 1");
  ShotBatch batch;
  batch.label = label;
  batch.nshots = nshots;
  auto emit = [&](std::size_t i, std::int64_t c) {
    if (c <= 0) return;
    batch.outcomes.push_back(outcomes[i]);
    batch.counts.push_back(c);
    batch.values.push_back(values[i]);
  };

  std::size_t nonzero = 0, last = 0;
  double total_prob = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] > 0.0) {
      ++nonzero;
      last = i;
      total_prob += probs[i];
    }
  }
  if (nonzero == 0) throw InputError("cannot sample a zero state");

  // A binomial draw costs roughly a dozen exponential draws.
  if (static_cast<std::size_t>(nshots) >= 12 * nonzero) {
    // Multinomial as a chain of conditional binomials over the support.
    std::int64_t left = nshots;
    double mass = total_prob;
    for (std::size_t i = 0; i < last && left > 0; ++i) {
      const double p = probs[i];
      if (!(p > 0.0)) continue;
      const double q = mass > 0.0 ? std::clamp(p / mass, 0.0, 1.0) : 1.0;
      const std::int64_t c = std::binomial_distribution<std::int64_t>(left, q)(rng);
      emit(i, c);
      left -= c;
      mass -= p;
    }
    emit(last, left);
    return batch;
  }

  // Sorted uniforms from normalised exponential spacings, merged against the CDF.
  std::exponential_distribution<double> expo(1.0);
  thread_local std::vector<double> points;
  points.resize(static_cast<std::size_t>(nshots));
  double acc = 0.0;
  for (auto& p : points) {
    acc += expo(rng);
    p = acc;
  }
  const double scale = total_prob / (acc + expo(rng));
  std::size_t next = 0;
  double cdf = 0.0;
  for (std::size_t i = 0; i <= last && next < points.size(); ++i) {
    if (!(probs[i] > 0.0)) continue;
    cdf += probs[i];
    std::int64_t c = 0;
    while (next < points.size() && (points[next] * scale < cdf || i == last)) {
      ++c;
      ++next;
    }
    emit(i, c);
  }
  return batch;
}

SectorKernel::SectorKernel(const std::vector<TermGroup>& groups, std::vector<std::uint64_t> sector_states)
    : states_(std::move(sector_states)) {
  std::unordered_map<std::uint64_t, std::uint32_t> pos;
  pos.reserve(states_.size() * 2);
  for (std::uint32_t i = 0; i < states_.size(); ++i) pos.emplace(states_[i], i);
  for (const auto& g : groups) {
    GroupTables t;
    t.label = g.label;
    t.onsite = g.is_onsite();
    t.values.resize(states_.size());
    for (std::size_t i = 0; i < states_.size(); ++i) t.values[i] = group_value(g, states_[i]);
    for (const auto& term : g.terms) {
      const std::uint64_t mj = bit(term.pair.j), mk = bit(term.pair.k);
      if (t.onsite) {
        t.doubly_offsets.push_back(static_cast<std::uint32_t>(t.doubly.size()));
        for (std::uint32_t i = 0; i < states_.size(); ++i) {
          if ((states_[i] & mj) && (states_[i] & mk)) t.doubly.push_back(i);
        }
        continue;
      }
      std::vector<Pair> pairs;
      for (std::uint32_t i = 0; i < states_.size(); ++i) {
        const std::uint64_t b = states_[i];
        if ((b & mj) || !(b & mk)) continue;
        const auto it = pos.find(b ^ mj ^ mk);
        if (it == pos.end()) throw InputError("sector is not closed under the hopping terms");
        pairs.push_back({i, it->second, parity_sign(b & term.z_mask)});
      }
      t.pairs.push_back(std::move(pairs));
    }
    t.doubly_offsets.push_back(static_cast<std::uint32_t>(t.doubly.size()));
    tables_.push_back(std::move(t));
  }
}

void SectorKernel::apply_onsite_group(StateVector& state, std::size_t group_index, double theta) const {
  const auto& t = tables_.at(group_index);
  if (!t.onsite) throw InputError("group is not the onsite group");
  // Terms act on disjoint pairs, so the group phase is e^{i theta n} with n
  // the number of doubly occupied sites.
  auto amps = state.amplitudes();
  const Amplitude phase = std::polar(1.0, theta);
  for (std::size_t term = 0; term + 1 < t.doubly_offsets.size(); ++term) {
    for (std::uint32_t k = t.doubly_offsets[term]; k < t.doubly_offsets[term + 1]; ++k) {
      amps[states_[t.doubly[k]]] *= phase;
    }
  }
}

void SectorKernel::apply_hopping_group(StateVector& state, std::size_t group_index, double theta) const {
  const auto& t = tables_.at(group_index);
  if (t.onsite) throw InputError("group is not a hopping group");
  auto amps = state.amplitudes();
  const double c = std::cos(theta), s = std::sin(theta);
  for (const auto& pairs : t.pairs) {
    for (const Pair& p : pairs) {
      Amplitude& a = amps[states_[p.lo]];
      Amplitude& b = amps[states_[p.hi]];
      const Amplitude is{0.0, p.sign * s};
      const Amplitude a01 = a, a10 = b;
      a = c * a01 + is * a10;
      b = is * a01 + c * a10;
    }
  }
}

void SectorKernel::distribution(const StateVector& state, std::size_t group_index, std::vector<double>& probs) const {
  const auto& t = tables_.at(group_index);
  const auto amps = state.amplitudes();
  probs.resize(states_.size());
  if (t.onsite) {
    for (std::size_t i = 0; i < states_.size(); ++i) probs[i] = std::norm(amps[states_[i]]);
    return;
  }
  thread_local std::vector<Amplitude> scratch;
  scratch.resize(states_.size());
  for (std::size_t i = 0; i < states_.size(); ++i) scratch[i] = amps[states_[i]];
  const double r = std::sqrt(0.5);
  for (const auto& pairs : t.pairs) {
    for (const Pair& p : pairs) {
      const Amplitude a01 = scratch[p.lo], a10 = scratch[p.hi];
      scratch[p.lo] = r * (a01 + a10);
      scratch[p.hi] = r * (a01 - a10);
    }
  }
  for (std::size_t i = 0; i < states_.size(); ++i) probs[i] = std::norm(scratch[i]);
}

GroupMoments SectorKernel::exact_moments(const StateVector& state, std::size_t group_index) const {
  thread_local std::vector<double> probs;
  distribution(state, group_index, probs);
  const auto& values = tables_[group_index].values;
  GroupMoments m;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    m.mean += probs[i] * values[i];
    m.second += probs[i] * values[i] * values[i];
  }
  return m;
}

ShotBatch SectorKernel::sample(const StateVector& state, std::size_t group_index, std::int64_t nshots, Rng& rng,
                               GroupMoments* exact) const {
  thread_local std::vector<double> probs;
  distribution(state, group_index, probs);
  const auto& t = tables_[group_index];
  if (exact != nullptr) {
    *exact = {};
    for (std::size_t i = 0; i < probs.size(); ++i) {
      exact->mean += probs[i] * t.values[i];
      exact->second += probs[i] * t.values[i] * t.values[i];
    }
  }
  return sample_distribution(states_, probs, t.values, t.label, nshots, rng);
}

}  // namespace hubvqe
