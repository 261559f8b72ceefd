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

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "model/hubbard.hpp"
#include "util/rng.hpp"

namespace hubvqe {

using Amplitude = std::complex<double>;

// Dense register of 2^q amplitudes; bit i of a basis index is qubit i.
class StateVector {
 public:
  explicit StateVector(int qubit_count = 0);
  static StateVector basis_state(int qubit_count, std::uint64_t index);

  int qubit_count() const noexcept { return qubits_; }
  std::size_t size() const noexcept { return amps_.size(); }
  std::span<Amplitude> amplitudes() noexcept { return amps_; }
  std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
  Amplitude& operator[](std::size_t i) { return amps_[i]; }
  const Amplitude& operator[](std::size_t i) const { return amps_[i]; }

  double norm() const;

 private:
  int qubits_ = 0;
  std::vector<Amplitude> amps_;
};

// Multiplies every amplitude with bits j = k = 1 by e^{i theta}.
void apply_onsite_phase(StateVector& state, QubitPair pair, double theta);

// exp(i theta/2 (X_j X_k + Y_j Y_k) Z_mask): on each (01, 10) pair applies
// [[cos, i s sin], [i s sin, cos]] with s the parity of the masked bits.
void apply_hopping_evolution(StateVector& state, QubitPair pair, std::uint64_t z_mask, double theta);

// Fermionic swap of two qubits: exchanges |01> and |10>, negates |11>.
void apply_fswap(StateVector& state, QubitPair pair);

// Value of one term on a basis outcome measured after the group rotation.
double term_value(const FermionicTerm& term, std::uint64_t outcome) noexcept;
// Sum of term values; the shot value of the whole group.
double group_value(const TermGroup& group, std::uint64_t outcome) noexcept;

// Outcome probabilities after rotating each hopping pair onto (|01> +- |10>)/sqrt2.
// The onsite group is measured in the computational basis.
void measurement_distribution(const StateVector& state, const TermGroup& group, std::vector<double>& probs);

struct GroupMoments {
  double mean = 0.0;
  double second = 0.0;
  double variance() const noexcept { return second - mean * mean; }
};

// Exact first and second moments of the group observable (sum of its terms).
GroupMoments exact_group_moments(const StateVector& state, const TermGroup& group);

// Coefficient multiplying a group in H: U for the onsite group, t otherwise.
inline double group_coefficient(const TermGroup& group, const HubbardParams& params) noexcept {
  return group.is_onsite() ? params.U : params.t;
}

double exact_expectation(const StateVector& state, std::span<const TermGroup> groups, const HubbardParams& params);

// Grouped measurement record, stored as distinct outcomes with multiplicities.
struct ShotBatch {
  GroupLabel label = GroupLabel::O;
  std::int64_t nshots = 0;
  std::vector<std::uint64_t> outcomes;
  std::vector<std::int64_t> counts;
  std::vector<double> values;  // group value of each distinct outcome

  double mean() const noexcept;
  // Unbiased per-shot sample variance; 0 for a single shot.
  double variance() const noexcept;
  double second_moment() const noexcept;
  // One entry per shot, in outcome order.
  std::vector<double> shot_values() const;
};

// Draws nshots outcomes from the exact multinomial of measurement_distribution.
// When `exact` is given it receives the exact moments of the same distribution.
ShotBatch sample_group(const StateVector& state, const TermGroup& group, std::int64_t nshots, Rng& rng,
                       GroupMoments* exact = nullptr);

// Draws nshots outcomes from `probs` (indexed like `outcomes`) with the exact
// multinomial law; `values[i]` is the group value of outcome i.
ShotBatch sample_distribution(std::span<const std::uint64_t> outcomes, std::span<const double> probs,
                              std::span<const double> values, GroupLabel label, std::int64_t nshots, Rng& rng);

// Gate and measurement kernels restricted to one particle-number sector. The
// state vector keeps its full size; amplitudes outside the sector must be zero
// and stay zero because every term conserves both spin numbers.
class SectorKernel {
 public:
  SectorKernel(const std::vector<TermGroup>& groups, std::vector<std::uint64_t> sector_states);

  std::size_t dim() const noexcept { return states_.size(); }
  const std::vector<std::uint64_t>& states() const noexcept { return states_; }

  void apply_onsite_group(StateVector& state, std::size_t group_index, double theta) const;
  // Every hopping term of the group at the apply_hopping_evolution angle `theta`.
  void apply_hopping_group(StateVector& state, std::size_t group_index, double theta) const;

  // Post-rotation outcome probabilities in sector order.
  void distribution(const StateVector& state, std::size_t group_index, std::vector<double>& probs) const;
  GroupMoments exact_moments(const StateVector& state, std::size_t group_index) const;
  ShotBatch sample(const StateVector& state, std::size_t group_index, std::int64_t nshots, Rng& rng,
                   GroupMoments* exact = nullptr) const;

 private:
  struct Pair {
    std::uint32_t lo, hi;  // sector positions of the j=0,k=1 and j=1,k=0 states
    double sign;           // Z-string parity
  };
  struct GroupTables {
    GroupLabel label = GroupLabel::O;
    bool onsite = false;
    std::vector<std::vector<Pair>> pairs;  // per hopping term
    std::vector<std::uint32_t> doubly;     // onsite: positions with any pair doubly occupied, per term flattened
    std::vector<std::uint32_t> doubly_offsets;
    std::vector<double> values;            // group value per sector position
  };
  std::vector<std::uint64_t> states_;
  std::vector<GroupTables> tables_;
};

}  // namespace hubvqe
