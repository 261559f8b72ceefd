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

#include "ansatz/ansatz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "model/sector.hpp"
#include "util/errors.hpp"

namespace hubvqe {

AnsatzSpec make_ansatz_spec(const GridSpec& grid, int nlayers) {
  if (nlayers < 1) throw InputError("nlayers must be >= 1");
  AnsatzSpec spec;
  spec.grid = grid;
  spec.nlayers = nlayers;
  for (const auto& g : build_groups(grid)) spec.layer_group_order.push_back(g.label);
  return spec;
}

std::vector<double> initial_parameters(const AnsatzSpec& spec) {
  return std::vector<double>(static_cast<std::size_t>(spec.nparams()), 1.0 / spec.nlayers);
}

namespace {

// Columns are orbitals sorted by energy; Eigen's solver is deterministic.
Eigen::MatrixXd single_particle_orbitals(const GridSpec& grid, const HubbardParams& params) {
  const int mn = grid.sites();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(mn, mn);
  for (const auto& g : build_groups(grid)) {
    if (g.is_onsite()) continue;
    for (const auto& term : g.terms) {
      if (term.pair.k >= mn) continue;  // spin-down copy of the same bond
      h(term.pair.j, term.pair.k) = params.t;
      h(term.pair.k, term.pair.j) = params.t;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  return solver.eigenvectors();
}

double slater_amplitude(const Eigen::MatrixXd& orbitals, std::uint64_t occupied_bits, int count) {
  if (count == 0) return 1.0;
  Eigen::MatrixXd sub(count, count);
  int row = 0;
  for (int site = 0; occupied_bits != 0; ++site, occupied_bits >>= 1) {
    if (occupied_bits & 1) {
      sub.row(row++) = orbitals.row(site).head(count);
    }
  }
  return sub.determinant();
}

}  // namespace

StateVector initial_state(const HubbardInstance& instance) {
  instance.validate();
  const int mn = instance.grid.sites();
  SectorBasis basis(instance.grid, instance.occupation);
  const Eigen::MatrixXd orbitals = single_particle_orbitals(instance.grid, instance.params);
  const std::uint64_t block = (std::uint64_t{1} << mn) - 1;

  StateVector state(instance.grid.num_qubits());
  state[0] = 0.0;
  double norm2 = 0.0;
  std::uint64_t argmax = basis.state(0);
  double best = -1.0;
  for (std::uint64_t b : basis.states()) {
    const double a = slater_amplitude(orbitals, b & block, instance.occupation.n_up) *
                     slater_amplitude(orbitals, (b >> mn) & block, instance.occupation.n_down);
    state[b] = a;
    norm2 += a * a;
    if (std::abs(a) > best + 1e-12) {
      best = std::abs(a);
      argmax = b;
    }
  }
  const double sign = state[argmax].real() < 0 ? -1.0 : 1.0;
  const double inv = sign / std::sqrt(norm2);
  for (auto& a : state.amplitudes()) a *= inv;
  return state;
}

Ansatz::Ansatz(const HubbardInstance& instance)
    : instance_(instance),
      spec_(make_ansatz_spec(instance.grid, instance.nlayers)),
      groups_(build_groups(instance.grid)),
      initial_(initial_state(instance)),
      kernel_(groups_, SectorBasis(instance.grid, instance.occupation).states()) {
  for (GroupLabel label : spec_.layer_group_order) {
    const auto it = std::find_if(groups_.begin(), groups_.end(), [&](const TermGroup& g) { return g.label == label; });
    layer_group_index_.push_back(static_cast<int>(it - groups_.begin()));
  }
}

std::size_t Ansatz::group_index_for_param(int k) const {
  if (k < 0 || k >= num_params()) throw InputError("parameter index out of range");
  return static_cast<std::size_t>(layer_group_index_[k % spec_.params_per_layer()]);
}

const TermGroup& Ansatz::group_for_param(int k) const { return groups_[group_index_for_param(k)]; }

GeneratorSpec Ansatz::generator_spec(int k) const {
  const TermGroup& g = group_for_param(k);
  GeneratorSpec gen;
  gen.label = g.label;
  gen.group = &g;
  if (g.is_onsite()) {
    gen.degree = static_cast<int>(g.terms.size());
    gen.scale = 1.0;
    gen.period = 2.0 * std::numbers::pi;
  } else {
    // Each hopping gate is exp(-i theta/2 P) with P of spectrum {-1, 0, 1}.
    gen.degree = 2 * static_cast<int>(g.terms.size());
    gen.scale = -0.5;
    gen.period = 4.0 * std::numbers::pi;
  }
  return gen;
}

void Ansatz::check_length(std::span<const double> params) const {
  if (static_cast<int>(params.size()) != num_params()) {
    throw InputError("expected " + std::to_string(num_params()) + " parameters, got " + std::to_string(params.size()));
  }
}

void Ansatz::apply_params(StateVector& state, std::span<const double> params, int first, int last) const {
  check_length(params);
  for (int k = std::max(first, 0); k < std::min(last, num_params()); ++k) {
    const double theta = params[k];
    if (theta == 0.0) continue;
    const std::size_t gi = group_index_for_param(k);
    if (groups_[gi].is_onsite()) {
      kernel_.apply_onsite_group(state, gi, theta);
    } else {
      kernel_.apply_hopping_group(state, gi, -0.5 * theta);
    }
  }
}

StateVector Ansatz::prepare(std::span<const double> params) const {
  StateVector state = initial_;
  apply_params(state, params, 0, num_params());
  return state;
}

StateVector Ansatz::prefix_state(std::span<const double> params, int k) const {
  if (k < 0 || k > num_params()) throw InputError("prefix index out of range");
  StateVector state = initial_;
  apply_params(state, params, 0, k);
  return state;
}

double Ansatz::energy(const StateVector& state) const {
  double e = 0.0;
  for (std::size_t gi = 0; gi < groups_.size(); ++gi) {
    e += group_coefficient(groups_[gi], instance_.params) * kernel_.exact_moments(state, gi).mean;
  }
  return e;
}

double Ansatz::exact_energy(std::span<const double> params) const { return energy(prepare(params)); }

}  // namespace hubvqe
