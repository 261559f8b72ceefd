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
#include <vector>

#include "model/hubbard.hpp"
#include "sim/statevector.hpp"

namespace hubvqe {

struct AnsatzSpec {
  GridSpec grid;
  int nlayers = 1;
  std::vector<GroupLabel> layer_group_order;  // nonempty groups, O H1 V1 H2 V2 order

  int params_per_layer() const noexcept { return static_cast<int>(layer_group_order.size()); }
  int nparams() const noexcept { return nlayers * params_per_layer(); }
};

AnsatzSpec make_ansatz_spec(const GridSpec& grid, int nlayers);

// Every entry 1/nlayers.
std::vector<double> initial_parameters(const AnsatzSpec& spec);

// Ground state of the hopping-only Hamiltonian in the instance's sector: a
// Slater determinant of the lowest single-particle orbitals per spin, phase
// fixed so the largest-magnitude amplitude is real positive.
StateVector initial_state(const HubbardInstance& instance);

// A parameter enters the circuit as exp(i theta W) with W = scale * (sum of
// the group's terms). Energy along that coordinate is a trigonometric
// polynomial of degree `degree` in (2 pi / period) * theta.
struct GeneratorSpec {
  GroupLabel label = GroupLabel::O;
  const TermGroup* group = nullptr;
  int degree = 0;
  double scale = 1.0;
  double period = 0.0;
};

class Ansatz {
 public:
  explicit Ansatz(const HubbardInstance& instance);

  const HubbardInstance& instance() const noexcept { return instance_; }
  const AnsatzSpec& spec() const noexcept { return spec_; }
  const std::vector<TermGroup>& groups() const noexcept { return groups_; }
  const StateVector& reference_state() const noexcept { return initial_; }
  int num_params() const noexcept { return spec_.nparams(); }

  const SectorKernel& kernel() const noexcept { return kernel_; }
  // Index into groups() of the generator group of parameter k.
  std::size_t group_index_for_param(int k) const;
  const TermGroup& group_for_param(int k) const;
  GeneratorSpec generator_spec(int k) const;

  // Applies the evolutions for parameters [first, last) to `state`.
  void apply_params(StateVector& state, std::span<const double> params, int first, int last) const;
  StateVector prepare(std::span<const double> params) const;
  // The circuit prefix before parameter k: theta_0..theta_{k-1} applied, the rest identity.
  StateVector prefix_state(std::span<const double> params, int k) const;

  double energy(const StateVector& state) const;
  double exact_energy(std::span<const double> params) const;

 private:
  void check_length(std::span<const double> params) const;

  HubbardInstance instance_;
  AnsatzSpec spec_;
  std::vector<TermGroup> groups_;
  std::vector<int> layer_group_index_;  // position within layer -> index into groups_
  StateVector initial_;
  SectorKernel kernel_;
};

}  // namespace hubvqe
