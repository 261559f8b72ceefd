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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hubvqe {

enum class Spin { Up, Down };

// m x n rectangular lattice with open boundaries. Qubits are ordered by spin
// first (up block, then down block); inside a block sites follow a snake
// through the rows starting top-left.
struct GridSpec {
  int rows = 1;
  int cols = 1;

  int sites() const noexcept { return rows * cols; }
  int num_qubits() const noexcept { return 2 * rows * cols; }
  void validate() const;
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct HubbardParams {
  double t = -1.0;
  double U = 4.0;
};

struct Occupation {
  int n_up = 0;
  int n_down = 0;
  int total() const noexcept { return n_up + n_down; }
  friend bool operator==(const Occupation&, const Occupation&) = default;
};

enum class Filling { Half, Quarter, Custom };

std::string_view filling_name(Filling f);
Filling parse_filling(std::string_view name);
// half: floor(mn/2) per spin; quarter: max(1, floor(mn/4)) per spin.
Occupation occupation_for(const GridSpec& grid, Filling filling);
// Recognises the named fillings; anything else is Custom.
Filling classify_filling(const GridSpec& grid, const Occupation& occ);

struct QubitPair {
  int j = 0;
  int k = 0;
  friend bool operator==(const QubitPair&, const QubitPair&) = default;
};

enum class TermKind { Hopping, Onsite };

// One JW-mapped term: either (X_jX_k + Y_jY_k)/2 * Z_{string} or |11><11|_{jk}.
struct FermionicTerm {
  TermKind kind = TermKind::Hopping;
  QubitPair pair;
  std::vector<int> z_string;  // qubits strictly between j and k, ascending
  std::uint64_t z_mask = 0;   // same set as a bitmask
};

enum class GroupLabel { O, H1, V1, H2, V2 };
inline constexpr std::array<GroupLabel, 5> kLayerOrder = {GroupLabel::O, GroupLabel::H1, GroupLabel::V1,
                                                          GroupLabel::H2, GroupLabel::V2};
std::string_view group_name(GroupLabel g);

struct TermGroup {
  GroupLabel label = GroupLabel::O;
  std::vector<FermionicTerm> terms;

  bool is_onsite() const noexcept { return label == GroupLabel::O; }
};

struct HubbardInstance {
  GridSpec grid;
  HubbardParams params;
  Occupation occupation;
  int nlayers = 1;
  int nshots = 1000;
  Filling filling = Filling::Custom;

  void validate() const;
};

int snake_qubit_index(int site_row, int site_col, Spin spin, const GridSpec& grid);

// Nonempty groups in layer order O, H1, V1, H2, V2.
std::vector<TermGroup> build_groups(const GridSpec& grid);

// Closed forms of the per-layer gate table (grid oriented so that m >= n).
struct GateCountTable {
  int params_per_layer = 0;
  int O = 0, H1 = 0, H2 = 0, V1 = 0, V2 = 0;
};
GateCountTable gate_count_table(const GridSpec& grid);

inline constexpr int kDefaultQubitCap = 18;

// Lowest eigenvalue of H in the (n_up, n_down) sector. Results are memoised
// process-wide.
double exact_ground_energy(const HubbardInstance& instance, int qubit_cap = kDefaultQubitCap);

struct GroundStateInfo {
  double energy = 0.0;
  double gap = 0.0;  // second-lowest minus lowest eigenvalue in the sector; 0 if dim 1
};
// Lowest two sector eigenvalues; used to flag degenerate instances.
GroundStateInfo ground_state_info(const HubbardInstance& instance, int qubit_cap = kDefaultQubitCap);

// Sidecar cache `ground_energies.csv` (grid,u,n_up,n_down,energy).
struct GroundEnergyRow {
  GridSpec grid;
  double U = 0.0;
  Occupation occupation;
  double energy = 0.0;
};
std::vector<GroundEnergyRow> load_ground_energy_cache(const std::string& path);
void append_ground_energy_cache(const std::string& path, const GroundEnergyRow& row);
std::optional<double> lookup_ground_energy(const std::vector<GroundEnergyRow>& rows, const GridSpec& grid,
                                           double U, const Occupation& occ);

// Stable identifiers `{prefix}_{m}x{n}_U{u}_{filling}_L{l}_S{s}`.
std::string instance_id(const HubbardInstance& instance, std::string_view prefix);
HubbardInstance parse_instance_id(std::string_view id);

}  // namespace hubvqe
