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

#include "model/hubbard.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include "model/sector.hpp"
#include "util/errors.hpp"
#include "util/format.hpp"

namespace hubvqe {

void GridSpec::validate() const {
  if (rows < 1 || cols < 1) throw InputError("grid dimensions must be positive");
  if (num_qubits() > 62) throw ResourceError("grid too large for a 64-bit register");
}

void HubbardInstance::validate() const {
  grid.validate();
  if (nlayers < 1) throw InputError("nlayers must be >= 1");
  if (nshots < 1) throw InputError("nshots must be >= 1");
  if (occupation.n_up < 0 || occupation.n_down < 0 || occupation.n_up > grid.sites() ||
      occupation.n_down > grid.sites()) {
    throw InputError("occupation exceeds grid capacity");
  }
}

std::string_view filling_name(Filling f) {
  switch (f) {
    case Filling::Half: return "half";
    case Filling::Quarter: return "quarter";
    case Filling::Custom: return "custom";
  }
  return "custom";
}

Filling parse_filling(std::string_view name) {
  if (name == "half") return Filling::Half;
  if (name == "quarter") return Filling::Quarter;
  throw InputError("unknown filling '" + std::string(name) + "'");
}

Occupation occupation_for(const GridSpec& grid, Filling filling) {
  const int mn = grid.sites();
  switch (filling) {
    case Filling::Half: return {mn / 2, mn / 2};
    case Filling::Quarter: return {std::max(1, mn / 4), std::max(1, mn / 4)};
    case Filling::Custom: break;
  }
  throw InputError("custom filling has no default occupation");
}

Filling classify_filling(const GridSpec& grid, const Occupation& occ) {
  if (occ == occupation_for(grid, Filling::Half)) return Filling::Half;
  if (occ == occupation_for(grid, Filling::Quarter)) return Filling::Quarter;
  return Filling::Custom;
}

std::string_view group_name(GroupLabel g) {
  switch (g) {
    case GroupLabel::O: return "O";
    case GroupLabel::H1: return "H1";
    case GroupLabel::V1: return "V1";
    case GroupLabel::H2: return "H2";
    case GroupLabel::V2: return "V2";
  }
  return "?";
}

int snake_qubit_index(int site_row, int site_col, Spin spin, const GridSpec& grid) {
  if (site_row < 0 || site_row >= grid.rows || site_col < 0 || site_col >= grid.cols) {
    throw InputError("site (" + std::to_string(site_row) + "," + std::to_string(site_col) + ") outside grid");
  }
  const int in_row = (site_row % 2 == 0) ? site_col : grid.cols - 1 - site_col;
  const int idx = site_row * grid.cols + in_row;
  return spin == Spin::Up ? idx : idx + grid.sites();
}

namespace {

FermionicTerm hopping_term(int a, int b) {
  FermionicTerm term;
  term.kind = TermKind::Hopping;
  term.pair = {std::min(a, b), std::max(a, b)};
  for (int z = term.pair.j + 1; z < term.pair.k; ++z) {
    term.z_string.push_back(z);
    term.z_mask |= std::uint64_t{1} << z;
  }
  return term;
}

}  // namespace

std::vector<TermGroup> build_groups(const GridSpec& grid) {
  grid.validate();
  std::map<GroupLabel, TermGroup> groups;
  for (GroupLabel l : kLayerOrder) groups[l].label = l;

  for (int r = 0; r < grid.rows; ++r) {
    for (int c = 0; c < grid.cols; ++c) {
      FermionicTerm term;
      term.kind = TermKind::Onsite;
      term.pair = {snake_qubit_index(r, c, Spin::Up, grid), snake_qubit_index(r, c, Spin::Down, grid)};
      groups[GroupLabel::O].terms.push_back(term);
    }
  }
  std::sort(groups[GroupLabel::O].terms.begin(), groups[GroupLabel::O].terms.end(),
            [](const FermionicTerm& x, const FermionicTerm& y) { return x.pair.j < y.pair.j; });

  for (Spin spin : {Spin::Up, Spin::Down}) {
    // Horizontal bonds (c, c+1): first, third, ... column gap -> H1.
    for (int c = 0; c + 1 < grid.cols; ++c) {
      auto& g = groups[c % 2 == 0 ? GroupLabel::H1 : GroupLabel::H2];
      for (int r = 0; r < grid.rows; ++r) {
        g.terms.push_back(hopping_term(snake_qubit_index(r, c, spin, grid), snake_qubit_index(r, c + 1, spin, grid)));
      }
    }
    // Vertical bonds (r, r+1): first, third, ... row gap -> V1.
    for (int r = 0; r + 1 < grid.rows; ++r) {
      auto& g = groups[r % 2 == 0 ? GroupLabel::V1 : GroupLabel::V2];
      for (int c = 0; c < grid.cols; ++c) {
        g.terms.push_back(hopping_term(snake_qubit_index(r, c, spin, grid), snake_qubit_index(r + 1, c, spin, grid)));
      }
    }
  }

  std::vector<TermGroup> out;
  for (GroupLabel l : kLayerOrder) {
    auto& g = groups[l];
    if (g.terms.empty()) continue;
    std::stable_sort(g.terms.begin(), g.terms.end(),
                     [](const FermionicTerm& x, const FermionicTerm& y) { return x.pair.j < y.pair.j; });
    out.push_back(std::move(g));
  }
  return out;
}

GateCountTable gate_count_table(const GridSpec& grid) {
  grid.validate();
  const int m = std::max(grid.rows, grid.cols);
  const int n = std::min(grid.rows, grid.cols);
  auto ceil_half = [](int x) { return (x + 1) / 2; };
  auto floor_half = [](int x) { return x / 2; };
  GateCountTable t;
  t.params_per_layer = 1 + std::min(2, m - 1) + std::min(2, n - 1);
  t.O = 2 * m * n;
  t.H1 = 2 * n * ceil_half(m - 1);
  t.H2 = 2 * n * floor_half(m - 1);
  t.V1 = 2 * m * ceil_half(n - 1);
  t.V2 = 2 * m * floor_half(n - 1);
  return t;
}

namespace {

using CacheKey = std::tuple<int, int, double, int, int>;

struct GroundCache {
  std::mutex mutex;
  std::map<CacheKey, GroundStateInfo> info;
  std::map<CacheKey, double> energy;
};

GroundCache& ground_cache() {
  static GroundCache cache;
  return cache;
}

CacheKey key_of(const HubbardInstance& inst) {
  return {inst.grid.rows, inst.grid.cols, inst.params.U, inst.occupation.n_up, inst.occupation.n_down};
}

void check_cap(const HubbardInstance& instance, int qubit_cap) {
  instance.validate();
  if (instance.grid.num_qubits() > qubit_cap) {
    throw ResourceError("instance needs " + std::to_string(instance.grid.num_qubits()) +
                        " qubits, cap is " + std::to_string(qubit_cap));
  }
}

}  // namespace

double exact_ground_energy(const HubbardInstance& instance, int qubit_cap) {
  check_cap(instance, qubit_cap);
  auto& cache = ground_cache();
  const CacheKey key = key_of(instance);
  {
    std::lock_guard lock(cache.mutex);
    if (auto it = cache.energy.find(key); it != cache.energy.end()) return it->second;
  }
  if (instance.occupation.total() == 0) return 0.0;
  const auto groups = build_groups(instance.grid);
  SectorBasis basis(instance.grid, instance.occupation);
  const auto h = sector_hamiltonian(basis, groups, instance.params);
  const double e = lowest_eigenpairs(h, 1, false).values.at(0);
  std::lock_guard lock(cache.mutex);
  cache.energy[key] = e;
  return e;
}

GroundStateInfo ground_state_info(const HubbardInstance& instance, int qubit_cap) {
  check_cap(instance, qubit_cap);
  auto& cache = ground_cache();
  const CacheKey key = key_of(instance);
  {
    std::lock_guard lock(cache.mutex);
    if (auto it = cache.info.find(key); it != cache.info.end()) return it->second;
  }
  const auto groups = build_groups(instance.grid);
  SectorBasis basis(instance.grid, instance.occupation);
  const auto h = sector_hamiltonian(basis, groups, instance.params);
  const auto eig = lowest_eigenpairs(h, 2, false);
  GroundStateInfo info;
  info.energy = eig.values.at(0);
  info.gap = eig.values.size() > 1 ? eig.values[1] - eig.values[0] : 0.0;
  std::lock_guard lock(cache.mutex);
  cache.info[key] = info;
  cache.energy[key] = info.energy;
  return info;
}

std::vector<GroundEnergyRow> load_ground_energy_cache(const std::string& path) {
  std::vector<GroundEnergyRow> rows;
  std::ifstream in(path);
  if (!in) return rows;
  std::string line;
  std::int64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1) {
      if (trim(line) != "grid,u,n_up,n_down,energy") throw ParseError("bad ground energy cache header", 1);
      continue;
    }
    if (trim(line).empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 5) throw ParseError("expected 5 columns", lineno);
    const auto dims = split(cells[0], 'x');
    if (dims.size() != 2) throw ParseError("grid must be MxN", lineno);
    GroundEnergyRow row;
    try {
      row.grid = {std::stoi(dims[0]), std::stoi(dims[1])};
      row.U = parse_real(cells[1]);
      row.occupation = {std::stoi(cells[2]), std::stoi(cells[3])};
      row.energy = parse_real(cells[4]);
    } catch (const std::exception& e) {
      throw ParseError(e.what(), lineno);
    }
    rows.push_back(row);
  }
  return rows;
}

void append_ground_energy_cache(const std::string& path, const GroundEnergyRow& row) {
  const bool fresh = !std::ifstream(path).good();
  std::ofstream out(path, std::ios::app);
  if (!out) throw IoError("cannot open " + path);
  if (fresh) out << "grid,u,n_up,n_down,energy\n";
  char energy[64];
  std::snprintf(energy, sizeof(energy), "%.12f", row.energy);
  out << row.grid.rows << 'x' << row.grid.cols << ',' << format_real(row.U) << ',' << row.occupation.n_up << ','
      << row.occupation.n_down << ',' << energy << '\n';
}

std::optional<double> lookup_ground_energy(const std::vector<GroundEnergyRow>& rows, const GridSpec& grid,
                                           double U, const Occupation& occ) {
  for (const auto& r : rows) {
    if (r.grid == grid && r.U == U && r.occupation == occ) return r.energy;
  }
  return std::nullopt;
}

namespace {

std::string u_token(double U) {
  if (U == std::floor(U) && std::abs(U) < 1e9) return std::to_string(static_cast<long long>(U));
  return format_real(U);
}

}  // namespace

std::string instance_id(const HubbardInstance& inst, std::string_view prefix) {
  std::ostringstream os;
  os << prefix << '_' << inst.grid.rows << 'x' << inst.grid.cols << "_U" << u_token(inst.params.U) << '_';
  Filling f = inst.filling;
  if (f == Filling::Custom || occupation_for(inst.grid, f) != inst.occupation) {
    f = classify_filling(inst.grid, inst.occupation);
  }
  if (f == Filling::Custom) {
    os << "occ" << inst.occupation.n_up << '-' << inst.occupation.n_down;
  } else {
    os << filling_name(f);
  }
  os << "_L" << inst.nlayers << "_S" << inst.nshots;
  return os.str();
}

HubbardInstance parse_instance_id(std::string_view id) {
  const auto parts = split(id, '_');
  if (parts.size() != 6) throw InputError("instance id must look like b1_1x2_U4_half_L2_S1000: '" + std::string(id) + "'");
  HubbardInstance inst;
  try {
    const auto dims = split(parts[1], 'x');
    if (dims.size() != 2) throw InputError("bad grid token");
    inst.grid = {std::stoi(dims[0]), std::stoi(dims[1])};
    if (parts[2].size() < 2 || parts[2][0] != 'U') throw InputError("bad U token");
    inst.params.U = parse_real(parts[2].substr(1));
    if (parts[3].rfind("occ", 0) == 0) {
      const auto occ = split(parts[3].substr(3), '-');
      if (occ.size() != 2) throw InputError("bad occupation token");
      inst.occupation = {std::stoi(occ[0]), std::stoi(occ[1])};
      inst.filling = Filling::Custom;
    } else {
      inst.filling = parse_filling(parts[3]);
      inst.occupation = occupation_for(inst.grid, inst.filling);
    }
    if (parts[4].size() < 2 || parts[4][0] != 'L' || parts[5].size() < 2 || parts[5][0] != 'S') {
      throw InputError("bad layer/shot tokens");
    }
    inst.nlayers = std::stoi(parts[4].substr(1));
    inst.nshots = std::stoi(parts[5].substr(1));
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError("cannot parse instance id '" + std::string(id) + "': " + e.what());
  }
  inst.validate();
  return inst;
}

}  // namespace hubvqe
