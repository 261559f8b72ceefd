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

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Sparse>

#include "model/hubbard.hpp"

namespace hubvqe {

// Computational basis states with fixed spin-up and spin-down particle numbers.
class SectorBasis {
 public:
  SectorBasis(const GridSpec& grid, const Occupation& occ);

  std::size_t dim() const noexcept { return states_.size(); }
  std::uint64_t state(std::size_t i) const { return states_[i]; }
  const std::vector<std::uint64_t>& states() const noexcept { return states_; }
  // -1 when `basis` lies outside the sector.
  std::int64_t index_of(std::uint64_t basis) const;

 private:
  GridSpec grid_;
  std::vector<std::uint64_t> states_;
  std::vector<std::int32_t> lookup_;
};

// Real symmetric H restricted to the sector, assembled from the term groups.
Eigen::SparseMatrix<double> sector_hamiltonian(const SectorBasis& basis, std::span<const TermGroup> groups,
                                               const HubbardParams& params, bool include_onsite = true);

struct LowestEigen {
  std::vector<double> values;        // ascending, up to the number requested
  std::vector<double> ground_vector; // normalised, in sector index order
};

// Dense diagonalisation for small sectors, Lanczos with full
// reorthogonalisation (plus deflation for the second level) above.
LowestEigen lowest_eigenpairs(const Eigen::SparseMatrix<double>& h, int count, bool want_vector);

inline constexpr std::size_t kDenseSectorLimit = 1200;

}  // namespace hubvqe
