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

#include "model/sector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "util/errors.hpp"

namespace hubvqe {

SectorBasis::SectorBasis(const GridSpec& grid, const Occupation& occ) : grid_(grid) {
  const int sites = grid.sites();
  const int q = grid.num_qubits();
  if (occ.n_up < 0 || occ.n_down < 0 || occ.n_up > sites || occ.n_down > sites) {
    throw InputError("occupation does not fit the grid");
  }
  const std::uint64_t up_mask = (std::uint64_t{1} << sites) - 1;
  const std::uint64_t full = std::uint64_t{1} << q;
  lookup_.assign(full, -1);
  for (std::uint64_t b = 0; b < full; ++b) {
    if (std::popcount(b & up_mask) == occ.n_up && std::popcount(b >> sites) == occ.n_down) {
      lookup_[b] = static_cast<std::int32_t>(states_.size());
      states_.push_back(b);
    }
  }
}

std::int64_t SectorBasis::index_of(std::uint64_t basis) const {
  if (basis >= lookup_.size()) return -1;
  return lookup_[basis];
}

Eigen::SparseMatrix<double> sector_hamiltonian(const SectorBasis& basis, std::span<const TermGroup> groups,
                                               const HubbardParams& params, bool include_onsite) {
  using Triplet = Eigen::Triplet<double>;
  std::vector<Triplet> entries;
  const std::size_t dim = basis.dim();
  for (std::size_t col = 0; col < dim; ++col) {
    const std::uint64_t b = basis.state(col);
    double diag = 0.0;
    for (const auto& g : groups) {
      for (const auto& term : g.terms) {
        const std::uint64_t mj = std::uint64_t{1} << term.pair.j;
        const std::uint64_t mk = std::uint64_t{1} << term.pair.k;
        if (term.kind == TermKind::Onsite) {
          if (include_onsite && (b & mj) && (b & mk)) diag += params.U;
          continue;
        }
        if (((b & mj) != 0) == ((b & mk) != 0)) continue;
        const std::uint64_t partner = b ^ mj ^ mk;
        const double sign = (std::popcount(b & term.z_mask) & 1) ? -1.0 : 1.0;
        const std::int64_t row = basis.index_of(partner);
        entries.emplace_back(static_cast<int>(row), static_cast<int>(col), params.t * sign);
      }
    }
    if (diag != 0.0) entries.emplace_back(static_cast<int>(col), static_cast<int>(col), diag);
  }
  Eigen::SparseMatrix<double> h(static_cast<int>(dim), static_cast<int>(dim));
  h.setFromTriplets(entries.begin(), entries.end());
  return h;
}

namespace {

struct LanczosResult {
  double value = 0.0;
  Eigen::VectorXd vector;
};

// Lowest eigenpair of h restricted to the orthogonal complement of `deflate`.
LanczosResult lanczos_lowest(const Eigen::SparseMatrix<double>& h, const std::vector<Eigen::VectorXd>& deflate,
                             std::uint64_t seed) {
  const Eigen::Index n = h.rows();
  const int max_steps = static_cast<int>(std::min<Eigen::Index>(n, 500));
  auto project = [&](Eigen::VectorXd& v) {
    for (const auto& d : deflate) v -= d.dot(v) * d;
  };

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = uni(rng);
  project(v);
  v.normalize();

  std::vector<Eigen::VectorXd> basis;
  std::vector<double> alpha, beta;
  double previous = std::numeric_limits<double>::infinity();
  LanczosResult best;
  for (int step = 0; step < max_steps; ++step) {
    basis.push_back(v);
    Eigen::VectorXd w = h * v;
    project(w);
    const double a = v.dot(w);
    alpha.push_back(a);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& u : basis) w -= u.dot(w) * u;
      project(w);
    }
    const double b = w.norm();

    const int k = static_cast<int>(alpha.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i) {
      t(i, i) = alpha[i];
      if (i + 1 < k) t(i, i + 1) = t(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    const double lowest = es.eigenvalues()[0];
    const double residual = std::abs(b * es.eigenvectors()(k - 1, 0));
    const bool done = b < 1e-12 || step + 1 == max_steps ||
                      (residual < 1e-10 && std::abs(lowest - previous) < 1e-13);
    previous = lowest;
    if (done) {
      Eigen::VectorXd y = es.eigenvectors().col(0);
      Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
      for (int i = 0; i < k; ++i) x += y[i] * basis[i];
      project(x);
      x.normalize();
      best.value = lowest;
      best.vector = std::move(x);
      break;
    }
    beta.push_back(b);
    v = w / b;
  }
  return best;
}

}  // namespace

LowestEigen lowest_eigenpairs(const Eigen::SparseMatrix<double>& h, int count, bool want_vector) {
  LowestEigen out;
  const std::size_t dim = static_cast<std::size_t>(h.rows());
  if (dim == 0) throw InputError("empty sector");
  if (dim <= kDenseSectorLimit) {
    Eigen::MatrixXd dense = Eigen::MatrixXd(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
    for (int i = 0; i < count && i < static_cast<int>(dim); ++i) out.values.push_back(es.eigenvalues()[i]);
    if (want_vector) {
      Eigen::VectorXd g = es.eigenvectors().col(0);
      out.ground_vector.assign(g.data(), g.data() + g.size());
    }
    return out;
  }
  std::vector<Eigen::VectorXd> found;
  for (int i = 0; i < count && i < static_cast<int>(dim); ++i) {
    LanczosResult r = lanczos_lowest(h, found, 0x5eed + static_cast<std::uint64_t>(i));
    out.values.push_back(r.value);
    found.push_back(std::move(r.vector));
  }
  std::sort(out.values.begin(), out.values.end());
  if (want_vector) out.ground_vector.assign(found[0].data(), found[0].data() + found[0].size());
  return out;
}

}  // namespace hubvqe
