// Copyright 2026 The adiabat Authors
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

#include "adiabat/core.hpp"

#include <vector>

namespace adiabat {

/// Instantaneous eigen-decomposition of H(t). Column j of `eigenvectors`
/// belongs to `eigenvalues(j)`.
struct SpectralFrame {
  double t = 0.0;
  RealVector eigenvalues;
  Matrix eigenvectors;
  double min_gap = 0.0;

  std::size_t levels() const noexcept { return static_cast<std::size_t>(eigenvalues.size()); }
  Vector vector(std::size_t n) const { return eigenvectors.col(static_cast<Eigen::Index>(n)); }
  double value(std::size_t n) const { return eigenvalues(static_cast<Eigen::Index>(n)); }
};

enum class Gauge {
  parallel_transport,  // <E_m(t_k)|E_m(t_k+1)> real positive
  supplied,            // phases fixed by the caller (closed forms, transported duals)
};

/// Gauge-continuous eigen-decompositions along a grid. Level labels are fixed
/// by ascending eigenvalue order at t = 0 and then followed by overlap, so the
/// eigenvalues of later frames need not be sorted if levels cross.
class SpectralPath {
 public:
  SpectralPath(TimeGrid grid, std::vector<SpectralFrame> frames, Gauge gauge);

  const TimeGrid& grid() const noexcept { return grid_; }
  const std::vector<SpectralFrame>& frames() const noexcept { return frames_; }
  const SpectralFrame& frame(std::size_t k) const { return frames_.at(k); }
  std::size_t levels() const noexcept { return frames_.front().levels(); }
  Gauge gauge() const noexcept { return gauge_; }

  Vector eigenvector(std::size_t n, std::size_t k) const { return frame(k).vector(n); }
  double eigenvalue(std::size_t n, std::size_t k) const { return frame(k).value(n); }

 private:
  TimeGrid grid_;
  std::vector<SpectralFrame> frames_;
  Gauge gauge_;
};

/// Ascending eigenvalues; each eigenvector has its largest-modulus component
/// made real positive. Throws a degeneracy error if the smallest gap is below
/// tol.degeneracy.
SpectralFrame decompose(const Matrix& hermitian, double t, const Tolerances& tol = {});

/// Decompose H(t_k) on every grid point, pair levels frame to frame by maximal
/// overlap and fix phases by discrete parallel transport.
SpectralPath track(const HamiltonianModel& model, const TimeGrid& grid, const Tolerances& tol = {});

/// Re-seed frame 0 to the largest-component gauge, then re-apply parallel
/// transport to every later frame. Level labels are kept.
SpectralPath realign_parallel_transport(const SpectralPath& path);

/// d|E_n>/dt at t_k in the path's gauge: centered difference in the interior,
/// one-sided second-order stencils at the two endpoints.
Vector eigen_derivative(const SpectralPath& path, std::size_t level, std::size_t k);

/// <E_m|dE_n/dt> from the finite-difference eigenvector derivative.
Complex coupling_via_derivative(const SpectralPath& path, std::size_t m, std::size_t n,
                                std::size_t k);

/// <E_m|dH/dt|E_n> / (E_n - E_m), which equals <E_m|dE_n/dt> for m != n.
Complex coupling_via_hdot(const HamiltonianModel& model, const SpectralPath& path,
                          std::size_t m, std::size_t n, std::size_t k,
                          const Tolerances& tol = {});

/// V^dag dH/dt V at t_k, V the frame's eigenvectors: entry (m, n) is
/// <E_m|dH/dt|E_n>.
Matrix hdot_in_eigenbasis(const HamiltonianModel& model, const SpectralPath& path, std::size_t k);

}  // namespace adiabat
