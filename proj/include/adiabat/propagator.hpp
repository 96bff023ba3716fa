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

/// exp(-i dt H) for Hermitian H via eigendecomposition. dt may be negative.
Matrix exp_minus_i(const Matrix& hermitian, double dt);

/// Single midpoint-exponential factor exp(-i h H_mid), h > 0.
UnitaryMatrix step_unitary(const Matrix& h_mid, double h, const Tolerances& tol = {});

/// Time-ordered evolution operator sampled on a grid, U(t_0) = I.
class PropagatorPath {
 public:
  PropagatorPath(TimeGrid grid, std::vector<UnitaryMatrix> unitaries);

  const TimeGrid& grid() const noexcept { return grid_; }
  const std::vector<UnitaryMatrix>& unitaries() const noexcept { return unitaries_; }
  const UnitaryMatrix& at(std::size_t k) const { return unitaries_.at(k); }
  const UnitaryMatrix& final() const { return unitaries_.back(); }
  std::size_t dimension() const noexcept { return unitaries_.front().dimension(); }
  double max_unitarity_defect() const noexcept { return max_defect_; }

 private:
  TimeGrid grid_;
  std::vector<UnitaryMatrix> unitaries_;
  double max_defect_ = 0.0;
};

class StateTrajectory {
 public:
  StateTrajectory(TimeGrid grid, std::vector<QuantumState> states);

  const TimeGrid& grid() const noexcept { return grid_; }
  const std::vector<QuantumState>& states() const noexcept { return states_; }
  const QuantumState& at(std::size_t k) const { return states_.at(k); }

 private:
  TimeGrid grid_;
  std::vector<QuantumState> states_;
};

/// U(t_{k+1}) = exp(-i h H(t_k + h/2)) U(t_k), starting from U(t_0) = I.
PropagatorPath propagate(const HamiltonianModel& model, const TimeGrid& grid,
                         const Tolerances& tol = {});

/// Restarted evolution: the model is sampled at t_offset + t_k and the path
/// starts from `initial` instead of the identity.
PropagatorPath propagate(const HamiltonianModel& model, const TimeGrid& grid,
                         double t_offset, const UnitaryMatrix& initial,
                         const Tolerances& tol = {});

StateTrajectory evolve_state(const PropagatorPath& path, const QuantumState& initial);

/// Replaces every U(t_k) by U(t_k)^dag. For the dual system H^b = -U^dag H U
/// this is its exact propagator.
PropagatorPath hermitian_conjugate_path(const PropagatorPath& path);

}  // namespace adiabat
