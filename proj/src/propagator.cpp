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

#include "adiabat/propagator.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <sstream>

namespace adiabat {

Matrix exp_minus_i(const Matrix& hermitian, double dt) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::numerical, "exp_minus_i: eigensolver did not converge");
  }
  const Matrix& v = solver.eigenvectors();
  const RealVector& e = solver.eigenvalues();
  Vector phases(e.size());
  for (Eigen::Index i = 0; i < e.size(); ++i) phases(i) = std::polar(1.0, -dt * e(i));
  return v * phases.asDiagonal() * v.adjoint();
}

UnitaryMatrix step_unitary(const Matrix& h_mid, double h, const Tolerances& tol) {
  if (!(h > 0.0)) throw Error(ErrorKind::usage, "step_unitary: step must be positive");
  return UnitaryMatrix(exp_minus_i(h_mid, h), tol.unitarity_step);
}

PropagatorPath::PropagatorPath(TimeGrid grid, std::vector<UnitaryMatrix> unitaries)
    : grid_(grid), unitaries_(std::move(unitaries)) {
  if (unitaries_.size() != grid_.size()) {
    throw Error(ErrorKind::usage, "propagator path: one unitary per grid point required");
  }
  for (const auto& u : unitaries_) {
    if (u.dimension() != unitaries_.front().dimension()) {
      throw Error(ErrorKind::usage, "propagator path: inconsistent dimensions");
    }
    max_defect_ = std::max(max_defect_, u.defect());
  }
}

StateTrajectory::StateTrajectory(TimeGrid grid, std::vector<QuantumState> states)
    : grid_(grid), states_(std::move(states)) {
  if (states_.size() != grid_.size()) {
    throw Error(ErrorKind::usage, "state trajectory: one state per grid point required");
  }
}

PropagatorPath propagate(const HamiltonianModel& model, const TimeGrid& grid,
                         double t_offset, const UnitaryMatrix& initial,
                         const Tolerances& tol) {
  if (initial.dimension() != model.dimension()) {
    throw Error(ErrorKind::usage, "propagate: initial unitary dimension mismatch");
  }
  const double h = grid.step();
  std::vector<UnitaryMatrix> us;
  us.reserve(grid.size());
  us.push_back(initial);
  for (std::size_t k = 0; k < grid.steps(); ++k) {
    const double t_mid = t_offset + grid.time(k) + 0.5 * h;
    const UnitaryMatrix step = step_unitary(model.evaluate(t_mid), h, tol);
    Matrix next = step.matrix() * us.back().matrix();
    const double defect = unitarity_defect(next);
    if (!(defect <= tol.unitarity_accumulated)) {
      std::ostringstream os;
      os << "propagate: accumulated unitarity defect " << defect << " at step " << k + 1;
      throw Error(ErrorKind::numerical, os.str());
    }
    us.emplace_back(std::move(next), tol.unitarity_accumulated);
  }
  return PropagatorPath(grid, std::move(us));
}

PropagatorPath propagate(const HamiltonianModel& model, const TimeGrid& grid,
                         const Tolerances& tol) {
  return propagate(model, grid, 0.0, UnitaryMatrix::identity(model.dimension()), tol);
}

StateTrajectory evolve_state(const PropagatorPath& path, const QuantumState& initial) {
  if (initial.dimension() != path.dimension()) {
    throw Error(ErrorKind::usage, "evolve_state: state dimension mismatch");
  }
  std::vector<QuantumState> states;
  states.reserve(path.unitaries().size());
  for (const auto& u : path.unitaries()) states.push_back(u.apply(initial));
  return StateTrajectory(path.grid(), std::move(states));
}

PropagatorPath hermitian_conjugate_path(const PropagatorPath& path) {
  std::vector<UnitaryMatrix> us;
  us.reserve(path.unitaries().size());
  for (const auto& u : path.unitaries()) us.push_back(u.adjoint());
  return PropagatorPath(path.grid(), std::move(us));
}

}  // namespace adiabat
