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

#include "adiabat/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace adiabat {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::usage: return "usage";
    case ErrorKind::numerical: return "numerical";
    case ErrorKind::degeneracy: return "degeneracy";
    case ErrorKind::tracking: return "tracking";
    case ErrorKind::gauge: return "gauge";
    case ErrorKind::verification: return "verification";
  }
  return "unknown";
}

const char* to_string(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::analytic_parametric: return "analytic-parametric";
    case ModelKind::dual_wrapper: return "dual-wrapper";
    case ModelKind::sampled_table: return "sampled-table";
  }
  return "unknown";
}

TimeGrid::TimeGrid(double t_end, std::size_t steps) : t_end_(t_end), steps_(steps) {
  if (!std::isfinite(t_end) || t_end <= 0.0) {
    throw Error(ErrorKind::usage, "time grid: t_end must be finite and positive");
  }
  if (steps < 2) {
    throw Error(ErrorKind::usage, "time grid: at least 2 steps are required");
  }
}

std::size_t TimeGrid::nearest_index(double t) const noexcept {
  const double x = t / step();
  if (!(x > 0.0)) return 0;
  const auto k = static_cast<std::size_t>(std::llround(x));
  return std::min(k, steps_);
}

QuantumState::QuantumState(Vector amplitudes, const Tolerances& tol)
    : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) {
    throw Error(ErrorKind::usage, "quantum state: empty amplitude vector");
  }
  const double deviation = std::abs(amplitudes_.norm() - 1.0);
  if (!(deviation <= tol.state_norm)) {
    std::ostringstream os;
    os << "quantum state: norm deviates from 1 by " << deviation;
    throw Error(ErrorKind::numerical, os.str());
  }
}

QuantumState QuantumState::normalized(const Vector& v, const Tolerances& tol) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw Error(ErrorKind::numerical, "quantum state: cannot normalize a zero or non-finite vector");
  }
  QuantumState s(v / n, Unchecked{});
  if (std::abs(s.amplitudes_.norm() - 1.0) > tol.normalize_target) {
    throw Error(ErrorKind::numerical, "quantum state: normalization failed");
  }
  return s;
}

QuantumState QuantumState::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw Error(ErrorKind::usage, "quantum state: basis index out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return QuantumState(std::move(v), Unchecked{});
}

QuantumState QuantumState::with_phase(double phi) const {
  return QuantumState(amplitudes_ * std::polar(1.0, phi), Unchecked{});
}

UnitaryMatrix::UnitaryMatrix(Matrix entries, double tolerance)
    : entries_(std::move(entries)), defect_(0.0) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw Error(ErrorKind::usage, "unitary matrix: must be square and non-empty");
  }
  defect_ = unitarity_defect(entries_);
  if (!(defect_ <= tolerance)) {
    std::ostringstream os;
    os << "unitary matrix: defect " << defect_ << " exceeds tolerance " << tolerance;
    throw Error(ErrorKind::numerical, os.str());
  }
}

UnitaryMatrix UnitaryMatrix::identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return UnitaryMatrix(Matrix::Identity(n, n), 0.0, true);
}

UnitaryMatrix UnitaryMatrix::adjoint() const {
  return UnitaryMatrix(entries_.adjoint(), defect_, true);
}

QuantumState UnitaryMatrix::apply(const QuantumState& psi) const {
  if (psi.dimension() != dimension()) {
    throw Error(ErrorKind::usage, "unitary matrix: state dimension mismatch");
  }
  return QuantumState(entries_ * psi.amplitudes());
}

HamiltonianModel::HamiltonianModel(std::size_t dimension, ModelKind kind, Generator evaluate,
                                   Generator derivative, Tolerances tol)
    : dimension_(dimension),
      kind_(kind),
      evaluate_(std::move(evaluate)),
      derivative_(std::move(derivative)),
      tol_(tol) {
  if (dimension_ < 2) throw Error(ErrorKind::usage, "hamiltonian model: dimension must be >= 2");
  if (!evaluate_) throw Error(ErrorKind::usage, "hamiltonian model: missing generator");
}

Matrix HamiltonianModel::evaluate(double t) const {
  Matrix h = evaluate_(t);
  const auto n = static_cast<Eigen::Index>(dimension_);
  if (h.rows() != n || h.cols() != n) {
    throw Error(ErrorKind::usage, "hamiltonian model: generator returned wrong shape");
  }
  return validate_hermitian(h, tol_);
}

double HamiltonianModel::fd_step(double grid_step) const noexcept {
  return std::max(tol_.fd_min_step, tol_.fd_grid_fraction * grid_step);
}

Matrix HamiltonianModel::derivative(double t, double grid_step) const {
  if (derivative_) {
    return validate_hermitian(derivative_(t), tol_);
  }
  const double d = fd_step(grid_step);
  return validate_hermitian((evaluate(t + d) - evaluate(t - d)) / (2.0 * d), tol_);
}

Complex inner_product(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::usage, "inner product: dimension mismatch");
  return a.dot(b);  // Eigen conjugates the left operand
}

Complex inner_product(const QuantumState& a, const QuantumState& b) {
  return inner_product(a.amplitudes(), b.amplitudes());
}

double fidelity(const QuantumState& a, const QuantumState& b, const Tolerances& tol) {
  for (const QuantumState* s : {&a, &b}) {
    if (std::abs(s->amplitudes().norm() - 1.0) > tol.state_norm) {
      throw Error(ErrorKind::numerical, "fidelity: input state is not normalized");
    }
  }
  return std::abs(inner_product(a, b));
}

double hermiticity_defect(const Matrix& m) { return (m - m.adjoint()).norm(); }

double unitarity_defect(const Matrix& u) {
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm();
}

Matrix validate_hermitian(const Matrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::usage, "validate_hermitian: matrix not square");
  const double defect = hermiticity_defect(m);
  if (!(defect <= tol.hermitian_reject * m.norm())) {
    std::ostringstream os;
    os << "validate_hermitian: relative hermiticity defect " << defect / m.norm();
    throw Error(ErrorKind::numerical, os.str());
  }
  return 0.5 * (m + m.adjoint());
}

}  // namespace adiabat
