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

// Value types shared by every module: states, unitaries, time grids and
// Hamiltonian models. Units are hbar = 1 throughout.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

namespace adiabat {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

enum class ErrorKind {
  usage,         // bad arguments, dimension or grid mismatch, bad config
  numerical,     // unitarity/normalization/hermiticity failure
  degeneracy,    // spectral gap below threshold
  tracking,      // ambiguous level pairing between frames
  gauge,         // eigenvector phase convention broken
  verification,  // an identity residual exceeded its tolerance
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Numerical thresholds used across the library. Modules receive a
/// Tolerances by const reference and never hard-code their own.
struct Tolerances {
  double state_norm = 1e-10;
  double normalize_target = 1e-12;
  double hermitian_reject = 1e-8;  // relative to ||M||_F
  double unitarity_step = 1e-10;
  double unitarity_accumulated = 1e-8;
  double degeneracy = 1e-8;
  double tracking_ambiguity = 0.1;
  double gauge_real_part = 1e-6;
  double fd_min_step = 1e-6;
  double fd_grid_fraction = 0.01;
};

/// Uniform grid t_k = k * t_end / steps, k = 0..steps.
class TimeGrid {
 public:
  TimeGrid(double t_end, std::size_t steps);

  double t_end() const noexcept { return t_end_; }
  std::size_t steps() const noexcept { return steps_; }
  std::size_t size() const noexcept { return steps_ + 1; }
  double step() const noexcept { return t_end_ / static_cast<double>(steps_); }
  double time(std::size_t k) const noexcept {
    return k == steps_ ? t_end_
                       : static_cast<double>(k) * t_end_ / static_cast<double>(steps_);
  }
  std::size_t nearest_index(double t) const noexcept;

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  double t_end_;
  std::size_t steps_;
};

class QuantumState {
 public:
  /// Rejects vectors whose norm differs from 1 by more than tol.state_norm.
  explicit QuantumState(Vector amplitudes, const Tolerances& tol = {});

  static QuantumState normalized(const Vector& v, const Tolerances& tol = {});
  static QuantumState basis(std::size_t dim, std::size_t index);

  const Vector& amplitudes() const noexcept { return amplitudes_; }
  std::size_t dimension() const noexcept {
    return static_cast<std::size_t>(amplitudes_.size());
  }
  QuantumState with_phase(double phi) const;

 private:
  struct Unchecked {};
  QuantumState(Vector amplitudes, Unchecked) : amplitudes_(std::move(amplitudes)) {}
  Vector amplitudes_;
};

class UnitaryMatrix {
 public:
  /// Rejects matrices whose unitarity defect ||U^dag U - I||_F exceeds tolerance.
  UnitaryMatrix(Matrix entries, double tolerance);

  static UnitaryMatrix identity(std::size_t dim);

  const Matrix& matrix() const noexcept { return entries_; }
  std::size_t dimension() const noexcept {
    return static_cast<std::size_t>(entries_.rows());
  }
  double defect() const noexcept { return defect_; }
  UnitaryMatrix adjoint() const;
  QuantumState apply(const QuantumState& psi) const;

 private:
  UnitaryMatrix(Matrix entries, double defect, bool) : entries_(std::move(entries)), defect_(defect) {}
  Matrix entries_;
  double defect_;
};

enum class ModelKind { analytic_parametric, dual_wrapper, sampled_table };

const char* to_string(ModelKind kind) noexcept;

/// A time-dependent Hermitian generator H(t) with optional analytic dH/dt.
///
/// Every evaluation is passed through validate_hermitian, so callers always
/// receive an exactly Hermitian matrix. When no derivative is supplied a
/// centered difference with step max(fd_min_step, fd_grid_fraction * h) is
/// used, where h is the grid step passed by the caller.
class HamiltonianModel {
 public:
  using Generator = std::function<Matrix(double)>;

  HamiltonianModel(std::size_t dimension, ModelKind kind, Generator evaluate,
                   Generator derivative = {}, Tolerances tol = {});

  std::size_t dimension() const noexcept { return dimension_; }
  ModelKind kind() const noexcept { return kind_; }
  bool has_analytic_derivative() const noexcept { return static_cast<bool>(derivative_); }
  const Tolerances& tolerances() const noexcept { return tol_; }

  Matrix evaluate(double t) const;
  Matrix derivative(double t, double grid_step) const;
  double fd_step(double grid_step) const noexcept;

 private:
  std::size_t dimension_;
  ModelKind kind_;
  Generator evaluate_;
  Generator derivative_;
  Tolerances tol_;
};

/// <a|b>, conjugate-linear in a.
Complex inner_product(const QuantumState& a, const QuantumState& b);
Complex inner_product(const Vector& a, const Vector& b);

/// |<a|b>| for unit-norm states.
double fidelity(const QuantumState& a, const QuantumState& b, const Tolerances& tol = {});

/// Returns (M + M^dag)/2; throws numerical error when
/// ||M - M^dag||_F > tol.hermitian_reject * ||M||_F.
Matrix validate_hermitian(const Matrix& m, const Tolerances& tol = {});

double hermiticity_defect(const Matrix& m);
double unitarity_defect(const Matrix& u);

}  // namespace adiabat
