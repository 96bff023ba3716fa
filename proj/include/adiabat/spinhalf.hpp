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

// Closed-form spin-1/2 in a magnetic field of strength omega0 rotating about z
// at frequency omega on a cone of half-angle theta:
//
//   H(t) = -(omega0/2) (sin(theta) cos(omega t) sx + sin(theta) sin(omega t) sy + cos(theta) sz)
//
// Level labels. The closed forms below number the levels the traditional way:
// label 1 has E = +omega0/2 and label 2 has E = -omega0/2. Everything else in
// the library uses ascending eigenvalue order, so label 1 is ascending index 1
// and label 2 is ascending index 0 (see ascending_index). For the dual system
// the eigenvalues are negated, so label 1 of the dual (E = -omega0/2) is
// ascending index 0.

#include "adiabat/core.hpp"

#include <array>

namespace adiabat::spinhalf {

inline const Matrix& pauli_x() {
  static const Matrix m = (Matrix(2, 2) << 0.0, 1.0, 1.0, 0.0).finished();
  return m;
}
inline const Matrix& pauli_y() {
  static const Matrix m =
      (Matrix(2, 2) << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0).finished();
  return m;
}
inline const Matrix& pauli_z() {
  static const Matrix m = (Matrix(2, 2) << 1.0, 0.0, 0.0, -1.0).finished();
  return m;
}

struct SpinHalfParams {
  double omega0 = 1.0;
  double omega = 0.0;
  double theta = 0.0;

  /// sqrt(omega0^2 + omega^2 + 2 omega0 omega cos(theta))
  double omega_bar() const;
  /// omega sin(theta) / omega0; small in the regime where the conditions hold.
  double adiabatic_ratio() const;

  /// omega0 > 0, omega >= 0, theta in [0, pi], omega_bar > 0. With
  /// `require_tilted`, theta in {0, pi} is rejected too (the dual
  /// counterexample degenerates when sin(theta) = 0).
  void validate(bool require_tilted = false) const;
};

enum class Label { one = 1, two = 2 };

/// Ascending-order index of a labelled level of H^a.
std::size_t ascending_index(Label label) noexcept;
/// Ascending-order index of a labelled level of the dual H^b.
std::size_t dual_ascending_index(Label label) noexcept;

Matrix hamiltonian_matrix(const SpinHalfParams& p, double t);
Matrix hamiltonian_derivative(const SpinHalfParams& p, double t);

/// H^a(t) with analytic dH/dt.
HamiltonianModel hamiltonian_a(const SpinHalfParams& p);

struct EigenPair {
  double value;
  Vector vector;
};

/// {label one, label two}:
///   E = +omega0/2: ( e^{-i omega t/2} sin(theta/2), -e^{i omega t/2} cos(theta/2) )
///   E = -omega0/2: ( e^{-i omega t/2} cos(theta/2),  e^{i omega t/2} sin(theta/2) )
std::array<EigenPair, 2> eigenpairs_analytic(const SpinHalfParams& p, double t);

/// Time derivatives of the two closed-form eigenvectors, same order.
std::array<Vector, 2> eigenvector_derivatives_analytic(const SpinHalfParams& p, double t);

/// Exact U^a(t) in closed form.
UnitaryMatrix propagator_analytic(const SpinHalfParams& p, double t);

/// Exact dual state U^a(t)^dag |E^a_label(0)>. Label one uses the printed
/// two-component closed form; label two is built the same way from U^a.
QuantumState psi_b_exact(const SpinHalfParams& p, double t, Label label = Label::one);

/// Adiabatic dual state e^{i alpha^b(t)} U^a(t)^dag |E^a_label(t)>, with
/// alpha^b = i int <E^a|dE^a/dt'> dt' = -/+ omega cos(theta) t / 2.
QuantumState psi_b_adiabatic(const SpinHalfParams& p, double t, Label label = Label::one);

/// |<psi_b_adi(t)|psi_b(t)>|^2 = 1 - sin^2(theta) sin^2(omega t / 2).
/// Independent of omega0.
double fidelity_law(const SpinHalfParams& p, double t);

}  // namespace adiabat::spinhalf
