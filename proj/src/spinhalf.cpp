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

#include "adiabat/spinhalf.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace adiabat::spinhalf {
namespace {

constexpr Complex kI(0.0, 1.0);

Complex phase(double x) { return std::polar(1.0, x); }

// Ingredients of the closed-form propagator at time t.
struct PropagatorTerms {
  double cos_half;  // cos(omega_bar t / 2)
  double sin_half;  // sin(omega_bar t / 2)
  double a;         // (omega + omega0 cos(theta)) / omega_bar
  double b;         // omega0 sin(theta) / omega_bar
};

PropagatorTerms terms(const SpinHalfParams& p, double t) {
  const double wb = p.omega_bar();
  return {std::cos(0.5 * wb * t), std::sin(0.5 * wb * t),
          (p.omega + p.omega0 * std::cos(p.theta)) / wb, p.omega0 * std::sin(p.theta) / wb};
}

}  // namespace

double SpinHalfParams::omega_bar() const {
  return std::sqrt(omega0 * omega0 + omega * omega + 2.0 * omega0 * omega * std::cos(theta));
}

double SpinHalfParams::adiabatic_ratio() const { return omega * std::sin(theta) / omega0; }

void SpinHalfParams::validate(bool require_tilted) const {
  std::ostringstream os;
  if (!std::isfinite(omega0) || !(omega0 > 0.0)) {
    os << "spin-half: omega0 must be finite and positive";
  } else if (!std::isfinite(omega) || omega < 0.0) {
    os << "spin-half: omega must be finite and non-negative";
  } else if (!std::isfinite(theta) || theta < 0.0 || theta > std::numbers::pi) {
    os << "spin-half: theta must lie in [0, pi]";
  } else if (require_tilted && (theta == 0.0 || theta == std::numbers::pi)) {
    os << "spin-half: theta must lie strictly inside (0, pi) for the dual demonstration";
  } else if (!(omega_bar() > 0.0)) {
    os << "spin-half: omega_bar vanishes (omega == omega0 with theta == pi)";
  } else {
    return;
  }
  throw Error(ErrorKind::usage, os.str());
}

std::size_t ascending_index(Label label) noexcept { return label == Label::one ? 1 : 0; }

std::size_t dual_ascending_index(Label label) noexcept { return label == Label::one ? 0 : 1; }

Matrix hamiltonian_matrix(const SpinHalfParams& p, double t) {
  const double s = std::sin(p.theta);
  const double c = std::cos(p.theta);
  Matrix h(2, 2);
  h(0, 0) = c;
  h(0, 1) = s * phase(-p.omega * t);
  h(1, 0) = s * phase(p.omega * t);
  h(1, 1) = -c;
  return -0.5 * p.omega0 * h;
}

Matrix hamiltonian_derivative(const SpinHalfParams& p, double t) {
  const double s = std::sin(p.theta);
  Matrix d(2, 2);
  d(0, 0) = 0.0;
  d(0, 1) = -kI * p.omega * s * phase(-p.omega * t);
  d(1, 0) = kI * p.omega * s * phase(p.omega * t);
  d(1, 1) = 0.0;
  return -0.5 * p.omega0 * d;
}

HamiltonianModel hamiltonian_a(const SpinHalfParams& p) {
  p.validate();
  return HamiltonianModel(
      2, ModelKind::analytic_parametric, [p](double t) { return hamiltonian_matrix(p, t); },
      [p](double t) { return hamiltonian_derivative(p, t); });
}

std::array<EigenPair, 2> eigenpairs_analytic(const SpinHalfParams& p, double t) {
  const double s = std::sin(0.5 * p.theta);
  const double c = std::cos(0.5 * p.theta);
  const Complex em = phase(-0.5 * p.omega * t);
  const Complex ep = phase(0.5 * p.omega * t);
  Vector one(2), two(2);
  one << em * s, -ep * c;
  two << em * c, ep * s;
  return {EigenPair{0.5 * p.omega0, std::move(one)}, EigenPair{-0.5 * p.omega0, std::move(two)}};
}

std::array<Vector, 2> eigenvector_derivatives_analytic(const SpinHalfParams& p, double t) {
  const double s = std::sin(0.5 * p.theta);
  const double c = std::cos(0.5 * p.theta);
  const Complex dm = -0.5 * kI * p.omega * phase(-0.5 * p.omega * t);
  const Complex dp = 0.5 * kI * p.omega * phase(0.5 * p.omega * t);
  Vector one(2), two(2);
  one << dm * s, -dp * c;
  two << dm * c, dp * s;
  return {std::move(one), std::move(two)};
}

UnitaryMatrix propagator_analytic(const SpinHalfParams& p, double t) {
  p.validate();
  const PropagatorTerms q = terms(p, t);
  const Complex em = phase(-0.5 * p.omega * t);
  const Complex ep = phase(0.5 * p.omega * t);
  Matrix u(2, 2);
  u(0, 0) = (q.cos_half + kI * q.a * q.sin_half) * em;
  u(0, 1) = kI * q.b * q.sin_half * em;
  u(1, 0) = kI * q.b * q.sin_half * ep;
  u(1, 1) = (q.cos_half - kI * q.a * q.sin_half) * ep;
  return UnitaryMatrix(std::move(u), 1e-12);
}

QuantumState psi_b_exact(const SpinHalfParams& p, double t, Label label) {
  p.validate();
  if (label == Label::two) {
    const Vector e0 = eigenpairs_analytic(p, 0.0)[1].vector;
    return QuantumState(propagator_analytic(p, t).matrix().adjoint() * e0);
  }
  const PropagatorTerms q = terms(p, t);
  const double s = std::sin(0.5 * p.theta);
  const double c = std::cos(0.5 * p.theta);
  const Complex em = phase(-0.5 * p.omega * t);
  const Complex ep = phase(0.5 * p.omega * t);
  Vector v(2);
  v(0) = (q.cos_half - kI * q.a * q.sin_half) * s * ep + kI * q.b * q.sin_half * c * em;
  v(1) = -(q.cos_half + kI * q.a * q.sin_half) * c * em - kI * q.b * q.sin_half * s * ep;
  return QuantumState(std::move(v));
}

QuantumState psi_b_adiabatic(const SpinHalfParams& p, double t, Label label) {
  p.validate();
  const double geometric = 0.5 * p.omega * std::cos(p.theta) * t;
  if (label == Label::two) {
    const Vector et = eigenpairs_analytic(p, t)[1].vector;
    return QuantumState(phase(geometric) * (propagator_analytic(p, t).matrix().adjoint() * et));
  }
  const PropagatorTerms q = terms(p, t);
  const double s = std::sin(0.5 * p.theta);
  const double c = std::cos(0.5 * p.theta);
  Vector v(2);
  v(0) = (q.cos_half - kI * q.a * q.sin_half) * s + kI * q.b * q.sin_half * c;
  v(1) = -(q.cos_half + kI * q.a * q.sin_half) * c - kI * q.b * q.sin_half * s;
  return QuantumState(phase(-geometric) * v);
}

double fidelity_law(const SpinHalfParams& p, double t) {
  const double st = std::sin(p.theta);
  const double sw = std::sin(0.5 * p.omega * t);
  return 1.0 - st * st * sw * sw;
}

}  // namespace adiabat::spinhalf
