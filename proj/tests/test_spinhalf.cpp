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

#include "doctest.h"
#include "oracles.hpp"

#include "adiabat/spinhalf.hpp"

#include <cmath>
#include <numbers>

using namespace adiabat;
namespace sh = adiabat::spinhalf;

TEST_SUITE("spinhalf") {

TEST_CASE("hamiltonian is traceless, Hermitian and reduces to -omega0 sigma_z / 2") {
  const sh::SpinHalfParams p{1.3, 0.4, 0.9};
  for (double t : {0.0, 1.0, 7.5}) {
    const Matrix h = sh::hamiltonian_matrix(p, t);
    CHECK(std::abs(h.trace()) <= 1e-15);
    CHECK(hermiticity_defect(h) <= 1e-15);
  }
  const sh::SpinHalfParams aligned{2.0, 0.5, 0.0};
  CHECK((sh::hamiltonian_matrix(aligned, 3.0) + sh::pauli_z()).norm() <= 1e-15);
  // Field direction (sin cos, sin sin, cos) expressed through Pauli matrices.
  const double t = 2.2;
  const Matrix ref = -0.5 * p.omega0 *
                     (std::sin(p.theta) * std::cos(p.omega * t) * sh::pauli_x() +
                      std::sin(p.theta) * std::sin(p.omega * t) * sh::pauli_y() +
                      std::cos(p.theta) * sh::pauli_z());
  CHECK((sh::hamiltonian_matrix(p, t) - ref).norm() <= 1e-15);
}

TEST_CASE("analytic derivative matches finite differences") {
  const sh::SpinHalfParams p{1.0, 0.7, 1.2};
  const double d = 1e-5;
  for (double t : {0.3, 4.0}) {
    const Matrix fd = (sh::hamiltonian_matrix(p, t + d) - sh::hamiltonian_matrix(p, t - d)) / (2 * d);
    CHECK((sh::hamiltonian_derivative(p, t) - fd).norm() <= 1e-9);
    const auto e = sh::eigenpairs_analytic(p, t);
    const auto ep = sh::eigenpairs_analytic(p, t + d);
    const auto em = sh::eigenpairs_analytic(p, t - d);
    const auto de = sh::eigenvector_derivatives_analytic(p, t);
    for (int n = 0; n < 2; ++n) CHECK((de[n] - (ep[n].vector - em[n].vector) / (2 * d)).norm() <= 1e-9);
  }
}

TEST_CASE("closed-form eigenpairs") {
  const sh::SpinHalfParams p{1.5, 0.2, 2.0};
  for (double t : {0.0, 1.7, 30.0}) {
    const Matrix h = sh::hamiltonian_matrix(p, t);
    const auto e = sh::eigenpairs_analytic(p, t);
    CHECK(e[0].value == doctest::Approx(0.75));
    CHECK(e[1].value == doctest::Approx(-0.75));
    for (const auto& pair : e) {
      CHECK((h * pair.vector - pair.value * pair.vector).norm() <= 1e-14);
      CHECK(std::abs(pair.vector.norm() - 1.0) <= 1e-15);
    }
    CHECK(std::abs(e[0].vector.dot(e[1].vector)) <= 1e-15);
  }
  CHECK(sh::ascending_index(sh::Label::one) == 1);
  CHECK(sh::ascending_index(sh::Label::two) == 0);
  CHECK(sh::dual_ascending_index(sh::Label::one) == 0);
  CHECK(sh::dual_ascending_index(sh::Label::two) == 1);
}

TEST_CASE("closed-form propagator solves the Schroedinger equation") {
  const sh::SpinHalfParams p{1.0, 0.1, std::numbers::pi / 3.0};
  CHECK((sh::propagator_analytic(p, 0.0).matrix() - Matrix::Identity(2, 2)).norm() <= 1e-15);
  const double d = 1e-5;
  for (double t : {0.5, 13.0, 50.0}) {
    const Matrix u = sh::propagator_analytic(p, t).matrix();
    CHECK(unitarity_defect(u) <= 1e-14);
    const Matrix du = (sh::propagator_analytic(p, t + d).matrix() -
                       sh::propagator_analytic(p, t - d).matrix()) / (2 * d);
    CHECK((du - Complex(0.0, -1.0) * sh::hamiltonian_matrix(p, t) * u).norm() <= 1e-9);
  }
  const Matrix rk4 = oracle::rk4_propagator(
      [&p](double t) { return sh::hamiltonian_matrix(p, t); }, 2, 50.0, 20000);
  CHECK((rk4 - sh::propagator_analytic(p, 50.0).matrix()).norm() <= 1e-9);
}

TEST_CASE("theta = 0 propagator is diagonal") {
  const sh::SpinHalfParams p{1.0, 0.25, 0.0};
  const Matrix u = sh::propagator_analytic(p, 4.0).matrix();
  CHECK(std::abs(u(0, 1)) <= 1e-15);
  CHECK(std::abs(u(0, 0) - std::polar(1.0, 2.0)) <= 1e-14);
}

TEST_CASE("closed-form dual states") {
  const sh::SpinHalfParams p{1.0, 0.05, 1.1};
  for (double t : {0.0, 5.0, 40.0, 62.0}) {
    const Matrix ud = sh::propagator_analytic(p, t).matrix().adjoint();
    const auto e0 = sh::eigenpairs_analytic(p, 0.0);
    const Vector ref_one = ud * e0[0].vector;
    CHECK((sh::psi_b_exact(p, t, sh::Label::one).amplitudes() - ref_one).norm() <= 1e-14);
    const Vector ref_two = ud * e0[1].vector;
    CHECK((sh::psi_b_exact(p, t, sh::Label::two).amplitudes() - ref_two).norm() <= 1e-14);
    for (const auto label : {sh::Label::one, sh::Label::two}) {
      const double f = fidelity(sh::psi_b_adiabatic(p, t, label), sh::psi_b_exact(p, t, label));
      CHECK(std::abs(f * f - sh::fidelity_law(p, t)) <= 1e-12);
    }
  }
  CHECK((sh::psi_b_adiabatic(p, 0.0).amplitudes() - sh::psi_b_exact(p, 0.0).amplitudes()).norm() <=
        1e-15);
}

TEST_CASE("dual adiabatic state is U^dag applied to the rephased instantaneous eigenvector") {
  const sh::SpinHalfParams p{1.0, 0.05, 1.1};
  for (double t : {3.0, 20.0}) {
    const Matrix ud = sh::propagator_analytic(p, t).matrix().adjoint();
    const auto e = sh::eigenpairs_analytic(p, t);
    const double geometric = -0.5 * p.omega * std::cos(p.theta) * t;
    const Vector ref = std::polar(1.0, geometric) * (ud * e[0].vector);
    CHECK((sh::psi_b_adiabatic(p, t).amplitudes() - ref).norm() <= 1e-14);
  }
}

TEST_CASE("fidelity law values and omega0 independence") {
  const sh::SpinHalfParams p{1.0, 0.01, std::numbers::pi / 2.0};
  CHECK(sh::fidelity_law(p, 0.0) == 1.0);
  CHECK(std::abs(sh::fidelity_law(p, std::numbers::pi / p.omega)) <= 1e-15);
  for (double omega0 : {0.1, 1.0, 10.0}) {
    const sh::SpinHalfParams q{omega0, 0.01, 1.0};
    for (double t : {10.0, 150.0, 300.0}) {
      const double f = fidelity(sh::psi_b_adiabatic(q, t), sh::psi_b_exact(q, t));
      CHECK(std::abs(f * f - (1.0 - std::pow(std::sin(1.0) * std::sin(0.005 * t), 2))) <= 1e-10);
    }
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((sh::SpinHalfParams{0.0, 0.1, 1.0}.validate()), Error);
  CHECK_THROWS_AS((sh::SpinHalfParams{1.0, -0.1, 1.0}.validate()), Error);
  CHECK_THROWS_AS((sh::SpinHalfParams{1.0, 0.1, 4.0}.validate()), Error);
  CHECK_THROWS_AS((sh::SpinHalfParams{1.0, 1.0, std::numbers::pi}.validate()), Error);
  CHECK_THROWS_AS((sh::SpinHalfParams{1.0, 0.1, 0.0}.validate(true)), Error);
  CHECK_NOTHROW((sh::SpinHalfParams{1.0, 0.0, 1.0}.validate(true)));
  CHECK(sh::SpinHalfParams{2.0, 0.1, std::numbers::pi / 2}.adiabatic_ratio() ==
        doctest::Approx(0.05));
  CHECK(sh::SpinHalfParams{1.0, 1.0, 0.0}.omega_bar() == doctest::Approx(2.0));
}

}  // TEST_SUITE
