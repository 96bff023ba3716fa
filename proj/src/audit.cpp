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

#include "adiabat/audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace adiabat {
namespace {

// i <E_n|dE_n/dt> at every grid point; real by construction of a unit-norm family.
std::vector<Complex> diagonal_connection(const SpectralPath& path, std::size_t level,
                                         const Tolerances& tol) {
  if (level >= path.levels()) throw Error(ErrorKind::usage, "audit: level out of range");
  std::vector<Complex> c(path.grid().size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    c[k] = coupling_via_derivative(path, level, level, k);
    if (!(std::abs(c[k].real()) <= tol.gauge_real_part)) {
      std::ostringstream os;
      os << "audit: <E_n|dE_n/dt> has real part " << c[k].real() << " at t = "
         << path.grid().time(k) << "; eigenvector gauge is not smooth";
      throw Error(ErrorKind::gauge, os.str());
    }
  }
  return c;
}

template <typename T>
std::vector<T> cumulative_trapezoid(const std::vector<T>& f, double h) {
  std::vector<T> out(f.size(), T{});
  for (std::size_t k = 1; k < f.size(); ++k) out[k] = out[k - 1] + 0.5 * h * (f[k - 1] + f[k]);
  return out;
}

double checked_gap(const SpectralFrame& f, std::size_t m, std::size_t n, const Tolerances& tol) {
  const double gap = std::abs(f.value(m) - f.value(n));
  if (!(gap > tol.degeneracy)) {
    std::ostringstream os;
    os << "audit: levels " << m << " and " << n << " are degenerate at t = " << f.t;
    throw Error(ErrorKind::degeneracy, os.str());
  }
  return gap;
}

FidelityCurve make_curve(std::vector<double> values) {
  FidelityCurve c;
  c.min = *std::min_element(values.begin(), values.end());
  c.final = values.back();
  c.values = std::move(values);
  return c;
}

struct HdotSummary {
  RatioTable table;
  double lidar_lhs = 0.0;
  double min_gap = std::numeric_limits<double>::infinity();
  double max_element = 0.0;
};

HdotSummary scan_hdot(const HamiltonianModel& model, const SpectralPath& path,
                      const Tolerances& tol) {
  const std::size_t n = path.levels();
  const auto ni = static_cast<Eigen::Index>(n);
  HdotSummary s;
  s.table.entries.reserve(path.grid().size());
  s.table.max_per_step.reserve(path.grid().size());
  for (std::size_t k = 0; k < path.grid().size(); ++k) {
    const SpectralFrame& f = path.frame(k);
    const Matrix w = hdot_in_eigenbasis(model, path, k);
    Eigen::MatrixXd ratio = Eigen::MatrixXd::Zero(ni, ni);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b) continue;
        const double gap = checked_gap(f, a, b, tol);
        const double element = std::abs(w(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)));
        ratio(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = element / (gap * gap);
        s.lidar_lhs = std::max(s.lidar_lhs, element / gap);
        s.min_gap = std::min(s.min_gap, gap);
        s.max_element = std::max(s.max_element, element);
      }
    }
    const double row_max = ratio.maxCoeff();
    s.table.max_per_step.push_back(row_max);
    s.table.max = std::max(s.table.max, row_max);
    s.table.entries.push_back(std::move(ratio));
  }
  return s;
}

}  // namespace

AdiabaticPhase adiabatic_phase(const SpectralPath& path, std::size_t level, const Tolerances& tol) {
  const std::vector<Complex> c = diagonal_connection(path, level, tol);
  const std::size_t size = path.grid().size();
  std::vector<double> energy(size), connection(size);
  for (std::size_t k = 0; k < size; ++k) {
    energy[k] = -path.eigenvalue(level, k);
    connection[k] = -c[k].imag();  // Re(i c)
  }
  const double h = path.grid().step();
  return AdiabaticPhase{cumulative_trapezoid(energy, h), cumulative_trapezoid(connection, h)};
}

AdiabaticTrajectory::AdiabaticTrajectory(const SpectralPath& path, std::size_t level,
                                         const Tolerances& tol)
    : level_(level), grid_(path.grid()), phase_(adiabatic_phase(path, level, tol)) {
  states_.reserve(grid_.size());
  for (std::size_t k = 0; k < grid_.size(); ++k) {
    states_.emplace_back(path.eigenvector(level, k) * std::polar(1.0, phase_.total(k)), tol);
  }
}

QuantumState adiabatic_state(const SpectralPath& path, std::size_t level, std::size_t k,
                             const Tolerances& tol) {
  if (k >= path.grid().size()) throw Error(ErrorKind::usage, "adiabatic_state: index out of range");
  const AdiabaticPhase phase = adiabatic_phase(path, level, tol);
  return QuantumState(path.eigenvector(level, k) * std::polar(1.0, phase.total(k)), tol);
}

FidelityCurve validity_fidelity(const AdiabaticTrajectory& adi, const StateTrajectory& exact) {
  if (!(adi.grid() == exact.grid())) {
    throw Error(ErrorKind::usage, "validity_fidelity: trajectories are on different grids");
  }
  std::vector<double> values(adi.grid().size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    values[k] = std::abs(inner_product(adi.at(k), exact.at(k)));
  }
  return make_curve(std::move(values));
}

FidelityCurve reduced_fidelity_primal(const SpectralPath& path, const PropagatorPath& prop,
                                      std::size_t level) {
  if (!(path.grid() == prop.grid())) {
    throw Error(ErrorKind::usage, "reduced_fidelity_primal: grid mismatch");
  }
  if (level >= path.levels()) throw Error(ErrorKind::usage, "reduced_fidelity_primal: bad level");
  const Vector e0 = path.eigenvector(level, 0);
  std::vector<double> values(path.grid().size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    values[k] = std::abs(path.eigenvector(level, k).dot(prop.at(k).matrix() * e0));
  }
  return make_curve(std::move(values));
}

FidelityCurve reduced_fidelity_dual(const SpectralPath& primal_path, std::size_t primal_level) {
  if (primal_level >= primal_path.levels()) {
    throw Error(ErrorKind::usage, "reduced_fidelity_dual: bad level");
  }
  const Vector e0 = primal_path.eigenvector(primal_level, 0);
  std::vector<double> values(primal_path.grid().size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    values[k] = std::abs(primal_path.eigenvector(primal_level, k).dot(e0));
  }
  return make_curve(std::move(values));
}

RatioTable condition_pointwise(const SpectralPath& path, const Tolerances& tol) {
  const std::size_t n = path.levels();
  const auto ni = static_cast<Eigen::Index>(n);
  RatioTable table;
  table.entries.reserve(path.grid().size());
  table.max_per_step.reserve(path.grid().size());
  Matrix derivs(ni, ni);
  for (std::size_t k = 0; k < path.grid().size(); ++k) {
    const SpectralFrame& f = path.frame(k);
    for (std::size_t b = 0; b < n; ++b) {
      derivs.col(static_cast<Eigen::Index>(b)) = eigen_derivative(path, b, k);
    }
    const Matrix c = f.eigenvectors.adjoint() * derivs;
    Eigen::MatrixXd ratio = Eigen::MatrixXd::Zero(ni, ni);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b) continue;
        const auto ai = static_cast<Eigen::Index>(a);
        const auto bi = static_cast<Eigen::Index>(b);
        ratio(ai, bi) = std::abs(c(ai, bi)) / checked_gap(f, a, b, tol);
      }
    }
    const double row_max = ratio.maxCoeff();
    table.max_per_step.push_back(row_max);
    table.max = std::max(table.max, row_max);
    table.entries.push_back(std::move(ratio));
  }
  return table;
}

RatioTable condition_hdot(const HamiltonianModel& model, const SpectralPath& path,
                          const Tolerances& tol) {
  return scan_hdot(model, path, tol).table;
}

LidarCondition condition_lidar(const SpectralPath& path, const HamiltonianModel& model,
                               double margin, const Tolerances& tol) {
  const HdotSummary s = scan_hdot(model, path, tol);
  return LidarCondition{s.lidar_lhs, s.min_gap, margin, s.lidar_lhs <= margin * s.min_gap};
}

double condition_roland(const SpectralPath& path, const HamiltonianModel& model,
                        const Tolerances& tol) {
  const HdotSummary s = scan_hdot(model, path, tol);
  return s.max_element / (s.min_gap * s.min_gap);
}

MarzlinSandersValues marzlin_sanders_residual(const SpectralPath& path, const PropagatorPath& prop,
                                              std::size_t level, const Tolerances& tol) {
  if (!(path.grid() == prop.grid())) {
    throw Error(ErrorKind::usage, "marzlin_sanders_residual: grid mismatch");
  }
  const std::vector<Complex> connection =
      cumulative_trapezoid(diagonal_connection(path, level, tol), path.grid().step());
  const Vector e0 = path.eigenvector(level, 0);
  MarzlinSandersValues out;
  out.exact.reserve(connection.size());
  out.adiabatic.reserve(connection.size());
  for (std::size_t k = 0; k < connection.size(); ++k) {
    const Matrix& u = prop.at(k).matrix();
    out.exact.push_back(e0.dot(u * (u.adjoint() * e0)));
    out.adiabatic.push_back(std::exp(-connection[k]) * e0.dot(path.eigenvector(level, k)));
  }
  return out;
}

ConditionReport audit(const HamiltonianModel& model, const SpectralPath& path,
                      const StateTrajectory& exact, std::size_t level, double margin,
                      const Tolerances& tol) {
  if (!(path.grid() == exact.grid())) throw Error(ErrorKind::usage, "audit: grid mismatch");
  ConditionReport r;
  r.level = level;
  r.margin = margin;
  r.pointwise = condition_pointwise(path, tol);
  r.pointwise_ratio_max = r.pointwise.max;
  const HdotSummary s = scan_hdot(model, path, tol);
  r.hdot_ratio_max = s.table.max;
  r.lidar = LidarCondition{s.lidar_lhs, s.min_gap, margin, s.lidar_lhs <= margin * s.min_gap};
  r.roland_epsilon = s.max_element / (s.min_gap * s.min_gap);
  const AdiabaticTrajectory adi(path, level, tol);
  r.phase = adi.phase();
  r.fidelity = validity_fidelity(adi, exact);
  r.fidelity_min = r.fidelity.min;
  r.fidelity_final = r.fidelity.final;
  return r;
}

}  // namespace adiabat
