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

#include "adiabat/dual.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace adiabat {
namespace {

class DualEvaluator {
 public:
  DualEvaluator(HamiltonianModel primal, std::shared_ptr<const PropagatorPath> prop)
      : primal_(std::move(primal)), prop_(std::move(prop)) {}

  Matrix unitary_at(double t) const {
    const TimeGrid& grid = prop_->grid();
    const double h = grid.step();
    if (!(t >= -h && t <= grid.t_end() + h)) {
      std::ostringstream os;
      os << "dual model: t = " << t << " lies outside the primal propagator range";
      throw Error(ErrorKind::usage, os.str());
    }
    const std::size_t j = grid.nearest_index(t);
    const double tj = grid.time(j);
    const double dt = t - tj;
    const Matrix& uj = prop_->at(j).matrix();
    if (std::abs(dt) <= 1e-12 * std::max(1.0, std::abs(t))) return uj;
    return exp_minus_i(primal_.evaluate(tj + 0.5 * dt), dt) * uj;
  }

  Matrix evaluate(double t) const {
    const Matrix u = unitary_at(t);
    return -(u.adjoint() * primal_.evaluate(t) * u);
  }

  Matrix derivative(double t) const {
    const Matrix u = unitary_at(t);
    return -(u.adjoint() * primal_.derivative(t, prop_->grid().step()) * u);
  }

 private:
  HamiltonianModel primal_;
  std::shared_ptr<const PropagatorPath> prop_;
};

HamiltonianModel make_dual(const HamiltonianModel& model,
                           std::shared_ptr<const PropagatorPath> prop) {
  if (prop->dimension() != model.dimension()) {
    throw Error(ErrorKind::usage, "dual_hamiltonian: model and propagator dimensions differ");
  }
  auto eval = std::make_shared<const DualEvaluator>(model, std::move(prop));
  HamiltonianModel::Generator derivative;
  if (model.has_analytic_derivative()) {
    derivative = [eval](double t) { return eval->derivative(t); };
  }
  return HamiltonianModel(
      model.dimension(), ModelKind::dual_wrapper, [eval](double t) { return eval->evaluate(t); },
      std::move(derivative), model.tolerances());
}

void require_shared_grid(const DualSystem& dual, const SpectralPath& a, const SpectralPath& b) {
  if (!(a.grid() == dual.grid()) || !(b.grid() == dual.grid())) {
    throw Error(ErrorKind::usage, "dual verification: spectral paths must use the dual's grid");
  }
  if (a.levels() != b.levels() || a.levels() != dual.primal().dimension()) {
    throw Error(ErrorKind::usage, "dual verification: dimension mismatch");
  }
}

Complex unit_phase(Complex z) {
  const double r = std::abs(z);
  return r > 0.0 ? z / r : Complex(1.0, 0.0);
}

}  // namespace

HamiltonianModel dual_hamiltonian(const HamiltonianModel& model, const PropagatorPath& prop) {
  return make_dual(model, std::make_shared<const PropagatorPath>(prop));
}

DualSystem::DualSystem(HamiltonianModel primal, PropagatorPath primal_propagator)
    : primal_(std::move(primal)),
      propagator_(std::make_shared<const PropagatorPath>(std::move(primal_propagator))),
      dual_(make_dual(primal_, propagator_)) {}

DualSystem DualSystem::build(const HamiltonianModel& primal, const TimeGrid& grid,
                             const Tolerances& tol) {
  return DualSystem(primal, propagate(primal, grid, tol));
}

std::vector<std::size_t> reversed_levels(std::size_t n) {
  std::vector<std::size_t> map(n);
  std::iota(map.rbegin(), map.rend(), std::size_t{0});
  return map;
}

std::vector<std::size_t> match_dual_levels(const SpectralPath& path_a, const SpectralPath& path_b,
                                           const Tolerances& tol) {
  if (path_a.levels() != path_b.levels()) {
    throw Error(ErrorKind::usage, "match_dual_levels: dimension mismatch");
  }
  const std::size_t n = path_a.levels();
  const Eigen::MatrixXd overlap =
      (path_a.frame(0).eigenvectors.adjoint() * path_b.frame(0).eigenvectors).cwiseAbs();
  std::vector<std::size_t> map(n);
  std::vector<bool> taken(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    Eigen::Index best = 0;
    const double top = overlap.row(static_cast<Eigen::Index>(i)).maxCoeff(&best);
    double second = 0.0;
    for (Eigen::Index j = 0; j < overlap.cols(); ++j) {
      if (j != best) second = std::max(second, overlap(static_cast<Eigen::Index>(i), j));
    }
    const auto b = static_cast<std::size_t>(best);
    if (top - second < tol.tracking_ambiguity || taken[b]) {
      throw Error(ErrorKind::tracking, "match_dual_levels: ambiguous level pairing at t = 0");
    }
    taken[b] = true;
    map[i] = b;
  }
  return map;
}

EigenCorrespondence verify_eigen_correspondence(const DualSystem& dual, const SpectralPath& path_a,
                                                const SpectralPath& path_b,
                                                const Tolerances& tol) {
  require_shared_grid(dual, path_a, path_b);
  const std::vector<std::size_t> map = match_dual_levels(path_a, path_b, tol);
  EigenCorrespondence r;
  for (std::size_t k = 0; k < dual.grid().size(); ++k) {
    const Matrix& u = dual.primal_propagator().at(k).matrix();
    const SpectralFrame& fa = path_a.frame(k);
    const SpectralFrame& fb = path_b.frame(k);
    for (std::size_t n = 0; n < map.size(); ++n) {
      r.eigenvalue_residual =
          std::max(r.eigenvalue_residual, std::abs(fb.value(map[n]) + fa.value(n)));
      const double overlap = std::abs(fb.vector(map[n]).dot(u.adjoint() * fa.vector(n)));
      r.overlap_deficit = std::max(r.overlap_deficit, 1.0 - overlap);
    }
  }
  return r;
}

SpectralPath transported_dual_path(const DualSystem& dual, const SpectralPath& path_a,
                                   const SpectralPath& path_b, const Tolerances& tol) {
  require_shared_grid(dual, path_a, path_b);
  const std::vector<std::size_t> map = match_dual_levels(path_a, path_b, tol);
  const auto n = static_cast<Eigen::Index>(map.size());
  std::vector<SpectralFrame> frames;
  frames.reserve(dual.grid().size());
  for (std::size_t k = 0; k < dual.grid().size(); ++k) {
    const Matrix& u = dual.primal_propagator().at(k).matrix();
    const SpectralFrame& fa = path_a.frame(k);
    const SpectralFrame& fb = path_b.frame(k);
    SpectralFrame f;
    f.t = fb.t;
    f.min_gap = fb.min_gap;
    f.eigenvalues.resize(n);
    f.eigenvectors.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto j = static_cast<Eigen::Index>(map[static_cast<std::size_t>(i)]);
      const Vector target = u.adjoint() * fa.eigenvectors.col(i);
      const Vector v = fb.eigenvectors.col(j);
      const Complex ov = v.dot(target);
      if (std::abs(ov) < 0.5) {
        std::ostringstream os;
        os << "transported_dual_path: |<E^b|U^dag E^a>| = " << std::abs(ov) << " at t = " << f.t
           << "; the dual eigenvector cannot be re-phased onto U^dag E^a";
        throw Error(ErrorKind::gauge, os.str());
      }
      f.eigenvalues(i) = fb.eigenvalues(j);
      f.eigenvectors.col(i) = v * unit_phase(ov);
    }
    frames.push_back(std::move(f));
  }
  return SpectralPath(dual.grid(), std::move(frames), Gauge::supplied);
}

CouplingIdentity verify_coupling_identity(const DualSystem& dual, const SpectralPath& path_a,
                                          const SpectralPath& path_b, const Tolerances& tol) {
  const SpectralPath transported = transported_dual_path(dual, path_a, path_b, tol);
  const std::vector<std::size_t> map = match_dual_levels(path_a, path_b, tol);
  const std::size_t n = map.size();
  const Complex i_unit(0.0, 1.0);
  CouplingIdentity r;
  for (std::size_t k = 0; k < dual.grid().size(); ++k) {
    for (std::size_t m = 0; m < n; ++m) {
      for (std::size_t l = 0; l < n; ++l) {
        const Complex a = coupling_via_derivative(path_a, m, l, k);
        const Complex lhs = coupling_via_derivative(transported, m, l, k);
        const Complex rhs = (m == l ? i_unit * path_a.eigenvalue(m, k) : Complex{}) + a;
        r.transported_residual = std::max(r.transported_residual, std::abs(lhs - rhs));
        if (m != l) {
          const Complex b = coupling_via_derivative(path_b, map[m], map[l], k);
          r.modulus_residual = std::max(r.modulus_residual, std::abs(std::abs(b) - std::abs(a)));
        }
      }
    }
  }
  return r;
}

ConditionEquivalence verify_condition_equivalence(const ConditionReport& report_a,
                                                  const ConditionReport& report_b,
                                                  std::span<const std::size_t> level_map,
                                                  double tolerance) {
  const auto& ta = report_a.pointwise.entries;
  const auto& tb = report_b.pointwise.entries;
  if (ta.size() != tb.size() || ta.empty()) {
    throw Error(ErrorKind::usage, "verify_condition_equivalence: reports cover different grids");
  }
  const auto n = static_cast<std::size_t>(ta.front().rows());
  if (level_map.size() != n || static_cast<std::size_t>(tb.front().rows()) != n) {
    throw Error(ErrorKind::usage, "verify_condition_equivalence: level map size mismatch");
  }
  ConditionEquivalence r;
  for (std::size_t k = 0; k < ta.size(); ++k) {
    for (std::size_t m = 0; m < n; ++m) {
      for (std::size_t l = 0; l < n; ++l) {
        if (m == l) continue;
        const double da = ta[k](static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(l));
        const double db = tb[k](static_cast<Eigen::Index>(level_map[m]),
                                static_cast<Eigen::Index>(level_map[l]));
        r.max_deviation = std::max(r.max_deviation, std::abs(da - db));
      }
    }
  }
  r.equivalent = r.max_deviation <= tolerance;
  return r;
}

ConditionEquivalence verify_condition_equivalence(const ConditionReport& report_a,
                                                  const ConditionReport& report_b,
                                                  double tolerance) {
  if (report_a.pointwise.entries.empty()) {
    throw Error(ErrorKind::usage, "verify_condition_equivalence: empty report");
  }
  const auto map = reversed_levels(static_cast<std::size_t>(report_a.pointwise.entries.front().rows()));
  return verify_condition_equivalence(report_a, report_b, map, tolerance);
}

double conjugacy_residual(const PropagatorPath& prop_b, const PropagatorPath& prop_a) {
  if (!(prop_a.grid() == prop_b.grid()) || prop_a.dimension() != prop_b.dimension()) {
    throw Error(ErrorKind::usage, "conjugacy_residual: paths are not on a shared grid");
  }
  const auto n = static_cast<Eigen::Index>(prop_a.dimension());
  double worst = 0.0;
  for (std::size_t k = 0; k < prop_a.grid().size(); ++k) {
    const Matrix p = prop_b.at(k).matrix() * prop_a.at(k).matrix();
    worst = std::max(worst, (p - Matrix::Identity(n, n)).norm());
  }
  return worst;
}

}  // namespace adiabat
