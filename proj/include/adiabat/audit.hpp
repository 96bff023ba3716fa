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

// Quantitative adiabatic conditions, the adiabatic reference trajectory and
// the fidelity checks that decide whether the approximation holds.

#include "adiabat/core.hpp"
#include "adiabat/propagator.hpp"
#include "adiabat/spectral.hpp"

#include <vector>

namespace adiabat {

/// Cumulative phases of the adiabatic state, alpha = dynamic + geometric:
///   dynamic(t)   = -int_0^t E_n dt'
///   geometric(t) =  i int_0^t <E_n|dE_n/dt'> dt'
/// Both are trapezoidal sums over the grid and vanish at t = 0.
struct AdiabaticPhase {
  std::vector<double> dynamic;
  std::vector<double> geometric;

  double total(std::size_t k) const { return dynamic.at(k) + geometric.at(k); }
};

/// Throws a gauge error when |Re <E_n|dE_n/dt>| exceeds tol.gauge_real_part.
AdiabaticPhase adiabatic_phase(const SpectralPath& path, std::size_t level,
                               const Tolerances& tol = {});

class AdiabaticTrajectory {
 public:
  AdiabaticTrajectory(const SpectralPath& path, std::size_t level, const Tolerances& tol = {});

  std::size_t level() const noexcept { return level_; }
  const TimeGrid& grid() const noexcept { return grid_; }
  const AdiabaticPhase& phase() const noexcept { return phase_; }
  const std::vector<QuantumState>& states() const noexcept { return states_; }
  const QuantumState& at(std::size_t k) const { return states_.at(k); }

 private:
  std::size_t level_;
  TimeGrid grid_;
  AdiabaticPhase phase_;
  std::vector<QuantumState> states_;
};

/// e^{i alpha_n(t_k)} |E_n(t_k)>.
QuantumState adiabatic_state(const SpectralPath& path, std::size_t level, std::size_t k,
                             const Tolerances& tol = {});

struct FidelityCurve {
  std::vector<double> values;
  double min = 1.0;
  double final = 1.0;
};

/// Pointwise |<psi_adi(t_k)|psi(t_k)>|.
FidelityCurve validity_fidelity(const AdiabaticTrajectory& adi, const StateTrajectory& exact);

/// |<E_n(t)|U(t)|E_n(0)>|, the reduced form for a system evolved from |E_n(0)>.
FidelityCurve reduced_fidelity_primal(const SpectralPath& path, const PropagatorPath& prop,
                                      std::size_t level);

/// |<E^a_n(t)|E^a_n(0)>|, the reduced form of the dual's fidelity expressed
/// through the primal spectrum.
FidelityCurve reduced_fidelity_dual(const SpectralPath& primal_path, std::size_t primal_level);

/// Per grid point, an N x N table of non-negative ratios with zero diagonal.
struct RatioTable {
  std::vector<Eigen::MatrixXd> entries;
  std::vector<double> max_per_step;
  double max = 0.0;
};

/// |<E_m|dE_n/dt> / (E_m - E_n)| from finite-difference eigenvector derivatives.
RatioTable condition_pointwise(const SpectralPath& path, const Tolerances& tol = {});

/// |<E_m|dH/dt|E_n>| / |E_m - E_n|^2 from the model's dH/dt.
RatioTable condition_hdot(const HamiltonianModel& model, const SpectralPath& path,
                          const Tolerances& tol = {});

/// max |<E_m|dH/dt|E_n>/(E_n - E_m)|  vs  min |E_n - E_m|, over t and m != n.
struct LidarCondition {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.1;
  bool satisfied = true;  // lhs <= margin * rhs
};

LidarCondition condition_lidar(const SpectralPath& path, const HamiltonianModel& model,
                               double margin = 0.1, const Tolerances& tol = {});

/// max |<E_m|dH/dt|E_n>| / (min |E_m - E_n|)^2, over t and m != n.
double condition_roland(const SpectralPath& path, const HamiltonianModel& model,
                        const Tolerances& tol = {});

/// Both sides of the inconsistency chain at every grid point:
///   exact     = <E_n(0)|U U^dag|E_n(0)>                        (identically 1)
///   adiabatic = exp(-int_0^t <E_n|dE_n/dt'> dt') <E_n(0)|E_n(t)>
struct MarzlinSandersValues {
  std::vector<Complex> exact;
  std::vector<Complex> adiabatic;

  Complex exact_final() const { return exact.back(); }
  Complex adiabatic_final() const { return adiabatic.back(); }
};

MarzlinSandersValues marzlin_sanders_residual(const SpectralPath& path, const PropagatorPath& prop,
                                              std::size_t level, const Tolerances& tol = {});

struct ConditionReport {
  std::size_t level = 0;
  double margin = 0.1;
  RatioTable pointwise;
  double pointwise_ratio_max = 0.0;
  double hdot_ratio_max = 0.0;
  LidarCondition lidar;
  double roland_epsilon = 0.0;
  AdiabaticPhase phase;
  FidelityCurve fidelity;
  double fidelity_min = 1.0;
  double fidelity_final = 1.0;

  bool conditions_satisfied() const noexcept { return pointwise_ratio_max <= margin; }
  bool approximation_valid() const noexcept { return fidelity_min >= 1.0 - margin; }
};

/// Evaluates every condition variant on `path` and the validity fidelity of
/// `exact` against the adiabatic trajectory of `level`.
ConditionReport audit(const HamiltonianModel& model, const SpectralPath& path,
                      const StateTrajectory& exact, std::size_t level, double margin = 0.1,
                      const Tolerances& tol = {});

}  // namespace adiabat
