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

// The dual system H^b(t) = -U^dag(t) H^a(t) U(t) and residual checks of the
// correspondences between the two systems.

#include "adiabat/audit.hpp"
#include "adiabat/core.hpp"
#include "adiabat/propagator.hpp"
#include "adiabat/spectral.hpp"

#include <memory>
#include <span>
#include <vector>

namespace adiabat {

/// Builds H^b from a primal model and its propagator on a grid. Off-grid
/// times take one extra midpoint sub-step from the nearest stored U; times
/// more than one grid step outside [0, T] are rejected.
///
/// When the primal supplies dH/dt, the dual derivative is -U^dag dH^a/dt U
/// (the U-dependent terms cancel because U solves the Schroedinger equation);
/// otherwise the model falls back to finite differences.
HamiltonianModel dual_hamiltonian(const HamiltonianModel& model, const PropagatorPath& prop);

class DualSystem {
 public:
  DualSystem(HamiltonianModel primal, PropagatorPath primal_propagator);

  /// Propagates `primal` on `grid` and wraps the result.
  static DualSystem build(const HamiltonianModel& primal, const TimeGrid& grid,
                          const Tolerances& tol = {});

  const HamiltonianModel& primal() const noexcept { return primal_; }
  const PropagatorPath& primal_propagator() const noexcept { return *propagator_; }
  const HamiltonianModel& dual_model() const noexcept { return dual_; }
  const TimeGrid& grid() const noexcept { return propagator_->grid(); }

 private:
  HamiltonianModel primal_;
  std::shared_ptr<const PropagatorPath> propagator_;
  HamiltonianModel dual_;
};

/// b-level index paired with each a-level, from eigenvector overlap at t = 0
/// where U = I. Throws a tracking error when the pairing is ambiguous.
std::vector<std::size_t> match_dual_levels(const SpectralPath& path_a, const SpectralPath& path_b,
                                           const Tolerances& tol = {});

/// Level map implied by E^b = -E^a under ascending labels: n -> N-1-n.
std::vector<std::size_t> reversed_levels(std::size_t n);

struct EigenCorrespondence {
  double eigenvalue_residual = 0.0;  // max |E^b + E^a|
  double overlap_deficit = 0.0;      // max 1 - |<E^b_n|U^dag|E^a_n>|
};

EigenCorrespondence verify_eigen_correspondence(const DualSystem& dual, const SpectralPath& path_a,
                                                const SpectralPath& path_b,
                                                const Tolerances& tol = {});

/// Dual eigenvectors from path_b, relabelled to a-level order and re-phased
/// so that |E^b_n> = U^dag |E^a_n> exactly in phase.
SpectralPath transported_dual_path(const DualSystem& dual, const SpectralPath& path_a,
                                   const SpectralPath& path_b, const Tolerances& tol = {});

struct CouplingIdentity {
  // max |<E^b_m|dE^b_n> - (i E^a_m delta_mn + <E^a_m|dE^a_n>)| in the transported gauge
  double transported_residual = 0.0;
  // max ||<E^b_m|dE^b_n>| - |<E^a_m|dE^a_n>||, m != n, in path_b's own gauge
  double modulus_residual = 0.0;
};

CouplingIdentity verify_coupling_identity(const DualSystem& dual, const SpectralPath& path_a,
                                          const SpectralPath& path_b, const Tolerances& tol = {});

struct ConditionEquivalence {
  bool equivalent = false;
  double max_deviation = 0.0;
};

/// Entry-by-entry comparison of pointwise ratio tables; report_b's level
/// level_map[n] is compared with report_a's level n.
ConditionEquivalence verify_condition_equivalence(const ConditionReport& report_a,
                                                  const ConditionReport& report_b,
                                                  std::span<const std::size_t> level_map,
                                                  double tolerance = 1e-6);

/// Same, with the reversed level map.
ConditionEquivalence verify_condition_equivalence(const ConditionReport& report_a,
                                                  const ConditionReport& report_b,
                                                  double tolerance = 1e-6);

/// max_k ||U^b(t_k) U^a(t_k) - I||_F.
double conjugacy_residual(const PropagatorPath& prop_b, const PropagatorPath& prop_a);

}  // namespace adiabat
