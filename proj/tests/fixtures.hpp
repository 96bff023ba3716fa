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

// Shared spin-half fixtures for the test suites.

#include "adiabat/spectral.hpp"
#include "adiabat/spinhalf.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace adiabat::fixture {

/// Closed-form eigenbasis of the spin-half model, ascending order (label two first).
inline SpectralPath closed_form_path(const spinhalf::SpinHalfParams& p, const TimeGrid& grid) {
  std::vector<SpectralFrame> frames;
  frames.reserve(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double t = grid.time(k);
    const auto pairs = spinhalf::eigenpairs_analytic(p, t);
    SpectralFrame f;
    f.t = t;
    f.eigenvalues = RealVector(2);
    f.eigenvalues << pairs[1].value, pairs[0].value;
    f.eigenvectors = Matrix(2, 2);
    f.eigenvectors.col(0) = pairs[1].vector;
    f.eigenvectors.col(1) = pairs[0].vector;
    f.min_gap = pairs[0].value - pairs[1].value;
    frames.push_back(std::move(f));
  }
  return SpectralPath(grid, std::move(frames), Gauge::supplied);
}

/// Independent random phase on every vector of every frame.
inline SpectralPath scramble_phases(const SpectralPath& path, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::vector<SpectralFrame> frames = path.frames();
  for (auto& f : frames) {
    for (Eigen::Index j = 0; j < f.eigenvectors.cols(); ++j) {
      f.eigenvectors.col(j) *= std::polar(1.0, angle(rng));
    }
  }
  return SpectralPath(path.grid(), std::move(frames), Gauge::supplied);
}

/// Smooth phase chi_n(t) = a_n sin(b_n t) applied to every level.
inline SpectralPath smooth_regauge(const SpectralPath& path, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> amp(-2.0, 2.0), freq(0.1, 1.0);
  std::vector<double> a(path.levels()), b(path.levels());
  for (std::size_t n = 0; n < path.levels(); ++n) {
    a[n] = amp(rng);
    b[n] = freq(rng);
  }
  std::vector<SpectralFrame> frames = path.frames();
  for (auto& f : frames) {
    for (std::size_t n = 0; n < path.levels(); ++n) {
      f.eigenvectors.col(static_cast<Eigen::Index>(n)) *= std::polar(1.0, a[n] * std::sin(b[n] * f.t));
    }
  }
  return SpectralPath(path.grid(), std::move(frames), Gauge::supplied);
}

}  // namespace adiabat::fixture
