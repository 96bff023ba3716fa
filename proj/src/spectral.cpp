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

#include "adiabat/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace adiabat {
namespace {

Complex unit_phase(Complex z) {
  const double r = std::abs(z);
  return r > 0.0 ? z / r : Complex(1.0, 0.0);
}

void seed_gauge(Matrix& vectors) {
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    Eigen::Index imax = 0;
    vectors.col(j).cwiseAbs().maxCoeff(&imax);
    vectors.col(j) *= std::conj(unit_phase(vectors(imax, j)));
  }
}

double min_gap_of(const RealVector& values) {
  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    for (Eigen::Index j = i + 1; j < values.size(); ++j) {
      gap = std::min(gap, std::abs(values(i) - values(j)));
    }
  }
  return gap;
}

void check_index(const SpectralPath& path, std::size_t level, std::size_t k) {
  if (level >= path.levels()) throw Error(ErrorKind::usage, "spectral path: level out of range");
  if (k >= path.grid().size()) throw Error(ErrorKind::usage, "spectral path: grid index out of range");
}

// Multiply each column of `next` by a phase so that <prev_j|next_j> > 0.
void transport(const Matrix& prev, Matrix& next) {
  for (Eigen::Index j = 0; j < next.cols(); ++j) {
    const Complex ov = prev.col(j).dot(next.col(j));
    next.col(j) *= std::conj(unit_phase(ov));
  }
}

}  // namespace

SpectralPath::SpectralPath(TimeGrid grid, std::vector<SpectralFrame> frames, Gauge gauge)
    : grid_(grid), frames_(std::move(frames)), gauge_(gauge) {
  if (frames_.size() != grid_.size()) {
    throw Error(ErrorKind::usage, "spectral path: one frame per grid point required");
  }
  for (const auto& f : frames_) {
    if (f.levels() != frames_.front().levels() ||
        f.eigenvectors.cols() != static_cast<Eigen::Index>(f.levels())) {
      throw Error(ErrorKind::usage, "spectral path: inconsistent frame dimensions");
    }
  }
}

SpectralFrame decompose(const Matrix& hermitian, double t, const Tolerances& tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::numerical, "decompose: eigensolver did not converge");
  }
  SpectralFrame f;
  f.t = t;
  f.eigenvalues = solver.eigenvalues();
  f.eigenvectors = solver.eigenvectors();
  seed_gauge(f.eigenvectors);
  f.min_gap = min_gap_of(f.eigenvalues);
  if (!(f.min_gap > tol.degeneracy)) {
    std::ostringstream os;
    os << "decompose: spectral gap " << f.min_gap << " at t = " << t
       << " is below the degeneracy threshold " << tol.degeneracy;
    throw Error(ErrorKind::degeneracy, os.str());
  }
  return f;
}

SpectralPath track(const HamiltonianModel& model, const TimeGrid& grid, const Tolerances& tol) {
  std::vector<SpectralFrame> frames;
  frames.reserve(grid.size());
  frames.push_back(decompose(model.evaluate(0.0), 0.0, tol));
  const auto n = static_cast<Eigen::Index>(model.dimension());

  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double t = grid.time(k);
    SpectralFrame raw = decompose(model.evaluate(t), t, tol);
    const SpectralFrame& prev = frames.back();
    const Eigen::MatrixXd overlap = (prev.eigenvectors.adjoint() * raw.eigenvectors).cwiseAbs();

    std::vector<Eigen::Index> pick(static_cast<std::size_t>(n));
    std::vector<bool> taken(static_cast<std::size_t>(n), false);
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::Index best = 0;
      const double top = overlap.row(i).maxCoeff(&best);
      double second = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j != best) second = std::max(second, overlap(i, j));
      }
      if (top - second < tol.tracking_ambiguity || taken[static_cast<std::size_t>(best)]) {
        std::ostringstream os;
        os << "track: ambiguous level pairing at t = " << t << " (overlaps " << top << ", "
           << second << ")";
        throw Error(ErrorKind::tracking, os.str());
      }
      taken[static_cast<std::size_t>(best)] = true;
      pick[static_cast<std::size_t>(i)] = best;
    }

    SpectralFrame f;
    f.t = t;
    f.min_gap = raw.min_gap;
    f.eigenvalues.resize(n);
    f.eigenvectors.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      f.eigenvalues(i) = raw.eigenvalues(pick[static_cast<std::size_t>(i)]);
      f.eigenvectors.col(i) = raw.eigenvectors.col(pick[static_cast<std::size_t>(i)]);
    }
    transport(prev.eigenvectors, f.eigenvectors);
    frames.push_back(std::move(f));
  }
  return SpectralPath(grid, std::move(frames), Gauge::parallel_transport);
}

SpectralPath realign_parallel_transport(const SpectralPath& path) {
  std::vector<SpectralFrame> frames = path.frames();
  seed_gauge(frames.front().eigenvectors);
  for (std::size_t k = 1; k < frames.size(); ++k) {
    transport(frames[k - 1].eigenvectors, frames[k].eigenvectors);
  }
  return SpectralPath(path.grid(), std::move(frames), Gauge::parallel_transport);
}

Vector eigen_derivative(const SpectralPath& path, std::size_t level, std::size_t k) {
  check_index(path, level, k);
  const double h = path.grid().step();
  const std::size_t last = path.grid().steps();
  if (k == 0) {
    return (-3.0 * path.eigenvector(level, 0) + 4.0 * path.eigenvector(level, 1) -
            path.eigenvector(level, 2)) / (2.0 * h);
  }
  if (k == last) {
    return (3.0 * path.eigenvector(level, last) - 4.0 * path.eigenvector(level, last - 1) +
            path.eigenvector(level, last - 2)) / (2.0 * h);
  }
  return (path.eigenvector(level, k + 1) - path.eigenvector(level, k - 1)) / (2.0 * h);
}

Complex coupling_via_derivative(const SpectralPath& path, std::size_t m, std::size_t n,
                                std::size_t k) {
  check_index(path, m, k);
  return path.eigenvector(m, k).dot(eigen_derivative(path, n, k));
}

Matrix hdot_in_eigenbasis(const HamiltonianModel& model, const SpectralPath& path, std::size_t k) {
  if (model.dimension() != path.levels()) {
    throw Error(ErrorKind::usage, "hdot_in_eigenbasis: model/path dimension mismatch");
  }
  const SpectralFrame& f = path.frame(k);
  return f.eigenvectors.adjoint() * model.derivative(f.t, path.grid().step()) * f.eigenvectors;
}

Complex coupling_via_hdot(const HamiltonianModel& model, const SpectralPath& path,
                          std::size_t m, std::size_t n, std::size_t k, const Tolerances& tol) {
  check_index(path, m, k);
  check_index(path, n, k);
  if (m == n) throw Error(ErrorKind::usage, "coupling_via_hdot: requires m != n");
  const double gap = path.eigenvalue(n, k) - path.eigenvalue(m, k);
  if (!(std::abs(gap) > tol.degeneracy)) {
    throw Error(ErrorKind::degeneracy, "coupling_via_hdot: degenerate level pair");
  }
  const Matrix v = hdot_in_eigenbasis(model, path, k);
  return v(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n)) / gap;
}

}  // namespace adiabat
