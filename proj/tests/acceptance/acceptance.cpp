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

// Acceptance suite: one PASS/FAIL line per criterion, thresholds pinned below.
// Usage: adiabat-acceptance [--criterion N]

#include "../fixtures.hpp"
#include "../oracles.hpp"

#include "adiabat/adiabat.h"
#include "adiabat/audit.hpp"
#include "adiabat/config.hpp"
#include "adiabat/dual.hpp"
#include "adiabat/propagator.hpp"
#include "adiabat/runner.hpp"
#include "adiabat/spectral.hpp"
#include "adiabat/spinhalf.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#ifndef ADIABAT_SOURCE_DIR
#define ADIABAT_SOURCE_DIR "."
#endif

using namespace adiabat;
namespace sh = adiabat::spinhalf;
namespace rn = adiabat::runner;

namespace {

constexpr double kPi = std::numbers::pi;

// Pinned thresholds.
constexpr double kFidelityLawTol = 1e-6;
constexpr double kCriterion1Seconds = 10.0;
constexpr double kCondThreshold = 0.005;
constexpr double kFinalFidelitySquaredMax = 1e-6;
constexpr double kRolandRelativeTol = 1e-8;
constexpr double kPropagatorTol = 1e-6;
constexpr double kOrderTarget = 2.0;
constexpr double kOrderTol = 0.2;
constexpr double kCriterion4Seconds = 5.0;
constexpr double kTableTol = 1e-6;
constexpr int kRandomModels = 20;
constexpr double kModulusTol = 1e-6;
constexpr double kPrimalFidelityMin = 0.999;
constexpr double kExactValueTol = 1e-10;
constexpr double kUnitarityTol = 1e-8;
constexpr double kGaugeTol = 1e-9;
constexpr double kOmega0IndependenceTol = 1e-10;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string num(double v) { return rn::format_number(v); }

double fd_budget(double h) { return std::max(1e-6, 10.0 * h * h); }

double law(double omega, double theta, double t) {
  const double s = std::sin(theta) * std::sin(0.5 * omega * t);
  return 1.0 - s * s;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<std::vector<double>> csv_rows(const std::string& csv) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

rn::RunConfig spin_config(const char* type, double omega0, double omega, double theta,
                          double t_end, long steps) {
  std::ostringstream os;
  os << "[model]\ntype = \"" << type << "\"\nomega0 = " << num(omega0) << "\nomega = " << num(omega)
     << "\ntheta = " << num(theta) << "\n[grid]\nt_end = " << num(t_end) << "\nsteps = " << steps
     << "\n";
  return rn::RunConfig::from_document(config::Document::parse(os.str()));
}

// Counterexample run shared by criteria 1 and 2.
struct CounterexampleRun {
  rn::RunOutput out;
  double seconds;
};

const CounterexampleRun& counterexample() {
  static const CounterexampleRun run = [] {
    const auto cfg = spin_config("dual_of_spin_half", 1.0, 0.01, kPi / 2, 2.0 * kPi / 0.01, 200000);
    const auto start = std::chrono::steady_clock::now();
    rn::RunOutput out = rn::run_simulate(cfg);
    return CounterexampleRun{std::move(out), seconds_since(start)};
  }();
  return run;
}

Outcome criterion1() {
  const CounterexampleRun& run = counterexample();
  double worst = 0.0;
  for (const auto& row : csv_rows(run.out.csv)) {
    worst = std::max(worst, std::abs(row[2] - law(0.01, kPi / 2, row[0])));
  }
  const bool pass = worst <= kFidelityLawTol && run.seconds < kCriterion1Seconds;
  return {pass, "fidelity law: max |F^2 - (1 - sin^2 theta sin^2(omega t/2))| = " + num(worst) +
                    " (<= " + num(kFidelityLawTol) + "), runtime " + num(run.seconds) + " s (< " +
                    num(kCriterion1Seconds) + " s)"};
}

Outcome criterion2() {
  const CounterexampleRun& run = counterexample();
  const double cond = *run.out.summary.number("cond_pointwise_max");
  const auto rows = csv_rows(run.out.csv);
  const auto& mid = rows[rows.size() / 2];  // omega t = pi
  const double f2 = mid[2];
  double interior = 0.0;
  for (std::size_t k = 1; k + 1 < rows.size(); ++k) interior = std::max(interior, rows[k][3]);
  const bool pass = cond <= kCondThreshold && f2 <= kFinalFidelitySquaredMax;
  return {pass, "insufficiency: cond_pointwise_max = " + num(cond) + " (<= " + num(kCondThreshold) +
                    "; interior grid max " + num(interior) + ") and F^2 at omega t = pi (t = " +
                    num(mid[0]) + ") = " + num(f2) + " (<= " + num(kFinalFidelitySquaredMax) + ")"};
}

Outcome criterion3() {
  const double omega0 = 1.0, omega = 0.01, theta = kPi / 2;
  const auto cfg = spin_config("dual_of_spin_half", omega0, omega, theta, kPi / omega, 100000);
  const rn::RunOutput out = rn::run_simulate(cfg);
  const double eps = *out.summary.number("roland_epsilon");
  const double stated = omega * std::sin(theta) / omega0;
  const double rel = std::abs(eps - stated) / stated;
  const double f_final = *out.summary.number("fidelity_final");
  const bool matches = rel <= kRolandRelativeTol;
  const bool violated = f_final < 1.0 - eps * eps;
  return {matches && violated,
          "Roland form: epsilon = " + num(eps) + " vs omega sin(theta)/omega0 = " + num(stated) +
              " (relative deviation " + num(rel) + ", <= " + num(kRolandRelativeTol) +
              "); final fidelity " + num(f_final) + " < 1 - epsilon^2 = " + num(1.0 - eps * eps) +
              (violated ? " holds" : " fails")};
}

Outcome criterion4() {
  const sh::SpinHalfParams p{1.0, 0.1, kPi / 3};
  const auto model = sh::hamiltonian_a(p);
  const Matrix exact = sh::propagator_analytic(p, 50.0).matrix();
  const auto start = std::chrono::steady_clock::now();
  std::vector<double> log_h, log_err;
  double err_fine = 0.0;
  for (std::size_t steps : {6250u, 12500u, 25000u, 50000u}) {
    const PropagatorPath path = propagate(model, TimeGrid(50.0, steps));
    const double err = (path.final().matrix() - exact).norm();
    log_h.push_back(std::log(50.0 / static_cast<double>(steps)));
    log_err.push_back(std::log(err));
    err_fine = err;
  }
  const double secs = seconds_since(start);
  const double n = static_cast<double>(log_h.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < log_h.size(); ++i) {
    sx += log_h[i];
    sy += log_err[i];
    sxx += log_h[i] * log_h[i];
    sxy += log_h[i] * log_err[i];
  }
  const double order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const bool pass = err_fine <= kPropagatorTol && std::abs(order - kOrderTarget) <= kOrderTol &&
                    secs < kCriterion4Seconds;
  return {pass, "propagator: ||U(T) - U_exact(T)||_F = " + num(err_fine) + " (<= " +
                    num(kPropagatorTol) + "), fitted order " + num(order) + " (2 +/- 0.2), runtime " +
                    num(secs) + " s (< " + num(kCriterion4Seconds) + " s)"};
}

// Primal and dual audits on a shared grid.
struct DualAudit {
  SpectralPath path_a, path_b;
  std::vector<std::size_t> map;
  ConditionReport report_a, report_b;
  double max_unitarity;
};

DualAudit dual_audit(const HamiltonianModel& primal, const DualSystem& dual, std::size_t level) {
  const TimeGrid& grid = dual.grid();
  SpectralPath a = track(primal, grid);
  SpectralPath b = track(dual.dual_model(), grid);
  auto map = match_dual_levels(a, b);
  const PropagatorPath prop_b = propagate(dual.dual_model(), grid);
  const auto exact_a =
      evolve_state(dual.primal_propagator(), QuantumState(a.eigenvector(level, 0)));
  const auto exact_b = evolve_state(prop_b, QuantumState(b.eigenvector(map[level], 0)));
  ConditionReport ra = audit(primal, a, exact_a, level);
  ConditionReport rb = audit(dual.dual_model(), b, exact_b, map[level]);
  const double defect =
      std::max(dual.primal_propagator().max_unitarity_defect(), prop_b.max_unitarity_defect());
  return {std::move(a), std::move(b), std::move(map), std::move(ra), std::move(rb), defect};
}

Outcome criterion5() {
  const sh::SpinHalfParams p{1.0, 0.1, kPi / 3};
  const auto primal = sh::hamiltonian_a(p);
  const DualSystem dual = DualSystem::build(primal, TimeGrid(50.0, 50000));
  const DualAudit s = dual_audit(primal, dual, 0);
  const double spin_dev = verify_condition_equivalence(s.report_a, s.report_b, s.map).max_deviation;

  std::mt19937_64 rng(20260101);
  double random_dev = 0.0;
  for (int i = 0; i < kRandomModels; ++i) {
    const auto m = oracle::random_smooth_model(rng);
    const auto model = m.model();
    const DualSystem d = DualSystem::build(model, TimeGrid(5.0, 5000));
    const DualAudit r = dual_audit(model, d, 1);
    random_dev = std::max(
        random_dev, verify_condition_equivalence(r.report_a, r.report_b, r.map).max_deviation);
  }
  const bool pass = spin_dev <= kTableTol && random_dev <= kTableTol;
  return {pass, "condition equivalence: spin-half max table deviation " + num(spin_dev) +
                    ", " + std::to_string(kRandomModels) + " random 3-level models " +
                    num(random_dev) + " (<= " + num(kTableTol) + ")"};
}

Outcome criterion6() {
  const sh::SpinHalfParams p{1.0, 0.1, kPi / 3};
  const TimeGrid grid(50.0, 50000);
  const auto primal = sh::hamiltonian_a(p);
  const DualSystem dual = DualSystem::build(primal, grid);
  const SpectralPath a = track(primal, grid);
  const SpectralPath b = track(dual.dual_model(), grid);
  const CouplingIdentity pt = verify_coupling_identity(dual, a, b);

  std::mt19937_64 rng(606);
  const SpectralPath a2 = fixture::smooth_regauge(a, rng);
  const SpectralPath b2 = fixture::smooth_regauge(b, rng);
  const CouplingIdentity wavy = verify_coupling_identity(dual, a2, b2);
  const CouplingIdentity closed = verify_coupling_identity(dual, fixture::closed_form_path(p, grid), b2);

  const double budget = fd_budget(grid.step());
  const double transported =
      std::max({pt.transported_residual, wavy.transported_residual, closed.transported_residual});
  const double modulus =
      std::max({pt.modulus_residual, wavy.modulus_residual, closed.modulus_residual});
  const bool pass = transported <= budget && modulus <= kModulusTol;
  return {pass, "coupling identity: transported-gauge residual " + num(transported) + " (<= " +
                    num(budget) + "), modulus residual over three gauges " + num(modulus) + " (<= " +
                    num(kModulusTol) + ")"};
}

Outcome criterion7() {
  const double omega = 0.01;
  const auto cfg = spin_config("spin_half", 100.0 * omega, omega, kPi / 3, 2.0 * kPi / omega, 100000);
  const rn::RunOutput out = rn::run_simulate(cfg);
  const double fmin = *out.summary.number("fidelity_min");
  return {fmin >= kPrimalFidelityMin, "primal validity: fidelity_min = " + num(fmin) + " (>= " +
                                          num(kPrimalFidelityMin) + ")"};
}

Outcome criterion8() {
  const sh::SpinHalfParams p{1.0, 0.01, kPi / 3};
  const TimeGrid grid(kPi / p.omega, 50000);
  const auto model = sh::hamiltonian_a(p);
  const PropagatorPath prop = propagate(model, grid);
  const SpectralPath path = track(model, grid);

  double exact_dev = 0.0, law_dev = 0.0, text_dev = 0.0;
  for (std::size_t level : {std::size_t{0}, std::size_t{1}}) {
    const MarzlinSandersValues ms = marzlin_sanders_residual(path, prop, level);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const double t = grid.time(k);
      const double s_half = std::sin(0.5 * p.theta) * std::sin(0.5 * p.omega * t);
      exact_dev = std::max(exact_dev, std::abs(ms.exact[k] - 1.0));
      law_dev = std::max(law_dev, std::abs(std::norm(ms.adiabatic[k]) - law(p.omega, p.theta, t)));
      text_dev = std::max(text_dev, std::abs(std::norm(ms.adiabatic[k]) - (1.0 - s_half * s_half)));
    }
  }
  std::mt19937_64 rng(808);
  for (int i = 0; i < 5; ++i) {
    const auto m = oracle::random_smooth_model(rng);
    const auto rmodel = m.model();
    const TimeGrid rg(5.0, 2000);
    const MarzlinSandersValues ms =
        marzlin_sanders_residual(track(rmodel, rg), propagate(rmodel, rg), 1);
    for (const Complex& z : ms.exact) exact_dev = std::max(exact_dev, std::abs(z - 1.0));
  }
  // sin^2(theta/2) form must be rejected by the simulation by a wide margin.
  const bool resolved = law_dev <= kFidelityLawTol && text_dev > 1e3 * kFidelityLawTol;
  const bool pass = exact_dev <= kExactValueTol && resolved;
  return {pass, "Marzlin-Sanders: max |exact - 1| = " + num(exact_dev) + " (<= " +
                    num(kExactValueTol) + "), max ||adiabatic|^2 - (1 - sin^2 theta sin^2(omega t/2))| = " +
                    num(law_dev) + " (<= " + num(kFidelityLawTol) +
                    "), deviation from the sin^2(theta/2) variant " + num(text_dev) +
                    (resolved ? " (rejected)" : " (not resolved)")};
}

Outcome criterion9() {
  double unitarity = 0.0, gauge = 0.0, formulas = 0.0, formula_budget = 1.0;
  std::mt19937_64 rng(909);
  for (int i = 0; i < 10; ++i) {
    const auto m = oracle::random_smooth_model(rng);
    const auto model = m.model();
    const TimeGrid grid(6.0, 3000);
    const DualSystem dual = DualSystem::build(model, grid);
    unitarity = std::max({unitarity, dual.primal_propagator().max_unitarity_defect(),
                          propagate(dual.dual_model(), grid).max_unitarity_defect()});
    const SpectralPath path = track(model, grid);
    const SpectralPath scrambled = fixture::scramble_phases(path, rng);
    const SpectralPath realigned = realign_parallel_transport(scrambled);
    formula_budget = fd_budget(grid.step());
    for (std::size_t k = 0; k < grid.size(); k += 7) {
      for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t b = 0; b < 3; ++b) {
          if (a == b) continue;
          const Complex fd = coupling_via_derivative(path, a, b, k);
          gauge = std::max(gauge, std::abs(std::abs(coupling_via_derivative(realigned, a, b, k)) -
                                           std::abs(fd)));
          gauge = std::max(gauge, std::abs(std::abs(coupling_via_hdot(model, scrambled, a, b, k)) -
                                           std::abs(coupling_via_hdot(model, path, a, b, k))));
          formulas = std::max(formulas, std::abs(fd - coupling_via_hdot(model, path, a, b, k)));
        }
      }
    }
  }
  {
    const sh::SpinHalfParams p{1.0, 0.01, kPi / 2};
    const TimeGrid grid(2.0 * kPi / p.omega, 20000);
    const auto model = sh::hamiltonian_a(p);
    const DualSystem dual = DualSystem::build(model, grid);
    unitarity = std::max({unitarity, dual.primal_propagator().max_unitarity_defect(),
                          propagate(dual.dual_model(), grid).max_unitarity_defect()});
  }

  // Closed-form dual fidelity curve, omega0 over two decades.
  double omega0_dev = 0.0;
  for (double theta : {kPi / 3, kPi / 2}) {
    const double omega = 0.01;
    const double t_end = 2.0 * kPi / omega;
    for (int i = 0; i <= 1000; ++i) {
      const double t = t_end * i / 1000.0;
      const sh::SpinHalfParams ref{1.0, omega, theta};
      const double f_ref = fidelity(sh::psi_b_adiabatic(ref, t), sh::psi_b_exact(ref, t));
      for (double omega0 : {0.1, 0.3, 3.0, 10.0}) {
        const sh::SpinHalfParams q{omega0, omega, theta};
        const double f = fidelity(sh::psi_b_adiabatic(q, t), sh::psi_b_exact(q, t));
        omega0_dev = std::max(omega0_dev, std::abs(f - f_ref));
      }
    }
  }
  const bool pass = unitarity <= kUnitarityTol && gauge <= kGaugeTol && formulas <= formula_budget &&
                    omega0_dev <= kOmega0IndependenceTol;
  return {pass, "invariants: unitarity defect " + num(unitarity) + " (<= " + num(kUnitarityTol) +
                    "), |coupling| gauge spread " + num(gauge) + " (<= " + num(kGaugeTol) +
                    "), coupling formula gap " + num(formulas) + " (<= " + num(formula_budget) +
                    "), omega0 dependence of dual fidelity " + num(omega0_dev) + " (<= " +
                    num(kOmega0IndependenceTol) + ")"};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome criterion10() {
  const auto dir = std::filesystem::temp_directory_path() / "adiabat_acceptance_determinism";
  std::filesystem::create_directories(dir);
  const std::string config = std::string(ADIABAT_SOURCE_DIR) + "/configs/dual_counterexample.toml";
  std::vector<std::string> csv_texts;
  for (int run = 0; run < 2; ++run) {
    adiabat_config* cfg = nullptr;
    if (adiabat_config_load(config.c_str(), &cfg) != ADIABAT_OK) {
      return {false, std::string("determinism: cannot load config: ") + adiabat_last_error()};
    }
    const std::string target = "output.csv_path=\"" + (dir / ("run" + std::to_string(run) + ".csv")).string() + "\"";
    adiabat_config_override(cfg, target.c_str());
    adiabat_result* res = nullptr;
    const adiabat_status st = adiabat_run(cfg, ADIABAT_SIMULATE, &res);
    adiabat_config_free(cfg);
    if (st != ADIABAT_OK) return {false, std::string("determinism: run failed: ") + adiabat_last_error()};
    adiabat_result_free(res);
    csv_texts.push_back(read_file(dir / ("run" + std::to_string(run) + ".csv")));
  }
  std::filesystem::remove_all(dir);
  const bool pass = !csv_texts[0].empty() && csv_texts[0] == csv_texts[1];
  return {pass, "determinism: two simulate runs wrote " + std::to_string(csv_texts[0].size()) +
                    " and " + std::to_string(csv_texts[1].size()) + " bytes, " +
                    (pass ? "byte-identical" : "different")};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "Run a single criterion (1-10)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::function<Outcome()>> criteria{
      criterion1, criterion2, criterion3, criterion4, criterion5,
      criterion6, criterion7, criterion8, criterion9, criterion10};

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<std::size_t>(only) != i + 1) continue;
    Outcome o{false, ""};
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %zu: %s\n", o.pass ? "PASS" : "FAIL", i + 1, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
