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

#include "adiabat/runner.hpp"

#include "adiabat/audit.hpp"
#include "adiabat/dual.hpp"
#include "adiabat/propagator.hpp"
#include "adiabat/sampled.hpp"
#include "adiabat/spectral.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

namespace adiabat::runner {
namespace {

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"model", {"type", "omega0", "omega", "theta", "path"}},
      {"grid", {"t_end", "steps"}},
      {"audit", {"level", "margin", "verify_tolerance", "unitarity_tolerance",
                 "degeneracy_threshold"}},
      {"output", {"csv_path", "summary_path", "plot_script"}},
      {"sweep", {"parameter", "values"}},
  };
  return keys;
}

std::string key_name(const std::string& section, const std::string& key) {
  return section + "." + key;
}

std::optional<double> get_number(const config::Document& doc, const std::string& section,
                                 const std::string& key) {
  const config::Value* v = doc.find(section, key);
  if (!v) return std::nullopt;
  if (const auto* d = std::get_if<double>(v)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(v)) return static_cast<double>(*i);
  throw Error(ErrorKind::usage, "config: " + key_name(section, key) + " must be a number");
}

double require_number(const config::Document& doc, const std::string& section,
                      const std::string& key) {
  const auto v = get_number(doc, section, key);
  if (!v) throw Error(ErrorKind::usage, "config: missing " + key_name(section, key));
  return *v;
}

std::optional<std::int64_t> get_integer(const config::Document& doc, const std::string& section,
                                        const std::string& key) {
  const config::Value* v = doc.find(section, key);
  if (!v) return std::nullopt;
  if (const auto* i = std::get_if<std::int64_t>(v)) return *i;
  throw Error(ErrorKind::usage, "config: " + key_name(section, key) + " must be an integer");
}

std::optional<std::string> get_string(const config::Document& doc, const std::string& section,
                                      const std::string& key) {
  const config::Value* v = doc.find(section, key);
  if (!v) return std::nullopt;
  if (const auto* s = std::get_if<std::string>(v)) return *s;
  throw Error(ErrorKind::usage, "config: " + key_name(section, key) + " must be a string");
}

void require_positive(double v, const std::string& name) {
  if (!(v > 0.0)) throw Error(ErrorKind::usage, "config: " + name + " must be positive");
}

HamiltonianModel make_primal(const RunConfig& cfg) {
  switch (cfg.model_type) {
    case ModelType::spin_half:
    case ModelType::dual_of_spin_half:
      return spinhalf::hamiltonian_a(cfg.spin);
    case ModelType::sampled: {
      SampledTable table = read_sampled_table(cfg.sampled_path);
      if (table.times.empty() || table.times.front() > 0.0 || table.times.back() < cfg.t_end) {
        throw Error(ErrorKind::usage, "sampled table does not cover the grid [0, t_end]");
      }
      return sampled_model(std::move(table), cfg.tol);
    }
  }
  throw Error(ErrorKind::usage, "unknown model type");
}

// Full audit of one system started in its eigenstate `level` at t = 0.
struct AuditedSystem {
  PropagatorPath prop;
  SpectralPath path;
  ConditionReport report;
};

AuditedSystem audit_system(const HamiltonianModel& model, const TimeGrid& grid, std::size_t level,
                           const RunConfig& cfg, std::optional<PropagatorPath> prop = {},
                           std::optional<SpectralPath> tracked = {}) {
  if (level >= model.dimension()) throw Error(ErrorKind::usage, "config: audit.level out of range");
  PropagatorPath p = prop ? std::move(*prop) : propagate(model, grid, cfg.tol);
  SpectralPath path = tracked ? std::move(*tracked) : track(model, grid, cfg.tol);
  const StateTrajectory exact = evolve_state(p, QuantumState(path.eigenvector(level, 0), cfg.tol));
  ConditionReport report = audit(model, path, exact, level, cfg.margin, cfg.tol);
  return AuditedSystem{std::move(p), std::move(path), std::move(report)};
}

std::size_t primal_level_for(const std::vector<std::size_t>& map, std::size_t dual_level) {
  const auto it = std::find(map.begin(), map.end(), dual_level);
  return static_cast<std::size_t>(it - map.begin());
}

void add_header(RunSummary& s, const char* command, const RunConfig& cfg) {
  s.add("command", command);
  s.add("model", to_string(cfg.model_type));
  s.add("level", static_cast<double>(cfg.level));
  s.add("t_end", cfg.t_end);
  s.add("steps", static_cast<double>(cfg.steps));
}

void add_conditions(RunSummary& s, const ConditionReport& r) {
  s.add("cond_pointwise_max", r.pointwise_ratio_max);
  s.add("cond_hdot_max", r.hdot_ratio_max);
  s.add("lidar_lhs", r.lidar.lhs);
  s.add("lidar_rhs", r.lidar.rhs);
  s.add("lidar_satisfied", r.lidar.satisfied ? "true" : "false");
  s.add("roland_epsilon", r.roland_epsilon);
  s.add("fidelity_min", r.fidelity_min);
  s.add("fidelity_final", r.fidelity_final);
}

std::string verdict(const ConditionReport& r) {
  std::string v = r.conditions_satisfied() ? "conditions satisfied" : "conditions violated";
  v += r.approximation_valid() ? "; adiabatic approximation valid"
                               : "; adiabatic approximation invalid";
  return v;
}

spinhalf::SpinHalfParams swept(spinhalf::SpinHalfParams p, const std::string& name, double value) {
  if (name == "omega0") p.omega0 = value;
  else if (name == "omega") p.omega = value;
  else p.theta = value;
  return p;
}

}  // namespace

const char* to_string(ModelType type) noexcept {
  switch (type) {
    case ModelType::spin_half: return "spin_half";
    case ModelType::dual_of_spin_half: return "dual_of_spin_half";
    case ModelType::sampled: return "sampled";
  }
  return "unknown";
}

RunConfig RunConfig::from_document(const config::Document& doc,
                                   const std::filesystem::path& base_dir) {
  for (const auto& [section, table] : doc.sections()) {
    const auto known = known_keys().find(section);
    if (known == known_keys().end()) {
      throw Error(ErrorKind::usage, "config: unknown section [" + section + "]");
    }
    for (const auto& entry : table) {
      if (!known->second.count(entry.first)) {
        throw Error(ErrorKind::usage, "config: unknown key " + key_name(section, entry.first));
      }
    }
  }

  RunConfig cfg;
  const std::string type = get_string(doc, "model", "type").value_or("");
  if (type == "spin_half") cfg.model_type = ModelType::spin_half;
  else if (type == "dual_of_spin_half") cfg.model_type = ModelType::dual_of_spin_half;
  else if (type == "sampled") cfg.model_type = ModelType::sampled;
  else throw Error(ErrorKind::usage, "config: model.type must be spin_half, dual_of_spin_half or sampled");

  if (cfg.model_type == ModelType::sampled) {
    const auto path = get_string(doc, "model", "path");
    if (!path || path->empty()) throw Error(ErrorKind::usage, "config: missing model.path");
    cfg.sampled_path = std::filesystem::path(*path);
    if (cfg.sampled_path.is_relative() && !base_dir.empty()) cfg.sampled_path = base_dir / cfg.sampled_path;
  } else {
    cfg.spin.omega0 = require_number(doc, "model", "omega0");
    cfg.spin.omega = require_number(doc, "model", "omega");
    cfg.spin.theta = require_number(doc, "model", "theta");
    cfg.spin.validate(cfg.model_type == ModelType::dual_of_spin_half);
  }

  cfg.t_end = require_number(doc, "grid", "t_end");
  if (!std::isfinite(cfg.t_end) || !(cfg.t_end > 0.0)) {
    throw Error(ErrorKind::usage, "config: grid.t_end must be finite and positive");
  }
  const auto steps = get_integer(doc, "grid", "steps");
  if (!steps) throw Error(ErrorKind::usage, "config: missing grid.steps");
  if (*steps < 2) throw Error(ErrorKind::usage, "config: grid.steps must be >= 2");
  cfg.steps = static_cast<std::size_t>(*steps);

  const auto level = get_integer(doc, "audit", "level").value_or(0);
  if (level < 0) throw Error(ErrorKind::usage, "config: audit.level must be >= 0");
  cfg.level = static_cast<std::size_t>(level);
  cfg.margin = get_number(doc, "audit", "margin").value_or(cfg.margin);
  if (!(cfg.margin > 0.0 && cfg.margin < 1.0)) {
    throw Error(ErrorKind::usage, "config: audit.margin must lie in (0, 1)");
  }
  cfg.verify_tolerance = get_number(doc, "audit", "verify_tolerance").value_or(cfg.verify_tolerance);
  require_positive(cfg.verify_tolerance, "audit.verify_tolerance");
  cfg.tol.unitarity_accumulated =
      get_number(doc, "audit", "unitarity_tolerance").value_or(cfg.tol.unitarity_accumulated);
  require_positive(cfg.tol.unitarity_accumulated, "audit.unitarity_tolerance");
  cfg.tol.degeneracy = get_number(doc, "audit", "degeneracy_threshold").value_or(cfg.tol.degeneracy);
  require_positive(cfg.tol.degeneracy, "audit.degeneracy_threshold");

  cfg.csv_path = get_string(doc, "output", "csv_path").value_or("");
  cfg.summary_path = get_string(doc, "output", "summary_path").value_or("");
  cfg.plot_script = get_string(doc, "output", "plot_script").value_or("");

  cfg.sweep_parameter = get_string(doc, "sweep", "parameter").value_or("");
  if (const config::Value* v = doc.find("sweep", "values")) {
    const auto* values = std::get_if<std::vector<double>>(v);
    if (!values) throw Error(ErrorKind::usage, "config: sweep.values must be an array of numbers");
    cfg.sweep_values = *values;
  }
  return cfg;
}

void RunSummary::add(std::string key, double value) { entries_.emplace_back(std::move(key), value); }

void RunSummary::add(std::string key, std::string value) {
  entries_.emplace_back(std::move(key), std::move(value));
}

const double* RunSummary::number(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return std::get_if<double>(&v);
  }
  return nullptr;
}

const std::string* RunSummary::text(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return std::get_if<std::string>(&v);
  }
  return nullptr;
}

std::string RunSummary::render() const {
  std::string out;
  for (const auto& [k, v] : entries_) {
    out += k;
    out += " = ";
    if (const auto* d = std::get_if<double>(&v)) {
      out += format_number(*d);
    } else {
      out += '"';
      out += std::get<std::string>(v);
      out += '"';
    }
    out += '\n';
  }
  return out;
}

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

RunOutput run_simulate(const RunConfig& cfg) {
  const TimeGrid grid(cfg.t_end, cfg.steps);
  const HamiltonianModel primal = make_primal(cfg);

  std::optional<AuditedSystem> sys;
  FidelityCurve reduced;
  if (cfg.model_type == ModelType::dual_of_spin_half) {
    const DualSystem dual(primal, propagate(primal, grid, cfg.tol));
    // The dual's exact propagator is U^dagger of the primal one.
    sys = audit_system(dual.dual_model(), grid, cfg.level, cfg,
                       hermitian_conjugate_path(dual.primal_propagator()));
    const SpectralPath path_a = track(primal, grid, cfg.tol);
    const auto map = match_dual_levels(path_a, sys->path, cfg.tol);
    reduced = reduced_fidelity_dual(path_a, primal_level_for(map, cfg.level));
  } else {
    sys = audit_system(primal, grid, cfg.level, cfg);
    reduced = reduced_fidelity_primal(sys->path, sys->prop, cfg.level);
  }
  const ConditionReport& r = sys->report;

  RunOutput out;
  add_header(out.summary, "simulate", cfg);
  add_conditions(out.summary, r);
  out.summary.add("fidelity_squared_final", r.fidelity_final * r.fidelity_final);
  out.summary.add("fidelity_reduced_min", reduced.min);
  out.summary.add("fidelity_reduced_final", reduced.final);
  out.summary.add("max_unitarity_defect", sys->prop.max_unitarity_defect());
  out.summary.add("verdict", verdict(r));

  std::string& csv = out.csv;
  csv = "t,fidelity,fidelity_squared,cond_pointwise_max,gap_min,phase_dynamic,phase_geometric,"
        "unitarity_defect\n";
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double f = r.fidelity.values[k];
    for (const double v : {grid.time(k), f, f * f, r.pointwise.max_per_step[k],
                           sys->path.frame(k).min_gap, r.phase.dynamic[k], r.phase.geometric[k]}) {
      csv += format_number(v);
      csv += ',';
    }
    csv += format_number(sys->prop.at(k).defect());
    csv += '\n';
  }
  return out;
}

RunOutput run_verify(const RunConfig& cfg) {
  const TimeGrid grid(cfg.t_end, cfg.steps);
  const double h = grid.step();
  const HamiltonianModel primal = make_primal(cfg);
  if (cfg.level >= primal.dimension()) throw Error(ErrorKind::usage, "config: audit.level out of range");

  const DualSystem dual(primal, propagate(primal, grid, cfg.tol));
  const AuditedSystem a =
      audit_system(primal, grid, cfg.level, cfg, dual.primal_propagator());
  SpectralPath path_b = track(dual.dual_model(), grid, cfg.tol);
  const auto map = match_dual_levels(a.path, path_b, cfg.tol);
  const AuditedSystem b = audit_system(dual.dual_model(), grid, map[cfg.level], cfg,
                                       hermitian_conjugate_path(a.prop), std::move(path_b));
  // Independent integration of the dual Hamiltonian, checked against U^dagger.
  const PropagatorPath prop_b = propagate(dual.dual_model(), grid, cfg.tol);

  const EigenCorrespondence eig = verify_eigen_correspondence(dual, a.path, b.path, cfg.tol);
  const CouplingIdentity coup = verify_coupling_identity(dual, a.path, b.path, cfg.tol);
  const ConditionEquivalence eq =
      verify_condition_equivalence(a.report, b.report, map, cfg.verify_tolerance);
  const double conj = conjugacy_residual(prop_b, a.prop);
  const MarzlinSandersValues ms = marzlin_sanders_residual(a.path, a.prop, cfg.level, cfg.tol);

  const double vt = cfg.verify_tolerance;
  const double fd_tol = std::max(vt, 10.0 * h * h);
  constexpr double kExactTol = 1e-10;

  RunOutput out;
  add_header(out.summary, "verify", cfg);
  auto check = [&](const std::string& name, double value, double tolerance) {
    out.summary.add(name, value);
    out.summary.add(name + "_tolerance", tolerance);
    if (!(value <= tolerance)) out.failures.push_back(name);
  };
  check("eigen_eigenvalue_residual", eig.eigenvalue_residual, vt);
  check("eigen_overlap_deficit", eig.overlap_deficit, vt);
  check("coupling_transported_residual", coup.transported_residual, fd_tol);
  check("coupling_modulus_residual", coup.modulus_residual, vt);
  check("condition_equivalence_deviation", eq.max_deviation, vt);
  check("conjugacy_residual", conj, fd_tol);
  const Complex exact = ms.exact_final();
  const Complex adi = ms.adiabatic_final();
  out.summary.add("ms_exact_re", exact.real());
  out.summary.add("ms_exact_im", exact.imag());
  check("ms_exact_deviation", std::abs(exact - 1.0), kExactTol);
  out.summary.add("ms_adiabatic_re", adi.real());
  out.summary.add("ms_adiabatic_im", adi.imag());
  out.summary.add("ms_adiabatic_abs", std::abs(adi));
  out.summary.add("ms_adiabatic_abs_squared", std::norm(adi));
  out.summary.add("cond_pointwise_max_primal", a.report.pointwise_ratio_max);
  out.summary.add("cond_pointwise_max_dual", b.report.pointwise_ratio_max);
  out.summary.add("fidelity_min_primal", a.report.fidelity_min);
  out.summary.add("fidelity_min_dual", b.report.fidelity_min);

  std::string v = "pass";
  if (!out.failures.empty()) {
    v = "fail:";
    for (const auto& f : out.failures) v += " " + f;
  }
  out.summary.add("verdict", v);
  return out;
}

RunOutput run_sweep(const RunConfig& cfg) {
  if (cfg.model_type == ModelType::sampled) {
    throw Error(ErrorKind::usage, "sweep: requires a spin-half model");
  }
  const std::string& name = cfg.sweep_parameter;
  if (name != "omega0" && name != "omega" && name != "theta") {
    throw Error(ErrorKind::usage, "sweep: sweep.parameter must be omega0, omega or theta");
  }
  if (cfg.sweep_values.empty()) throw Error(ErrorKind::usage, "sweep: sweep.values is empty");

  struct Row {
    double value, cond, roland, fid_primal, fid_dual;
  };
  const TimeGrid grid(cfg.t_end, cfg.steps);
  auto run_point = [&cfg, &grid, &name](double value) {
    const spinhalf::SpinHalfParams p = swept(cfg.spin, name, value);
    p.validate(true);
    const HamiltonianModel primal = spinhalf::hamiltonian_a(p);
    const DualSystem dual(primal, propagate(primal, grid, cfg.tol));
    const AuditedSystem a = audit_system(primal, grid, cfg.level, cfg, dual.primal_propagator());
    SpectralPath path_b = track(dual.dual_model(), grid, cfg.tol);
    const auto map = match_dual_levels(a.path, path_b, cfg.tol);
    const AuditedSystem b = audit_system(dual.dual_model(), grid, map[cfg.level], cfg,
                                         hermitian_conjugate_path(a.prop), std::move(path_b));
    return Row{value, b.report.pointwise_ratio_max, b.report.roland_epsilon,
               a.report.fidelity_min, b.report.fidelity_min};
  };

  // Points run concurrently; rows are collected in input order.
  std::vector<std::future<Row>> futures;
  futures.reserve(cfg.sweep_values.size());
  for (const double v : cfg.sweep_values) futures.push_back(std::async(std::launch::async, run_point, v));
  std::vector<Row> rows;
  rows.reserve(futures.size());
  std::exception_ptr first_error;
  for (auto& f : futures) {
    try {
      rows.push_back(f.get());
    } catch (...) {
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);

  RunOutput out;
  add_header(out.summary, "sweep", cfg);
  out.summary.add("sweep_parameter", name);
  out.summary.add("sweep_points", static_cast<double>(rows.size()));
  out.csv = "value,cond_pointwise_max,roland_epsilon,fidelity_min_primal,fidelity_min_dual\n";
  for (const Row& r : rows) {
    out.csv += format_number(r.value) + ',' + format_number(r.cond) + ',' + format_number(r.roland) +
               ',' + format_number(r.fid_primal) + ',' + format_number(r.fid_dual) + '\n';
  }
  return out;
}

void write_outputs(const RunConfig& cfg, const RunOutput& out) {
  auto write_file = [](const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::usage, "cannot open " + path + " for writing");
    f << content;
    if (!f) throw Error(ErrorKind::usage, "failed writing " + path);
  };
  if (!cfg.csv_path.empty() && !out.csv.empty()) {
    if (cfg.csv_path == "-") {
      std::cout << out.csv;
    } else {
      write_file(cfg.csv_path, out.csv);
    }
  }
  if (!cfg.summary_path.empty()) write_file(cfg.summary_path, out.summary.render());
  if (!cfg.plot_script.empty() && !out.csv.empty() && !cfg.csv_path.empty() && cfg.csv_path != "-") {
    const std::string header = out.csv.substr(0, out.csv.find('\n'));
    std::size_t columns = static_cast<std::size_t>(std::count(header.begin(), header.end(), ',')) + 1;
    std::string gp = "set datafile separator ','\nset key autotitle columnhead\nset xlabel '" +
                     header.substr(0, header.find(',')) + "'\nplot";
    for (std::size_t c = 2; c <= columns; ++c) {
      gp += (c == 2 ? " '" + cfg.csv_path + "'" : std::string(", ''")) + " using 1:" +
            std::to_string(c) + " with lines";
    }
    gp += "\npause -1\n";
    write_file(cfg.plot_script, gp);
  }
}

}  // namespace adiabat::runner
