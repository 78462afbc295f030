// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The dmsec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dmsec/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

#include "json.hpp"

namespace dmsec {

using nlohmann::json;

namespace {

int line_of_offset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + offset, '\n'));
}

// Line of the first occurrence of "key" in the raw text, 0 if absent.
int line_of_key(const std::string& text, const std::string& key) {
  const auto pos = text.find("\"" + key + "\"");
  return pos == std::string::npos ? 0 : line_of_offset(text, pos);
}

class ConfigReader {
 public:
  ConfigReader(const std::string& text, std::string source)
      : text_(text), source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    const int line = key.empty() ? 0 : line_of_key(text_, key);
    std::ostringstream msg;
    msg << source_ << ":";
    if (line > 0) msg << line << ":";
    msg << " " << what;
    throw ConfigError(msg.str());
  }

  void check_keys(const json& obj, const std::set<std::string>& allowed,
                  const std::string& where) const {
    for (const auto& [key, value] : obj.items()) {
      if (!allowed.count(key)) fail(key, "unknown key '" + key + "' in " + where);
    }
  }

  const json& object(const json& parent, const std::string& key) const {
    static const json empty = json::object();
    if (!parent.contains(key)) return empty;
    const json& v = parent.at(key);
    if (!v.is_object()) fail(key, "'" + key + "' must be an object");
    return v;
  }

  void number(const json& obj, const std::string& key, double& out) const {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_number()) fail(key, "'" + key + "' must be a number");
    out = v.get<double>();
    if (!std::isfinite(out)) fail(key, "'" + key + "' must be finite");
  }

  void integer(const json& obj, const std::string& key, int& out) const {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) fail(key, "'" + key + "' must be an integer");
    out = v.get<int>();
  }

  const std::string& text_;
  std::string source_;
};

json complex_array(const CVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out.push_back(v(i).real());
    out.push_back(v(i).imag());
  }
  return out;
}

json complex_matrix(const CMatrix& m) {
  json data = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      data.push_back(m(r, c).real());
      data.push_back(m(r, c).imag());
    }
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

json solution_json(const ExperimentConfig& cfg, const SolutionRecord& record) {
  const BeamformerSolution& s = record.solution;
  const PowerProfile p = cfg.power(record.snr_db);
  const Scenario sc = cfg.scenario();
  return {
      {"method", std::string(to_string(record.method))},
      {"snr_db", record.snr_db},
      {"secrecy_rate", s.secrecy_rate},
      {"rate_bob", rate_at(sc.array(), sc.theta_d(), s.precoder, s.an, p)},
      {"rate_eve", rate_at(sc.array(), sc.theta_e(), s.precoder, s.an, p)},
      {"degenerate", s.degenerate},
      {"precoder", complex_array(s.precoder.vector())},
      {"an_projection", complex_matrix(s.an.matrix())},
      {"alpha", s.an.alpha()},
  };
}

json scenario_json(const ExperimentConfig& cfg) {
  return {{"num_elements", cfg.num_elements},
          {"spacing_over_wavelength", cfg.spacing_over_wavelength},
          {"theta_d_deg", cfg.theta_d_deg},
          {"theta_e_deg", cfg.theta_e_deg},
          {"beta1_sq", cfg.beta1_sq},
          {"beta2_sq", cfg.beta2_sq},
          {"noise_var", cfg.noise_var}};
}

BeamformerSolution solve_method(Method method, const ExperimentConfig& cfg, double snr_db) {
  const Scenario sc = cfg.scenario();
  const PowerProfile p = cfg.power(snr_db);
  switch (method) {
    case Method::max_sr: {
      const Initialization init = cfg.init == Initialization::Kind::random
                                      ? Initialization::random(cfg.effective_seed())
                                      : Initialization::leakage();
      return solve_max_sr(sc, p, init, cfg.ais_options()).first;
    }
    case Method::leakage: return solve_leakage(sc, p);
    case Method::nsp: return solve_nsp(sc, p);
  }
  throw std::logic_error("unhandled method");
}

constexpr Method kMethods[] = {Method::max_sr, Method::leakage, Method::nsp};

}  // namespace

Scenario ExperimentConfig::scenario() const {
  return Scenario(ArrayConfig(num_elements, spacing_over_wavelength), deg_to_rad(theta_d_deg),
                  deg_to_rad(theta_e_deg));
}

PowerProfile ExperimentConfig::power(double snr) const {
  return PowerProfile::from_snr_db(snr, beta1_sq, beta2_sq, noise_var);
}

AisOptions ExperimentConfig::ais_options() const {
  AisOptions o;
  o.delta = delta;
  o.max_outer = max_outer;
  o.gpi_tol = gpi_tol;
  o.gpi_max_iter = gpi_max_iter;
  return o;
}

std::vector<double> ExperimentConfig::angle_grid() const {
  const int count =
      static_cast<int>(std::floor((angle_stop_deg - angle_start_deg) / angle_step_deg + 1e-9)) + 1;
  std::vector<double> grid;
  grid.reserve(count);
  for (int k = 0; k < count; ++k) grid.push_back(deg_to_rad(angle_start_deg + k * angle_step_deg));
  return grid;
}

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
  ConfigReader reader(text, source);
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    std::ostringstream msg;
    msg << source << ":" << line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0)
        << ": malformed JSON: " << e.what();
    throw ConfigError(msg.str());
  }
  if (!root.is_object()) reader.fail("", "top level must be a JSON object");

  reader.check_keys(root,
                    {"description", "num_elements", "spacing_over_wavelength", "theta_d_deg",
                     "theta_e_deg", "beta1_sq", "beta2_sq", "noise_var", "snr_db", "solver",
                     "link", "seed"},
                    "config");

  ExperimentConfig cfg;
  reader.integer(root, "num_elements", cfg.num_elements);
  reader.number(root, "spacing_over_wavelength", cfg.spacing_over_wavelength);
  reader.number(root, "theta_d_deg", cfg.theta_d_deg);
  reader.number(root, "theta_e_deg", cfg.theta_e_deg);
  reader.number(root, "beta1_sq", cfg.beta1_sq);
  reader.number(root, "beta2_sq", cfg.beta2_sq);
  reader.number(root, "noise_var", cfg.noise_var);

  if (root.contains("snr_db")) {
    const json& list = root.at("snr_db");
    if (!list.is_array()) reader.fail("snr_db", "'snr_db' must be an array of numbers");
    cfg.snr_db.clear();
    for (const json& v : list) {
      if (!v.is_number()) reader.fail("snr_db", "'snr_db' must be an array of numbers");
      cfg.snr_db.push_back(v.get<double>());
    }
  }

  if (root.contains("seed")) {
    const json& v = root.at("seed");
    if (!v.is_number_unsigned()) reader.fail("seed", "'seed' must be a nonnegative integer");
    cfg.seed = v.get<std::uint64_t>();
  }

  const json& solver = reader.object(root, "solver");
  reader.check_keys(solver,
                    {"delta", "max_outer", "init", "random_seeds", "gpi_tol", "gpi_max_iter",
                     "snr_db"},
                    "solver");
  reader.number(solver, "delta", cfg.delta);
  reader.integer(solver, "max_outer", cfg.max_outer);
  reader.integer(solver, "random_seeds", cfg.random_seeds);
  reader.number(solver, "gpi_tol", cfg.gpi_tol);
  reader.integer(solver, "gpi_max_iter", cfg.gpi_max_iter);
  reader.number(solver, "snr_db", cfg.converge_snr_db);
  if (solver.contains("init")) {
    const json& v = solver.at("init");
    if (v == "leakage") {
      cfg.init = Initialization::Kind::leakage;
    } else if (v == "random") {
      cfg.init = Initialization::Kind::random;
    } else {
      reader.fail("init", "'init' must be \"leakage\" or \"random\"");
    }
  }

  const json& link = reader.object(root, "link");
  reader.check_keys(link,
                    {"num_symbols", "snr_db", "angle_start_deg", "angle_stop_deg",
                     "angle_step_deg"},
                    "link");
  reader.integer(link, "num_symbols", cfg.num_symbols);
  reader.number(link, "snr_db", cfg.link_snr_db);
  reader.number(link, "angle_start_deg", cfg.angle_start_deg);
  reader.number(link, "angle_stop_deg", cfg.angle_stop_deg);
  reader.number(link, "angle_step_deg", cfg.angle_step_deg);

  // Semantic checks.
  if (cfg.num_elements < 2) reader.fail("num_elements", "'num_elements' must be >= 2");
  if (!(cfg.spacing_over_wavelength > 0.0)) {
    reader.fail("spacing_over_wavelength", "'spacing_over_wavelength' must be positive");
  }
  for (const char* key : {"theta_d_deg", "theta_e_deg"}) {
    const double v = std::string(key) == "theta_d_deg" ? cfg.theta_d_deg : cfg.theta_e_deg;
    if (!(v > 0.0 && v < 180.0)) {
      reader.fail(key, std::string("'") + key + "' must lie strictly inside (0, 180)");
    }
  }
  if (cfg.beta1_sq <= 0.0 || cfg.beta1_sq > 1.0 || cfg.beta2_sq < 0.0 || cfg.beta2_sq >= 1.0) {
    reader.fail("beta1_sq", "power allocation factors out of range");
  }
  if (std::abs(cfg.beta1_sq + cfg.beta2_sq - 1.0) > 1e-12) {
    reader.fail("beta2_sq", "'beta1_sq' + 'beta2_sq' must equal 1");
  }
  if (!(cfg.noise_var > 0.0)) reader.fail("noise_var", "'noise_var' must be positive");
  if (cfg.snr_db.empty()) reader.fail("snr_db", "'snr_db' must not be empty");
  if (!(cfg.delta > 0.0)) reader.fail("delta", "'delta' must be positive");
  if (cfg.max_outer < 1) reader.fail("max_outer", "'max_outer' must be >= 1");
  if (cfg.random_seeds < 0) reader.fail("random_seeds", "'random_seeds' must be >= 0");
  if (!(cfg.gpi_tol > 0.0)) reader.fail("gpi_tol", "'gpi_tol' must be positive");
  if (cfg.gpi_max_iter < 1) reader.fail("gpi_max_iter", "'gpi_max_iter' must be >= 1");
  if (cfg.num_symbols < 1) reader.fail("num_symbols", "'num_symbols' must be positive");
  if (!(cfg.angle_step_deg > 0.0)) reader.fail("angle_step_deg", "'angle_step_deg' must be positive");
  if (cfg.angle_stop_deg < cfg.angle_start_deg) {
    reader.fail("angle_stop_deg", "'angle_stop_deg' must not be below 'angle_start_deg'");
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

void sort_rows(std::vector<ExperimentRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const ExperimentRow& a, const ExperimentRow& b) {
    return std::make_tuple(to_string(a.method), std::cref(a.sweep_var), std::cref(a.metric),
                           a.seed, a.sweep_value) <
           std::make_tuple(to_string(b.method), std::cref(b.sweep_var), std::cref(b.metric),
                           b.seed, b.sweep_value);
  });
}

void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  out << "method,sweep_var,sweep_value,metric,value,seed\n";
  for (const auto& r : rows) {
    out << to_string(r.method) << ',' << r.sweep_var << ',' << format_double(r.sweep_value)
        << ',' << r.metric << ',' << format_double(r.value) << ',' << r.seed << '\n';
  }
}

void write_json(std::ostream& out, const std::vector<ExperimentRow>& rows,
                const std::string& timestamp) {
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"method", std::string(to_string(r.method))},
                   {"sweep_var", r.sweep_var},
                   {"sweep_value", r.sweep_value},
                   {"metric", r.metric},
                   {"value", r.value},
                   {"seed", r.seed},
                   {"timestamp", timestamp}});
  }
  out << arr.dump(2) << '\n';
}

std::string solution_to_json(const ExperimentConfig& cfg, const SolutionRecord& record) {
  json j = solution_json(cfg, record);
  j["scenario"] = scenario_json(cfg);
  return j.dump(2);
}

std::string solutions_to_json(const ExperimentConfig& cfg,
                              const std::vector<SolutionRecord>& records) {
  json arr = json::array();
  for (const auto& r : records) arr.push_back(solution_json(cfg, r));
  json root = {{"scenario", scenario_json(cfg)}, {"solutions", std::move(arr)}};
  return root.dump(2);
}

SnrSweepResult run_sr_vs_snr(const ExperimentConfig& cfg) {
  const auto points = static_cast<long long>(cfg.snr_db.size());
  const std::uint64_t seed = cfg.effective_seed();
  std::vector<std::vector<ExperimentRow>> rows(points);
  std::vector<std::vector<SolutionRecord>> sols(points);

#pragma omp parallel for schedule(dynamic)
  for (long long k = 0; k < points; ++k) {
    const double snr = cfg.snr_db[k];
    for (Method m : kMethods) {
      try {
        BeamformerSolution s = solve_method(m, cfg, snr);
        rows[k].push_back({m, "snr_db", snr, "secrecy_rate", s.secrecy_rate, seed});
        sols[k].push_back({m, snr, std::move(s)});
      } catch (const NumericalError&) {
        rows[k].push_back({m, "snr_db", snr, "solver_error", 1.0, seed});
      } catch (const std::invalid_argument&) {
        rows[k].push_back({m, "snr_db", snr, "solver_error", 1.0, seed});
      }
    }
  }

  SnrSweepResult out;
  for (long long k = 0; k < points; ++k) {
    for (auto& r : rows[k]) out.rows.push_back(std::move(r));
    for (auto& s : sols[k]) out.solutions.push_back(std::move(s));
  }
  sort_rows(out.rows);
  return out;
}

ConvergenceResult run_convergence(const ExperimentConfig& cfg) {
  const Scenario sc = cfg.scenario();
  const PowerProfile p = cfg.power(cfg.converge_snr_db);
  const AisOptions opts = cfg.ais_options();
  const std::uint64_t base = cfg.effective_seed();

  ConvergenceResult out;
  out.leakage = solve_max_sr(sc, p, Initialization::leakage(), opts).second;
  out.random.resize(cfg.random_seeds);
  for (int k = 0; k < cfg.random_seeds; ++k) out.random_seeds.push_back(base + k);

#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < cfg.random_seeds; ++k) {
    out.random[k] = solve_max_sr(sc, p, Initialization::random(out.random_seeds[k]), opts).second;
  }

  auto emit = [&](const ConvergenceTrace& t, const std::string& label, std::uint64_t seed) {
    for (int i = 0; i < t.iterations(); ++i) {
      out.rows.push_back({Method::max_sr, "iteration", static_cast<double>(i + 1),
                          "sr_" + label, t.sr_per_iteration[i], seed});
    }
    // Iterations to tolerance; max_outer + 1 marks a run that never met it.
    const double count = t.terminated_by == ConvergenceTrace::Termination::tolerance
                             ? t.iterations()
                             : cfg.max_outer + 1;
    out.rows.push_back(
        {Method::max_sr, "snr_db", cfg.converge_snr_db, "iterations_" + label, count, seed});
  };
  emit(out.leakage, "leakage_init", base);
  for (int k = 0; k < cfg.random_seeds; ++k) {
    emit(out.random[k], "random_init", out.random_seeds[k]);
  }
  sort_rows(out.rows);
  return out;
}

BerSweepResult run_ber_sweep(const ExperimentConfig& cfg) {
  const Scenario sc = cfg.scenario();
  const PowerProfile p = cfg.power(cfg.link_snr_db);
  LinkConfig link;
  link.num_symbols = cfg.num_symbols;
  link.seed = cfg.effective_seed();
  link.snr_db = cfg.link_snr_db;
  link.angle_grid = cfg.angle_grid();

  BerSweepResult out;
  for (Method m : kMethods) {
    out.solutions.push_back(solve_method(m, cfg, cfg.link_snr_db));
    out.curves.push_back(ber_sweep(out.solutions.back(), sc, p, link));
    const BerCurve& curve = out.curves.back();
    for (std::size_t k = 0; k < curve.ber.size(); ++k) {
      out.rows.push_back({m, "angle_deg", cfg.angle_start_deg + k * cfg.angle_step_deg, "ber",
                          curve.ber[k], link.seed});
    }
  }
  sort_rows(out.rows);
  return out;
}

}  // namespace dmsec
