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

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "dmsec/experiment.hpp"
#include "json.hpp"

namespace dmsec {

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct CommonArgs {
  std::string config;
  std::string out;
  std::string format = "csv";
  std::optional<std::uint64_t> seed;
  bool quiet = false;
  std::string dump_solutions;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config, "JSON experiment config")->required();
  cmd->add_option("--out", args.out, "output file (stdout when omitted)");
  cmd->add_option("--format", args.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--seed", args.seed, "base random seed");
  cmd->add_flag("--quiet", args.quiet, "suppress progress messages");
}

// Flag, then config, then DM_SECRECY_SEED, then 1.
ExperimentConfig resolve(const CommonArgs& args) {
  ExperimentConfig cfg = load_config(args.config);
  if (args.seed) {
    cfg.seed = *args.seed;
  } else if (!cfg.seed) {
    if (const char* env = std::getenv("DM_SECRECY_SEED")) {
      try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument(env);
        cfg.seed = v;
      } catch (const std::exception&) {
        throw ConfigError(std::string("DM_SECRECY_SEED: not a nonnegative integer: ") + env);
      }
    }
  }
  return cfg;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError(path + ": cannot open output file");
  out << text;
}

void emit_rows(const CommonArgs& args, const std::vector<ExperimentRow>& rows) {
  std::ostringstream buf;
  if (args.format == "json") {
    write_json(buf, rows, utc_timestamp());
  } else {
    write_csv(buf, rows);
  }
  write_text(args.out, buf.str());
}

void note(const CommonArgs& args, const std::string& msg) {
  if (!args.quiet) std::cerr << msg << '\n';
}

int run_solve(const CommonArgs& args, const std::string& method_tag,
              std::optional<double> snr) {
  const ExperimentConfig cfg = resolve(args);
  const double snr_db = snr.value_or(cfg.snr_db.front());
  const Method method = method_from_string(method_tag);
  const Scenario sc = cfg.scenario();
  const PowerProfile p = cfg.power(snr_db);

  nlohmann::json extra;
  std::optional<BeamformerSolution> sol;
  switch (method) {
    case Method::max_sr: {
      const Initialization init = cfg.init == Initialization::Kind::random
                                      ? Initialization::random(cfg.effective_seed())
                                      : Initialization::leakage();
      auto [s, trace] = solve_max_sr(sc, p, init, cfg.ais_options());
      extra["iterations"] = trace.iterations();
      extra["terminated_by"] = std::string(to_string(trace.terminated_by));
      extra["trace"] = trace.sr_per_iteration;
      extra["inner_gpi_iterations"] = trace.inner_gpi_iterations;
      extra["init"] = init.kind == Initialization::Kind::random ? "random" : "leakage";
      sol = std::move(s);
      break;
    }
    case Method::leakage:
      sol = solve_leakage(sc, p);
      extra["iterations"] = 1;
      break;
    case Method::nsp:
      sol = solve_nsp(sc, p);
      extra["iterations"] = 1;
      break;
  }
  nlohmann::json j = nlohmann::json::parse(solution_to_json(cfg, {method, snr_db, *sol}));
  j.update(extra);
  j["seed"] = cfg.effective_seed();
  note(args, "solved " + std::string(to_string(method)) + " at " + format_double(snr_db) +
                 " dB: secrecy rate " + format_double(sol->secrecy_rate));
  write_text(args.out, j.dump(2) + "\n");
  return 0;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Secrecy-rate beamforming for AN-aided directional modulation"};
  app.require_subcommand(1);

  CommonArgs solve_args, snr_args, conv_args, ber_args;
  std::string method = "max_sr";
  std::optional<double> solve_snr;

  auto* solve = app.add_subcommand("solve", "solve one scenario and print the solution as JSON");
  add_common(solve, solve_args);
  solve->add_option("--method", method, "max_sr, leakage or nsp")
      ->check(CLI::IsMember({"max_sr", "leakage", "nsp"}));
  solve->add_option("--snr", solve_snr, "SNR in dB (default: first entry of snr_db)");

  auto* sweep = app.add_subcommand("sweep-snr", "secrecy rate versus SNR for all methods");
  add_common(sweep, snr_args);
  sweep->add_option("--dump-solutions", snr_args.dump_solutions,
                    "write every solution (precoder, AN matrix) to this JSON file");

  auto* converge = app.add_subcommand("converge", "secrecy rate per outer iteration");
  add_common(converge, conv_args);

  auto* ber = app.add_subcommand("ber-sweep", "BER versus receiver direction");
  add_common(ber, ber_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*solve) return run_solve(solve_args, method, solve_snr);
    if (*sweep) {
      const ExperimentConfig cfg = resolve(snr_args);
      const SnrSweepResult res = run_sr_vs_snr(cfg);
      emit_rows(snr_args, res.rows);
      if (!snr_args.dump_solutions.empty()) {
        write_text(snr_args.dump_solutions, solutions_to_json(cfg, res.solutions) + "\n");
      }
      note(snr_args, "sweep-snr: " + std::to_string(res.rows.size()) + " rows");
      return 0;
    }
    if (*converge) {
      const ConvergenceResult res = run_convergence(resolve(conv_args));
      emit_rows(conv_args, res.rows);
      note(conv_args, "converge: leakage init took " +
                          std::to_string(res.leakage.iterations()) + " iterations");
      return 0;
    }
    if (*ber) {
      const BerSweepResult res = run_ber_sweep(resolve(ber_args));
      emit_rows(ber_args, res.rows);
      note(ber_args, "ber-sweep: " + std::to_string(res.rows.size()) + " rows");
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace dmsec
