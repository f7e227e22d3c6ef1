#pragma once

// Command-line front end: builds chains and spectral models from user
// parameters and emits grid data (potential, spectrum, Jost data) or a
// verification report.  All diagnostics go to stderr; data goes to files.
//
// Exit codes: 0 success, 1 config error, 2 singular chain, 3 verification
// failure.

#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "darboux/chain.hpp"
#include "darboux/errors.hpp"
#include "darboux/io.hpp"
#include "darboux/oracle.hpp"
#include "darboux/spectral.hpp"
#include "darboux/verify.hpp"

namespace darboux::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_config_error = 1;
inline constexpr int exit_singular_chain = 2;
inline constexpr int exit_verification_failure = 3;

struct GridSpec {
  double min = 0.0;
  double max = 10.0;
  std::size_t points = 501;
};

struct JobConfig {
  int n = 0;
  std::vector<double> rates;
  std::vector<double> shifts;
  GridSpec xgrid{0.0, 10.0, 501};
  GridSpec kgrid{0.1, 10.0, 100};
  std::string format = "csv";
  std::string out;
  bool oracle_check = false;
};

namespace detail {

// Flag values arrive as optionals so they can override config-file values.
struct FlagSet {
  std::optional<int> n;
  std::optional<std::vector<double>> rates;
  std::optional<std::vector<double>> shifts;
  std::optional<double> xmin, xmax;
  std::optional<std::size_t> points;
  std::optional<std::vector<double>> kgrid;
  std::optional<std::string> format, out;
  bool oracle_check = false;
  std::string config_path;
};

inline void add_common_options(CLI::App& cmd, FlagSet& flags) {
  cmd.add_option("--config", flags.config_path, "JSON config file; flags override it");
  cmd.add_option("--n", flags.n, "chain length N");
  cmd.add_option("--a", flags.rates, "rates a_1,...,a_N (strictly increasing)")
      ->delimiter(',');
  cmd.add_option("--b", flags.shifts, "shifts b_1,...,b_N (default all 0)")
      ->delimiter(',');
  cmd.add_option("--xmin", flags.xmin, "x grid start (default 0)");
  cmd.add_option("--xmax", flags.xmax, "x grid end");
  cmd.add_option("--points", flags.points, "x grid point count");
  cmd.add_option("--kgrid", flags.kgrid, "k grid as kmin,kmax,points")
      ->delimiter(',')
      ->expected(3);
  cmd.add_option("--format", flags.format, "output format: csv or json");
  cmd.add_option("--out", flags.out, "output file path");
  cmd.add_flag("--oracle", flags.oracle_check,
               "cross-check the level table against the grid eigensolver");
}

inline JobConfig merge_config(const FlagSet& flags) {
  JobConfig cfg;
  if (!flags.config_path.empty()) {
    std::ifstream is(flags.config_path);
    if (!is)
      throw invalid_parameter_error("cannot read config file: " + flags.config_path);
    io::json doc = io::json::parse(is);
    if (doc.contains("n")) cfg.n = doc["n"].get<int>();
    if (doc.contains("a")) cfg.rates = doc["a"].get<std::vector<double>>();
    if (doc.contains("b")) cfg.shifts = doc["b"].get<std::vector<double>>();
    if (doc.contains("xmin")) cfg.xgrid.min = doc["xmin"].get<double>();
    if (doc.contains("xmax")) cfg.xgrid.max = doc["xmax"].get<double>();
    if (doc.contains("points")) cfg.xgrid.points = doc["points"].get<std::size_t>();
    if (doc.contains("kgrid")) {
      const auto kg = doc["kgrid"].get<std::vector<double>>();
      if (kg.size() != 3)
        throw invalid_parameter_error("config kgrid must be [kmin, kmax, points]");
      cfg.kgrid = {kg[0], kg[1], static_cast<std::size_t>(kg[2])};
    }
    if (doc.contains("format")) cfg.format = doc["format"].get<std::string>();
    if (doc.contains("out")) cfg.out = doc["out"].get<std::string>();
    if (doc.contains("oracle")) cfg.oracle_check = doc["oracle"].get<bool>();
  } else if (!flags.n && !flags.rates) {
    throw invalid_parameter_error("either --config or --n/--a is required");
  }
  if (flags.n) cfg.n = *flags.n;
  if (flags.rates) cfg.rates = *flags.rates;
  if (flags.shifts) cfg.shifts = *flags.shifts;
  if (flags.xmin) cfg.xgrid.min = *flags.xmin;
  if (flags.xmax) cfg.xgrid.max = *flags.xmax;
  if (flags.points) cfg.xgrid.points = *flags.points;
  if (flags.kgrid)
    cfg.kgrid = {(*flags.kgrid)[0], (*flags.kgrid)[1],
                 static_cast<std::size_t>((*flags.kgrid)[2])};
  if (flags.format) cfg.format = *flags.format;
  if (flags.out) cfg.out = *flags.out;
  if (flags.oracle_check) cfg.oracle_check = true;
  return cfg;
}

inline void validate(const JobConfig& cfg) {
  if (cfg.n < 0) throw invalid_parameter_error("N must be >= 0");
  if (cfg.rates.empty() && cfg.n > 0)
    throw invalid_parameter_error("rates are required for N > 0");
  if (!cfg.rates.empty() && cfg.n != static_cast<int>(cfg.rates.size()))
    throw invalid_parameter_error("N does not match the number of rates");
  if (!cfg.shifts.empty() && cfg.shifts.size() != cfg.rates.size())
    throw invalid_parameter_error("shifts must match rates in length");
  for (std::size_t i = 0; i < cfg.rates.size(); ++i) {
    if (!(cfg.rates[i] > 0.0))
      throw invalid_parameter_error("rates must be positive");
    if (i > 0 && !(cfg.rates[i - 1] < cfg.rates[i]))
      throw invalid_parameter_error("rates must be strictly increasing");
  }
  if (cfg.xgrid.points < 2 || !(cfg.xgrid.max > cfg.xgrid.min))
    throw invalid_parameter_error("x grid must have >= 2 points and max > min");
  if (cfg.kgrid.points < 1 || !(cfg.kgrid.min > 0.0) ||
      !(cfg.kgrid.max >= cfg.kgrid.min))
    throw invalid_parameter_error("k grid must be positive and nonempty");
  if (cfg.format != "csv" && cfg.format != "json")
    throw invalid_parameter_error("format must be csv or json");
  if (cfg.out.empty()) throw invalid_parameter_error("--out is required");
}

inline io::json config_meta(const JobConfig& cfg, const std::string& command) {
  io::json meta = io::json::object();
  meta["command"] = command;
  meta["n"] = cfg.n;
  meta["a"] = cfg.rates;
  meta["b"] = cfg.shifts.empty()
                  ? std::vector<double>(cfg.rates.size(), 0.0)
                  : cfg.shifts;
  return meta;
}

inline double grid_point(const GridSpec& g, std::size_t j) {
  if (g.points == 1) return g.min;
  return g.min + (g.max - g.min) * static_cast<double>(j) /
                     static_cast<double>(g.points - 1);
}

}  // namespace detail

inline int cmd_potential(const JobConfig& cfg) {
  const DarbouxChain chain =
      DarbouxChain::from_rates(cfg.rates, cfg.shifts);
  io::Table table;
  table.meta = detail::config_meta(cfg, "potential");
  table.columns = {"x", "V"};
  for (std::size_t j = 0; j < cfg.xgrid.points; ++j) {
    const double x = detail::grid_point(cfg.xgrid, j);
    table.rows.push_back({x, transformed_potential(chain, x)});
  }
  io::write_table(cfg.out, table, cfg.format == "json");
  return exit_ok;
}

inline int cmd_spectrum(const JobConfig& cfg) {
  const SpectralModel model = build_model(cfg.rates, cfg.shifts);
  io::Table table;
  table.meta = detail::config_meta(cfg, "spectrum");

  io::json levels = io::json::array();
  for (const Level& lv : model.levels())
    levels.push_back({{"i", lv.chain_index},
                      {"energy", lv.energy},
                      {"normalization", lv.normalization}});
  table.meta["levels"] = levels;

  if (cfg.oracle_check) {
    const CheckResult check = check_oracle_spectrum(model);
    table.meta["oracle"] = check.pass ? "PASS" : "FAIL";
    std::cerr << "oracle: " << (check.pass ? "PASS" : "FAIL")
              << " (residual " << check.residual << ", tolerance "
              << check.tolerance << ")\n";
    if (!check.pass) {
      io::write_table(cfg.out, table, cfg.format == "json");
      return exit_verification_failure;
    }
  }

  table.columns = {"x"};
  for (std::size_t lv = 0; lv < model.levels().size(); ++lv)
    table.columns.push_back("phi_" + std::to_string(lv));
  for (std::size_t j = 0; j < cfg.xgrid.points; ++j) {
    const double x = detail::grid_point(cfg.xgrid, j);
    std::vector<double> row{x};
    for (std::size_t lv = 0; lv < model.levels().size(); ++lv)
      row.push_back(eigenfunction(model, lv, x));
    table.rows.push_back(std::move(row));
  }
  io::write_table(cfg.out, table, cfg.format == "json");
  return exit_ok;
}

inline int cmd_jost(const JobConfig& cfg) {
  const SpectralModel model = build_model(cfg.rates, cfg.shifts);
  io::Table table;
  table.meta = detail::config_meta(cfg, "jost");
  table.columns = {"k", "re_F", "im_F", "abs_F", "delta"};
  std::size_t skipped = 0;
  for (std::size_t j = 0; j < cfg.kgrid.points; ++j) {
    const double k = detail::grid_point(cfg.kgrid, j);
    try {
      const std::complex<double> f = jost_function(model, k);
      const ScatteringPoint sp = phase_shift(model, k);
      table.rows.push_back({k, f.real(), f.imag(), sp.modulus, sp.phase});
    } catch (const invalid_wavenumber_error& e) {
      std::cerr << "skipping k = " << k << ": " << e.what() << '\n';
      ++skipped;
    }
  }
  // tail behavior of |F| on the upper half of the grid
  bool monotone = true;
  double prev_gap = -1.0;
  for (std::size_t j = table.rows.size() / 2; j < table.rows.size(); ++j) {
    const double gap = std::abs(table.rows[j][3] - 1.0);
    if (prev_gap >= 0.0 && gap > prev_gap + 1e-12) monotone = false;
    prev_gap = gap;
  }
  table.meta["skipped_rows"] = skipped;
  table.meta["tail_modulus_monotone"] = monotone;
  io::write_table(cfg.out, table, cfg.format == "json");
  return exit_ok;
}

inline int cmd_verify(const JobConfig& cfg) {
  const SpectralModel model = build_model(cfg.rates, cfg.shifts);
  const std::vector<CheckResult> checks = verify_model(model);
  bool all_pass = true;

  io::json doc;
  doc["meta"] = detail::config_meta(cfg, "verify");
  io::json list = io::json::array();
  for (const CheckResult& c : checks) {
    list.push_back({{"name", c.name},
                    {"residual", c.residual},
                    {"tolerance", c.tolerance},
                    {"pass", c.pass}});
    std::cerr << (c.pass ? "PASS " : "FAIL ") << c.name << " residual "
              << c.residual << " tolerance " << c.tolerance << '\n';
    all_pass = all_pass && c.pass;
  }
  doc["checks"] = list;

  std::ofstream os(cfg.out, std::ios::binary);
  if (!os) throw invalid_parameter_error("cannot open output file: " + cfg.out);
  if (cfg.format == "json") {
    os << doc.dump(2) << '\n';
  } else {
    os << "check,residual,tolerance,pass\n";
    for (const CheckResult& c : checks)
      os << c.name << ',' << io::format_double(c.residual) << ','
         << io::format_double(c.tolerance) << ',' << (c.pass ? 1 : 0) << '\n';
  }
  return all_pass ? exit_ok : exit_verification_failure;
}

/// Entry point shared by main() and the in-process tests.
inline int run(const std::vector<std::string>& args) {
  CLI::App app{"Exactly solvable semiaxis potentials from transformation chains"};
  app.require_subcommand(1);

  detail::FlagSet flags;
  CLI::App* potential = app.add_subcommand("potential", "emit (x, V_N(x)) rows");
  CLI::App* spectrum =
      app.add_subcommand("spectrum", "emit the level table and eigenfunctions");
  CLI::App* jost = app.add_subcommand("jost", "emit (k, F, |F|, delta) rows");
  CLI::App* verify =
      app.add_subcommand("verify", "run the verification suites and report");
  for (CLI::App* cmd : {potential, spectrum, jost, verify})
    detail::add_common_options(*cmd, flags);

  // CLI11 expects argv order with the program name first and reversed
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return exit_config_error;
  }

  try {
    const JobConfig cfg = detail::merge_config(flags);
    detail::validate(cfg);
    if (potential->parsed()) return cmd_potential(cfg);
    if (spectrum->parsed()) return cmd_spectrum(cfg);
    if (jost->parsed()) return cmd_jost(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    std::cerr << "no subcommand given\n";
    return exit_config_error;
  } catch (const singular_chain_error& e) {
    std::cerr << "singular chain: " << e.what() << '\n';
    return exit_singular_chain;
  } catch (const pole_error& e) {
    std::cerr << "pole encountered: " << e.what() << '\n';
    return exit_singular_chain;
  } catch (const invalid_parameter_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return exit_config_error;
  } catch (const invalid_chain_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return exit_config_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_config_error;
  }
}

inline int run_main(int argc, char** argv) {
  std::vector<std::string> args;
  args.reserve(static_cast<std::size_t>(argc) - 1);
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace darboux::cli
