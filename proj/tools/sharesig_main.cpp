// sharesig: solve, sweep, verify and simulate the two sharing games.
//
// Exit codes: 0 ok, 1 config error, 2 solver error, 3 verification failure.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sharesig/config.hpp"
#include "sharesig/error.hpp"
#include "sharesig/experiments.hpp"
#include "sharesig/format.hpp"
#include "sharesig/serialize.hpp"
#include "sharesig/simulate.hpp"

namespace fs = std::filesystem;
using namespace sharesig;

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kSolverError = 2;
constexpr int kVerifyFailure = 3;

struct Options {
  std::string config;
  std::string out;
  int grid = 33;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> n;
  std::optional<double> tol;
  std::string trace;
  std::string isa;
  unsigned threads = 0;
  bool no_simulate = false;
  bool corrupt_gamma = false;
};

ExperimentConfig load_checked(const Options& o) {
  ExperimentConfig cfg = load_config(o.config);
  const ValidationReport rep = validate(cfg.params, cfg.regime, cfg.override_regime);
  if (!rep.empty()) {
    throw ConfigError(rep.front().message, 0, rep.front().field);
  }
  if (o.tol) cfg.tol = *o.tol;
  if (cfg.tol && !(*cfg.tol > 0.0)) throw ConfigError("tol must be positive", 0, "tol");
  return cfg;
}

Distribution receiver(const ExperimentConfig& cfg) { return cfg.receiver_spec().make(); }

// Writes `csv` plus a provenance sidecar next to it.
void emit(const fs::path& path, const std::string& csv, const std::string& provenance) {
  write_text(path, csv);
  write_text(fs::path(path.string() + ".params.json"), provenance);
  std::cerr << "wrote " << path.string() << "\n";
}

int cmd_solve(const Options& o) {
  const ExperimentConfig cfg = load_checked(o);
  Json j{{"regime", std::string(to_string(cfg.regime))}, {"params", to_json(cfg.params)}};
  if (cfg.regime == Regime::Ability) {
    const AbilityEquilibrium eq = solve_kappa(cfg.params, cfg.tol.value_or(kKappaTolerance));
    j["equilibrium"] = to_json(eq);
    const ExistenceBounds b = existence_bounds(cfg.params);
    j["existence"] = {{"c_bar_S", b.c_bar_S}, {"q_bar_of_cS", b.q_bar_of_cS}};
    j["beta_tilde"] = beta_tilde(cfg.params);
  } else {
    const Distribution F_S = cfg.F_S.make();
    const Distribution F_R = receiver(cfg);
    const WorldviewEquilibrium eq =
        solve_thresholds(F_S, F_R, cfg.params, cfg.tol.value_or(kThresholdTolerance));
    j["F_S"] = to_json(cfg.F_S);
    if (cfg.F_R) j["F_R"] = to_json(*cfg.F_R);
    j["equilibrium"] = to_json(eq);
    if (eq.status == WorldviewStatus::Interior) {
      j["audit"] = to_json(check_assumption1(F_S, F_R, cfg.params, 21));
    }
  }
  std::cout << j.dump(2) << "\n";
  return kOk;
}

int cmd_fig1(const Options& o) {
  const fs::path dir = o.out.empty() ? fs::path(".") : fs::path(o.out);
  bool all = true;
  for (double lambda_S : {0.2, 0.1}) {
    const Fig1Panel panel = fig1_panel(lambda_S, o.grid, o.threads);
    ExperimentConfig cfg;
    cfg.params = fig1_base(lambda_S);
    const std::string name = "fig1_lambda_S_" + format_double(lambda_S) + ".csv";
    emit(dir / name, fig1_csv(panel), provenance_json(cfg, "fig1", o.grid));
    std::cout << "lambda_S=" << format_double(lambda_S)
              << " beta_tilde=" << format_double(panel.beta_tilde)
              << " positive_cells=" << panel.positive_cells()
              << (panel.all_interior() ? "" : " NON-INTERIOR CELLS") << "\n";
    all = all && panel.all_interior();
  }
  return all ? kOk : kSolverError;
}

int cmd_fig3(const Options& o) {
  const fs::path dir = o.out.empty() ? fs::path(".") : fs::path(o.out);
  const Fig3Grid grid = fig3_grid(o.grid, o.threads);
  ExperimentConfig cfg;
  cfg.regime = Regime::Worldview;
  cfg.override_regime = true;  // eta > p_R on this figure
  cfg.params = fig3_base();
  emit(dir / "fig3.csv", fig3_csv(grid), provenance_json(cfg, "fig3", o.grid));
  std::cout << "cells=" << grid.cells.size() << " errors=" << grid.errors << "\n";
  return grid.errors == 0 ? kOk : kSolverError;
}

int cmd_sweep(const Options& o) {
  const ExperimentConfig cfg = load_checked(o);
  const SweepOutput s = run_sweep(cfg, o.threads);
  const std::string target = o.out.empty() ? cfg.output : o.out;
  if (target.empty()) {
    std::cout << s.csv;
  } else {
    emit(target, s.csv, provenance_json(cfg, "sweep", 0));
  }
  std::cerr << "rows=" << s.rows << " errors=" << s.errors << "\n";
  return s.errors == 0 ? kOk : kSolverError;
}

int cmd_verify(const Options& o) {
  VerifyOptions v;
  v.grid = o.grid;
  v.threads = o.threads;
  if (!o.config.empty()) {
    const ExperimentConfig cfg = load_checked(o);
    if (cfg.simulation.present) {
      v.n_draws = cfg.simulation.n_draws;
      v.seed = cfg.simulation.seed;
    }
  }
  if (o.seed) v.seed = *o.seed;
  if (o.n) v.n_draws = *o.n;
  v.simulate = !o.no_simulate;
  if (o.corrupt_gamma) v.gamma_worldview_fn = corrupted_gamma_worldview;

  const std::vector<CheckResult> results = run_verify(v);
  int failed = 0;
  for (const CheckResult& r : results) {
    std::cout << (r.pass ? "PASS " : "FAIL ") << std::left << std::setw(24) << r.name
              << std::right << std::fixed << std::setprecision(2) << std::setw(7)
              << r.seconds << "s  " << r.detail << "\n";
    failed += !r.pass;
  }
  std::cout << results.size() - failed << "/" << results.size() << " checks passed\n";
  if (failed) {
    std::cerr << "failed checks:";
    for (const CheckResult& r : results) {
      if (!r.pass) std::cerr << " " << r.name;
    }
    std::cerr << "\n";
  }
  return failed == 0 ? kOk : kVerifyFailure;
}

int cmd_simulate(const Options& o) {
  const ExperimentConfig cfg = load_checked(o);
  SimConfig sc;
  sc.regime = cfg.regime;
  sc.n_draws = cfg.simulation.n_draws;
  sc.seed = cfg.simulation.seed;
  sc.isa = cfg.simulation.isa;
  sc.threads = o.threads;
  if (o.seed) sc.seed = *o.seed;
  if (o.n) sc.n_draws = *o.n;
  if (o.isa == "scalar") sc.isa = kernels::Isa::Scalar;
  if (o.isa == "avx2") sc.isa = kernels::Isa::Avx2;

  std::ofstream trace_file;
  std::ostream* trace = nullptr;
  if (!o.trace.empty()) {
    trace_file.open(o.trace);
    if (!trace_file) throw ConfigError("cannot open trace file " + o.trace, 0, "trace");
    trace = &trace_file;
  }

  Json j{{"regime", std::string(to_string(cfg.regime))}, {"params", to_json(cfg.params)}};
  if (cfg.regime == Regime::Ability) {
    const AbilityEquilibrium eq = solve_kappa(cfg.params, cfg.tol.value_or(kKappaTolerance));
    j["equilibrium"] = to_json(eq);
    j["simulation"] = to_json(simulate_ability(cfg.params, eq, sc, trace));
  } else {
    if (cfg.F_R) {
      throw ConfigError("simulate supports point receivers only", 0, "F_R");
    }
    const Distribution F_S = cfg.F_S.make();
    const WorldviewEquilibrium eq = solve_thresholds(
        F_S, receiver(cfg), cfg.params, cfg.tol.value_or(kThresholdTolerance));
    j["equilibrium"] = to_json(eq);
    j["simulation"] = to_json(simulate_worldview(F_S, cfg.params, eq, sc, trace));
  }
  std::cout << j.dump(2) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibrium solver and Monte Carlo harness for news-sharing signaling games"};
  app.require_subcommand(1);
  Options o;

  auto add_config = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--config", o.config, "Experiment config (TOML)");
    if (required) opt->required();
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  };

  auto* solve = app.add_subcommand("solve", "Solve one equilibrium and print JSON");
  add_config(solve, true);
  solve->add_option("--tol", o.tol, "Solver tolerance");

  auto* fig1 = app.add_subcommand("fig1", "Ability-game gamma - q surfaces (two CSVs)");
  fig1->add_option("--out", o.out, "Output directory");
  fig1->add_option("--grid", o.grid, "Grid points per axis")->check(CLI::Range(2, 1000));
  add_common(fig1);

  auto* fig3 = app.add_subcommand("fig3", "Worldview-game gamma - q heatmap (CSV)");
  fig3->add_option("--out", o.out, "Output directory");
  fig3->add_option("--grid", o.grid, "Grid points per axis")->check(CLI::Range(2, 1000));
  add_common(fig3);

  auto* sweep = app.add_subcommand("sweep", "Cartesian parameter sweep (CSV)");
  add_config(sweep, true);
  sweep->add_option("--out", o.out, "Output CSV (default: config output, else stdout)");
  sweep->add_option("--tol", o.tol, "Solver tolerance");
  add_common(sweep);

  auto* verify = app.add_subcommand("verify", "Run the property and simulation checks");
  add_config(verify, false);
  verify->add_option("--grid", o.grid, "Grid points per axis")->check(CLI::Range(2, 1000));
  verify->add_option("--seed", o.seed, "Simulation seed");
  verify->add_option("--n", o.n, "Simulation draws");
  verify->add_flag("--no-simulate", o.no_simulate, "Skip the Monte Carlo checks");
  verify->add_flag("--corrupt-gamma", o.corrupt_gamma, "Fault injection for tests")
      ->group("");
  add_common(verify);

  auto* simulate = app.add_subcommand("simulate", "Solve, then play the game by Monte Carlo");
  add_config(simulate, true);
  simulate->add_option("--seed", o.seed, "Simulation seed");
  simulate->add_option("--n", o.n, "Simulation draws");
  simulate->add_option("--tol", o.tol, "Solver tolerance");
  simulate->add_option("--trace", o.trace, "Per-draw trace CSV");
  simulate->add_option("--isa", o.isa, "Draw kernel")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));
  add_common(simulate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    if (*solve) return cmd_solve(o);
    if (*fig1) return cmd_fig1(o);
    if (*fig3) return cmd_fig3(o);
    if (*sweep) return cmd_sweep(o);
    if (*verify) return cmd_verify(o);
    if (*simulate) return cmd_simulate(o);
  } catch (const ConfigError& e) {
    std::cerr << "config error";
    if (e.line() > 0) std::cerr << " (line " << e.line() << ")";
    if (!e.key().empty()) std::cerr << " [key '" << e.key() << "']";
    std::cerr << ": " << e.what() << "\n";
    return kConfigError;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kSolverError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSolverError;
  }
  return kOk;
}
