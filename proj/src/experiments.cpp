#include "sharesig/experiments.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "sharesig/error.hpp"
#include "sharesig/format.hpp"
#include "sharesig/parallel.hpp"
#include "sharesig/serialize.hpp"
#include "sharesig/simulate.hpp"

namespace sharesig {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kSlack = 1e-9;

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
  return v;
}

std::string tuple_string(const ModelParams& p) {
  std::ostringstream os;
  os << "(q=" << format_double(p.q) << ", beta=" << format_double(p.beta)
     << ", eta=" << format_double(p.eta) << ", p_T=" << format_double(p.p_T)
     << ", lambda_S=" << format_double(p.lambda_S)
     << ", lambda_R=" << format_double(p.lambda_R) << ", c_S=" << format_double(p.c_S)
     << ", p_S=" << format_double(p.p_S) << ", p_R=" << format_double(p.p_R) << ")";
  return os.str();
}

// Every sweep row starts with the full parameter tuple.
std::vector<std::string> echo(const ModelParams& p) {
  std::vector<std::string> r;
  for (const std::string& n : param_names()) r.push_back(format_double(param_value(p, n)));
  return r;
}

std::string error_status(const SolverError& e) {
  return "Error:" + std::string(to_string(e.kind()));
}

// Runs `body`, stamping name and wall time onto its result. A SolverError
// escaping a check is a failure of that check, not of the suite.
template <typename Body>
CheckResult timed(std::string name, Body&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckResult r{name, false, ""};
  try {
    r = body();
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.name = std::move(name);
  r.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

bool within_se(const Estimate& e, double analytic, double k = 3.0) {
  return std::isfinite(e.value) && std::isfinite(e.se) &&
         std::abs(e.value - analytic) <= k * e.se;
}

std::string mc_line(const std::string& what, const Estimate& e, double analytic) {
  std::ostringstream os;
  os << what << " emp=" << format_double(e.value) << " se=" << format_double(e.se)
     << " analytic=" << format_double(analytic)
     << (within_se(e, analytic) ? " ok" : " OUTSIDE 3se") << "; ";
  return os.str();
}

// Symmetric worldview instance with p_hat_R = 1/2.
ModelParams symmetric_worldview() {
  ModelParams w;
  w.q = 0.5;
  w.beta = 0.5;
  w.eta = 0.9;
  w.p_T = 0.5;
  w.p_R = 0.5;
  w.c_S = 0.0;
  return w;
}

}  // namespace

// ---------------------------------------------------------------- figures

ModelParams fig1_base(double lambda_S) {
  ModelParams p;
  p.q = 0.5;
  p.beta = 0.5;
  p.eta = 2.0 / 3.0;
  p.p_T = 2.0 / 3.0;
  p.lambda_S = lambda_S;
  p.lambda_R = 0.2;
  p.c_S = 0.0;
  p.p_S = 2.0 / 3.0;
  p.p_R = 2.0 / 3.0;
  return p;
}

std::vector<double> fig1_axis(int n) { return linspace(0.1, 0.9, n); }

bool Fig1Panel::all_interior() const {
  for (const Fig1Cell& c : cells) {
    if (c.status != AbilityStatus::Interior) return false;
  }
  return true;
}

int Fig1Panel::positive_cells(double slack) const {
  int n = 0;
  for (const Fig1Cell& c : cells) n += c.gamma_minus_q > slack;
  return n;
}

Fig1Panel fig1_panel(double lambda_S, int grid, unsigned threads) {
  if (grid < 2) throw SolverError(ErrorKind::PreconditionViolation, "grid must be >= 2");
  const ModelParams base = fig1_base(lambda_S);
  const std::vector<double> axis = fig1_axis(grid);
  Fig1Panel panel{lambda_S, beta_tilde(base), grid, {}};
  panel.cells.resize(axis.size() * axis.size());
  parallel_for(
      panel.cells.size(),
      [&](std::size_t k) {
        ModelParams p = base;
        p.q = axis[k / axis.size()];
        p.beta = axis[k % axis.size()];
        const AbilityEquilibrium eq = solve_kappa(p);
        panel.cells[k] = {p.q, p.beta, eq.kappa0_star, eq.gamma, eq.gamma - p.q, eq.status};
      },
      threads);
  return panel;
}

std::string fig1_csv(const Fig1Panel& panel) {
  CsvTable t({"q", "beta", "gamma_minus_q", "status"});
  for (const Fig1Cell& c : panel.cells) {
    t.row().cell(c.q).cell(c.beta).cell(c.gamma_minus_q).cell(to_string(c.status));
  }
  return t.str();
}

ModelParams fig3_base() {
  ModelParams p;
  p.eta = 0.9;
  p.p_R = 0.1;
  p.p_T = 0.5;
  p.c_S = 0.0;
  return p;
}

std::vector<double> fig3_axis(int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) v[static_cast<std::size_t>(k - 1)] = static_cast<double>(k) / (n + 1);
  return v;
}

Fig3Cell fig3_cell(const Distribution& F_S, const ModelParams& base, double q,
                   double beta) {
  ModelParams p = base;
  p.q = q;
  p.beta = beta;
  try {
    const WorldviewEquilibrium eq =
        solve_thresholds(F_S, Distribution::point_mass(p.p_R), p);
    return {q, beta, eq.gamma - q, eq.p_Sl_star, eq.p_Sh_star,
            std::string(to_string(eq.status))};
  } catch (const SolverError& e) {
    return {q, beta, kNaN, kNaN, kNaN, error_status(e)};
  }
}

Fig3Grid fig3_grid(int grid, unsigned threads) {
  if (grid < 2) throw SolverError(ErrorKind::PreconditionViolation, "grid must be >= 2");
  const ModelParams base = fig3_base();
  const Distribution F_S = Distribution::uniform(0.0, 1.0);
  const std::vector<double> axis = fig3_axis(grid);
  Fig3Grid out{grid, {}, 0};
  out.cells.resize(axis.size() * axis.size());
  parallel_for(
      out.cells.size(),
      [&](std::size_t k) {
        out.cells[k] = fig3_cell(F_S, base, axis[k / axis.size()], axis[k % axis.size()]);
      },
      threads);
  for (const Fig3Cell& c : out.cells) out.errors += c.status.rfind("Error", 0) == 0;
  return out;
}

std::string fig3_csv(const Fig3Grid& grid) {
  CsvTable t({"q", "beta", "gamma_minus_q", "p_Sl", "p_Sh", "status"});
  for (const Fig3Cell& c : grid.cells) {
    t.row().cell(c.q).cell(c.beta).cell(c.gamma_minus_q).cell(c.p_Sl).cell(c.p_Sh).cell(
        std::string_view(c.status));
  }
  return t.str();
}

// ---------------------------------------------------------------- sweeps

SweepOutput run_sweep(const ExperimentConfig& cfg, unsigned threads) {
  std::vector<ModelParams> points{cfg.params};
  for (const SweepAxis& axis : cfg.sweep) {
    std::vector<ModelParams> next;
    for (const ModelParams& p : points) {
      for (double v : axis.values()) {
        ModelParams q = p;
        param_ref(q, axis.name) = v;
        next.push_back(q);
      }
    }
    points = std::move(next);
  }
  for (const ModelParams& p : points) {
    const ValidationReport rep = validate(p, cfg.regime, cfg.override_regime);
    if (!rep.empty()) {
      throw ConfigError("sweep point " + tuple_string(p) + ": " + rep.front().message, 0,
                        rep.front().field);
    }
  }

  const double tol_default =
      cfg.regime == Regime::Ability ? kKappaTolerance : kThresholdTolerance;
  const double tol = cfg.tol.value_or(tol_default);
  std::vector<std::vector<std::string>> rows(points.size());
  std::vector<int> failed(points.size(), 0);

  if (cfg.regime == Regime::Ability) {
    parallel_for(
        points.size(),
        [&](std::size_t i) {
          const ModelParams& p = points[i];
          std::vector<std::string> r = echo(p);
          try {
            const AbilityEquilibrium eq = solve_kappa(p, tol);
            r.insert(r.end(), {format_double(eq.kappa0_star), format_double(eq.gamma),
                               format_double(eq.gamma - p.q),
                               std::string(to_string(eq.status))});
          } catch (const SolverError& e) {
            r.insert(r.end(), {"nan", "nan", "nan", error_status(e)});
            failed[i] = 1;
          }
          rows[i] = std::move(r);
        },
        threads);
  } else {
    const Distribution F_S = cfg.F_S.make();
    parallel_for(
        points.size(),
        [&](std::size_t i) {
          const ModelParams& p = points[i];
          std::vector<std::string> r = echo(p);
          try {
            DistributionSpec rs = cfg.receiver_spec();
            if (!cfg.F_R) rs.x = p.p_R;
            const WorldviewEquilibrium eq = solve_thresholds(F_S, rs.make(), p, tol);
            r.insert(r.end(),
                     {format_double(eq.p_Sl_star), format_double(eq.p_Sh_star),
                      format_double(eq.gamma), format_double(eq.gamma - p.q),
                      std::string(to_string(eq.status)), format_double(eq.xi),
                      format_double(eq.c_bar_S)});
          } catch (const SolverError& e) {
            r.insert(r.end(), {"nan", "nan", "nan", "nan", error_status(e), "nan", "nan"});
            failed[i] = 1;
          }
          rows[i] = std::move(r);
        },
        threads);
  }

  std::vector<std::string> header = param_names();
  const std::vector<std::string> tail =
      cfg.regime == Regime::Ability
          ? std::vector<std::string>{"kappa0_star", "gamma", "gamma_minus_q", "status"}
          : std::vector<std::string>{"p_Sl", "p_Sh", "gamma", "gamma_minus_q", "status",
                                     "xi", "c_bar_S"};
  header.insert(header.end(), tail.begin(), tail.end());
  CsvTable t(header);
  SweepOutput out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    t.row();
    for (const std::string& c : rows[i]) t.cell(std::string_view(c));
    out.errors += failed[i];
  }
  out.rows = rows.size();
  out.csv = t.str();
  return out;
}

std::string provenance_json(const ExperimentConfig& cfg, const std::string& command,
                            int grid) {
  Json j{{"command", command},
         {"regime", std::string(to_string(cfg.regime))},
         {"override_regime", cfg.override_regime},
         {"params", to_json(cfg.params)},
         {"F_S", to_json(cfg.F_S)},
         {"F_R", cfg.F_R ? to_json(*cfg.F_R) : Json("point mass at p_R")}};
  Json axes = Json::array();
  for (const SweepAxis& a : cfg.sweep) {
    axes.push_back({{"name", a.name}, {"min", a.min}, {"max", a.max}, {"steps", a.steps}});
  }
  j["sweep"] = axes;
  if (grid > 0) j["grid"] = grid;
  if (cfg.tol) j["tol"] = *cfg.tol;
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------- fixtures

double ability_cost_frontier(const ModelParams& base) {
  ModelParams p = base;
  p.c_S = 0.0;
  return delta(p, 0.0);  // delta is c_S-linear with slope -1
}

ModelParams worldview_statics_base() {
  ModelParams w;
  w.q = 0.3;
  w.beta = 0.5;
  w.eta = 0.55;
  w.p_T = 0.5;
  w.c_S = 0.05;
  w.p_R = 0.8;
  return w;
}

std::vector<double> statics_receiver_grid() { return linspace(0.6, 0.95, 20); }
std::vector<double> statics_cost_grid() { return linspace(0.0, 0.2, 20); }

std::vector<WorldviewInstance> random_worldview_instances(std::size_t count,
                                                          std::uint64_t seed,
                                                          bool neutral_bias) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<WorldviewInstance> out;
  out.reserve(count);
  while (out.size() < count) {
    WorldviewInstance w{};
    ModelParams& p = w.params;
    p.q = 0.02 + 0.96 * u(gen);
    p.beta = u(gen);
    p.eta = 0.5 + 0.45 * u(gen);
    p.p_T = 0.05 + 0.9 * u(gen);
    p.p_R = p.eta + (1.0 - p.eta) * u(gen);
    w.a = 0.3 * u(gen);
    w.b = 1.0 - 0.3 * u(gen);
    const double c_frac = 0.9 * u(gen);
    if (neutral_bias) p.beta = beta_hat(p);
    if (std::abs(p.eta - p.p_R) < 1e-9) continue;
    try {
      const Distribution F = Distribution::uniform(w.a, w.b);
      p.c_S = c_frac * c_bar_worldview(F);
      w.eq = solve_thresholds(F, Distribution::point_mass(p.p_R), p);
    } catch (const SolverError&) {
      continue;
    }
    if (w.eq.status != WorldviewStatus::Interior || !w.eq.ordering_ok) continue;
    out.push_back(w);
  }
  return out;
}

double corrupted_gamma_worldview(const Distribution& F_S, const ModelParams& params,
                                 double p_Sl, double p_Sh) {
  ModelParams flipped = params;
  flipped.beta = 1.0 - params.beta;
  return gamma_worldview(F_S, flipped, p_Sl, p_Sh);
}

// ---------------------------------------------------------------- checks

CheckResult check_bias_threshold(const VerifyOptions& opt) {
  return timed("bias_threshold_bound", [&] {
    CheckResult r{"", true, ""};
    std::ostringstream os;
    const struct {
      double lambda_S;
      double expected;
    } panels[] = {{0.1, 41.0 / 81.0}, {0.2, 4.0 / 9.0}};
    for (const auto& pn : panels) {
      const Fig1Panel panel = fig1_panel(pn.lambda_S, opt.grid, opt.threads);
      const bool exact = std::abs(panel.beta_tilde - pn.expected) <= 1e-12;
      int above = 0;
      int bad = 0;
      for (const Fig1Cell& c : panel.cells) {
        if (c.beta > panel.beta_tilde) {
          ++above;
          if (!(c.gamma_minus_q < 0.0)) ++bad;
        }
      }
      r.pass = r.pass && exact && bad == 0 && panel.all_interior();
      os << "lambda_S=" << format_double(pn.lambda_S)
         << " beta_tilde=" << format_double(panel.beta_tilde) << (exact ? "" : " (MISMATCH)")
         << " cells_above=" << above << " violations=" << bad
         << (panel.all_interior() ? "" : " non-interior cells present") << "; ";
    }
    r.detail = os.str();
    return r;
  });
}

CheckResult check_cost_monotonicity(const VerifyOptions&) {
  return timed("cost_monotonicity", [&] {
    const ModelParams base = fig1_base(0.2);
    const double frontier = ability_cost_frontier(base);
    const std::vector<double> costs = linspace(0.0, frontier - 1e-7, 50);
    double prev_k = std::numeric_limits<double>::infinity();
    double prev_g = std::numeric_limits<double>::infinity();
    int bad = 0;
    double last_k = 1.0;
    for (double c : costs) {
      ModelParams p = base;
      p.c_S = c;
      const AbilityEquilibrium eq = solve_kappa(p);
      if (eq.kappa0_star > prev_k + kSlack || eq.gamma > prev_g + kSlack) ++bad;
      prev_k = eq.kappa0_star;
      prev_g = eq.gamma;
      last_k = eq.kappa0_star;
    }
    CheckResult r{"", bad == 0 && last_k < 1e-3, ""};
    r.detail = "frontier c_S=" + format_double(frontier) + " monotonicity breaks=" +
               std::to_string(bad) + " final kappa0=" + format_double(last_k);
    return r;
  });
}

CheckResult check_existence_bounds(const VerifyOptions&) {
  return timed("existence_bounds", [&] {
    const ModelParams base = fig1_base(0.2);
    const ExistenceBounds b = existence_bounds(base);
    const double cbar = b.c_bar_S;
    const double q0 = q_bar(base, 0.0);
    const double qc = q_bar(base, cbar);
    const double c_sat = q_bar_saturation_cost(base);
    bool strict = true;
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 20; ++k) {
      const double c = c_sat + (cbar - c_sat) * (k + 1) / 21.0;
      const double v = q_bar(base, c);
      if (!(v < prev)) strict = false;
      prev = v;
    }
    bool weak = true;
    prev = std::numeric_limits<double>::infinity();
    for (double c : linspace(0.0, cbar, 20)) {
      const double v = q_bar(base, c);
      if (v > prev) weak = false;
      prev = v;
    }
    const bool hand = std::abs(cbar - 36.0 / 41.0) <= 1e-12;
    CheckResult r{"", std::abs(q0 - 1.0) <= 1e-8 && std::abs(qc) <= 1e-8 && strict &&
                          weak && hand,
                  ""};
    r.detail = "c_bar_S=" + format_double(cbar) + " q_bar(0)=" + format_double(q0) +
               " q_bar(c_bar)=" + format_double(qc) + " saturation c_S=" +
               format_double(c_sat) + (strict ? " strict" : " NOT strict") +
               (weak ? " nonincreasing" : " NOT nonincreasing");
    return r;
  });
}

CheckResult check_bayes_plausibility(const VerifyOptions&) {
  return timed("bayes_plausibility", [&] {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      ModelParams p;
      p.q = 0.01 + 0.98 * u(gen);
      p.beta = u(gen);
      p.p_R = 0.51 + 0.48 * u(gen);
      p.eta = p.p_R + (1.0 - p.p_R) * u(gen);
      p.p_T = p.p_R;
      p.lambda_S = 0.01 + 0.48 * u(gen);
      const double kappa = u(gen);
      const SignalStats z = signal_stats(p, p.p_R);
      const ReceiverBeliefs b = receiver_beliefs(p, kappa);
      const double share = p.lambda_S * z.z0P + (1.0 - p.lambda_S) * z.z0 * kappa;
      const double lhs = share * b.pi_0U + (1.0 - share) * b.pi_empty;
      worst = std::max(worst, std::abs(lhs - p.lambda_S));
    }
    CheckResult r{"", worst <= 1e-12, "max |E[posterior] - lambda_S| = " + format_double(worst)};
    return r;
  });
}

CheckResult check_ability_statics(const VerifyOptions& opt) {
  return timed("ability_statics", [&] {
    const ModelParams base = fig1_base(0.2);
    const std::vector<double> axis = fig1_axis(opt.grid);
    int bad = 0;
    std::ostringstream os;
    struct Axis {
      const char* name;
      double ModelParams::*field;
      int direction;  // -1 nonincreasing, +1 nondecreasing
    };
    for (const Axis& ax : {Axis{"q", &ModelParams::q, -1}, Axis{"p_S", &ModelParams::p_S, -1},
                           Axis{"beta", &ModelParams::beta, +1}}) {
      double prev = kNaN;
      int breaks = 0;
      for (double v : axis) {
        ModelParams p = base;
        p.*ax.field = v;
        const double k = solve_kappa(p).kappa0_star;
        if (!std::isnan(prev) && ax.direction * (k - prev) < -kSlack) ++breaks;
        prev = k;
      }
      bad += breaks;
      os << ax.name << " breaks=" << breaks << "; ";
    }
    // delta strictly decreasing and the utility ranking on random draws
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int delta_breaks = 0;
    int rank_breaks = 0;
    for (int i = 0; i < 1000; ++i) {
      ModelParams p;
      p.q = 0.01 + 0.98 * u(gen);
      p.beta = 0.99 * u(gen);
      p.p_R = 0.51 + 0.48 * u(gen);
      p.eta = p.p_R + (1.0 - p.p_R) * u(gen);
      p.p_S = u(gen);
      p.p_T = 0.01 + 0.98 * u(gen);
      p.lambda_S = 0.01 + 0.48 * u(gen);
      p.lambda_R = 0.01 + 0.48 * u(gen);
      p.c_S = 0.5 * u(gen);
      double prev = delta(p, 0.0);
      for (int k = 1; k <= 20; ++k) {
        const double d = delta(p, k / 20.0);
        if (!(d < prev)) ++delta_breaks;
        prev = d;
      }
      if (!(delta(p, 1.0) < 0.0)) ++delta_breaks;
      const SharingUtilities su = sharing_utilities(p, u(gen));
      if (!(su.u_0P > su.u_0U && su.u_0U > su.u_0F)) ++rank_breaks;
    }
    os << "delta monotonicity breaks=" << delta_breaks << " utility ranking breaks=" << rank_breaks;
    CheckResult r{"", bad == 0 && delta_breaks == 0 && rank_breaks == 0, os.str()};
    return r;
  });
}

CheckResult check_jacobian_audit(const VerifyOptions&) {
  return timed("jacobian_audit", [&] {
    const ModelParams w = symmetric_worldview();
    const Distribution U = Distribution::uniform(0.0, 1.0);
    const Assumption1Audit a =
        check_assumption1(U, Distribution::point_mass(w.p_R), w, 41);
    const Assumption1Audit again =
        check_assumption1(U, Distribution::point_mass(w.p_R), w, 41);
    const bool same = a.max_dCl_dpSl == again.max_dCl_dpSl &&
                      a.min_dCh_dpSh == again.min_dCh_dpSh && a.max_det == again.max_det;
    // Negative control: two narrow spikes make the pooled means jump.
    const Distribution spikes = Distribution::piecewise_linear(
        {0.0, 0.19, 0.2, 0.21, 0.79, 0.8, 0.81, 1.0},
        {0.01, 0.01, 100.0, 0.01, 0.01, 100.0, 0.01, 0.01});
    const Assumption1Audit s =
        check_assumption1(spikes, Distribution::point_mass(w.p_R), w, 21);
    CheckResult r{"", a.pass() && same && !s.pass(), ""};
    r.detail = "uniform 41x41: max dCl/dpSl=" + format_double(a.max_dCl_dpSl) +
               " min dCh/dpSh=" + format_double(a.min_dCh_dpSh) +
               " max det=" + format_double(a.max_det) +
               (a.pass() ? " pass" : " FAIL") + "; spiked prior violations=" +
               std::to_string(s.violations.size());
    return r;
  });
}

CheckResult check_worldview_statics(const VerifyOptions&) {
  return timed("worldview_statics", [&] {
    const Distribution U = Distribution::uniform(0.0, 1.0);
    const ModelParams base = worldview_statics_base();
    int audit_fail = 0;
    int breaks_pr = 0;
    double pl0 = 2.0;
    double ph0 = 2.0;
    for (double pr : statics_receiver_grid()) {
      ModelParams p = base;
      p.p_R = pr;
      const Distribution R = Distribution::point_mass(pr);
      if (!check_assumption1(U, R, p, 21).pass()) ++audit_fail;
      const WorldviewEquilibrium eq = solve_thresholds(U, R, p);
      if (eq.status != WorldviewStatus::Interior) ++breaks_pr;
      if (!(eq.p_Sl_star < pl0 && eq.p_Sh_star < ph0)) ++breaks_pr;
      pl0 = eq.p_Sl_star;
      ph0 = eq.p_Sh_star;
    }
    int breaks_c = 0;
    pl0 = 2.0;
    ph0 = -1.0;
    for (double c : statics_cost_grid()) {
      ModelParams p = base;
      p.c_S = c;
      const WorldviewEquilibrium eq = solve_thresholds(U, Distribution::point_mass(p.p_R), p);
      if (eq.status != WorldviewStatus::Interior) ++breaks_c;
      if (!(eq.p_Sl_star < pl0 && eq.p_Sh_star > ph0)) ++breaks_c;
      pl0 = eq.p_Sl_star;
      ph0 = eq.p_Sh_star;
    }
    // Sign from differentiating gamma through the thresholds: with both
    // thresholds falling in p_R, gamma rises in p_R when beta > beta_hat.
    int gamma_breaks = 0;
    for (double beta : {0.2, 0.8}) {
      ModelParams p = base;
      p.beta = beta;
      const double h = kAuditStep;
      auto g = [&](double pr) {
        ModelParams x = p;
        x.p_R = pr;
        const WorldviewEquilibrium eq = solve_thresholds(U, Distribution::point_mass(pr), x);
        return eq.gamma;
      };
      const double d = (g(p.p_R + h) - g(p.p_R - h)) / (2.0 * h);
      const double expected_sign = beta > beta_hat(p) ? 1.0 : -1.0;
      if (!(d * expected_sign > 0.0)) ++gamma_breaks;
    }
    CheckResult r{"", audit_fail == 0 && breaks_pr == 0 && breaks_c == 0 && gamma_breaks == 0,
                  ""};
    r.detail = "audit failures=" + std::to_string(audit_fail) +
               " p_R breaks=" + std::to_string(breaks_pr) +
               " c_S breaks=" + std::to_string(breaks_c) +
               " dgamma/dp_R sign breaks=" + std::to_string(gamma_breaks);
    return r;
  });
}

CheckResult check_receiver_shift(const VerifyOptions&) {
  return timed("receiver_shift", [&] {
    const Distribution U = Distribution::uniform(0.0, 1.0);
    const ModelParams base = worldview_statics_base();
    int breaks = 0;
    const std::vector<double> grid = statics_receiver_grid();
    for (std::size_t i = 0; i + 1 < grid.size(); i += 3) {
      ModelParams lo = base;
      ModelParams hi = base;
      lo.p_R = grid[i];
      hi.p_R = grid[i + 1];
      const WorldviewEquilibrium a = solve_thresholds(U, Distribution::point_mass(lo.p_R), lo);
      const WorldviewEquilibrium b = solve_thresholds(U, Distribution::point_mass(hi.p_R), hi);
      if (!(b.p_Sl_star < a.p_Sl_star && b.p_Sh_star < a.p_Sh_star)) ++breaks;
    }
    // A dominating receiver population (shifted uniform) via quadrature.
    const WorldviewEquilibrium a =
        solve_thresholds(U, Distribution::uniform(0.6, 0.8), base);
    const WorldviewEquilibrium b =
        solve_thresholds(U, Distribution::uniform(0.7, 0.9), base);
    const bool pop = b.p_Sl_star < a.p_Sl_star && b.p_Sh_star < a.p_Sh_star;
    CheckResult r{"", breaks == 0 && pop, ""};
    r.detail = "point pairs breaks=" + std::to_string(breaks) + "; population shift " +
               (pop ? "lowers both thresholds" : "DOES NOT lower both thresholds");
    return r;
  });
}

CheckResult check_neutral_bias(const VerifyOptions& opt) {
  return timed("neutral_bias_quality", [&] {
    const auto inst = random_worldview_instances(100, 202, true);
    double worst = 0.0;
    for (const WorldviewInstance& w : inst) {
      const double g = opt.gamma_worldview_fn(Distribution::uniform(w.a, w.b), w.params,
                                              w.eq.p_Sl_star, w.eq.p_Sh_star);
      worst = std::max(worst, std::abs(g - w.params.q));
    }
    CheckResult r{"", worst <= 1e-9, "100 instances, max |gamma - q| = " + format_double(worst)};
    return r;
  });
}

CheckResult check_quality_sign(const VerifyOptions& opt) {
  return timed("quality_sign_identity", [&] {
    const auto inst = random_worldview_instances(1000, 303, false);
    int compared = 0;
    int mismatches = 0;
    std::string first_bad;
    for (const WorldviewInstance& w : inst) {
      const Distribution F = Distribution::uniform(w.a, w.b);
      const double g =
          opt.gamma_worldview_fn(F, w.params, w.eq.p_Sl_star, w.eq.p_Sh_star);
      const double diff = g - w.params.q;
      if (!(std::abs(diff) > 1e-9)) continue;
      ++compared;
      const int observed = diff > 0.0 ? 1 : -1;
      if (observed != predict_quality_sign(F, w.params, w.eq.p_Sl_star, w.eq.p_Sh_star)) {
        if (mismatches++ == 0) first_bad = tuple_string(w.params);
      }
    }
    CheckResult r{"", mismatches == 0 && compared > 0, ""};
    r.detail = "1000 instances, compared=" + std::to_string(compared) +
               " mismatches=" + std::to_string(mismatches) +
               (first_bad.empty() ? "" : " first offending tuple " + first_bad);
    return r;
  });
}

CheckResult check_martingale(const VerifyOptions&) {
  return timed("posterior_martingale", [&] {
    const auto inst = random_worldview_instances(200, 404, false);
    double worst = 0.0;
    for (const WorldviewInstance& w : inst) {
      const Distribution F = Distribution::uniform(w.a, w.b);
      const double ph = p_hat_R(w.params, w.params.p_R);
      for (int i = 1; i <= 4; ++i) {
        for (int j = 0; j <= 4; ++j) {
          // iterate-like points around the solution, plus the solution itself
          const double pl = w.a + (w.eq.p_Sl_star - w.a) * (0.5 + 0.125 * i);
          const double phh = w.eq.p_Sh_star + (w.b - w.eq.p_Sh_star) * 0.18 * j;
          const WorldviewPosteriors post = posteriors(F, pl, phh, ph);
          const double Fl = F.mass(w.a, pl);
          const double Fh = F.mass(w.a, phh);
          const double lhs = (1.0 - ph) * Fl * post.pS_given_0 +
                             ph * (1.0 - Fh) * post.pS_given_1 +
                             (ph * Fh + (1.0 - ph) * (1.0 - Fl)) * post.pS_given_empty;
          worst = std::max(worst, std::abs(lhs - F.mean()));
        }
      }
    }
    CheckResult r{"", worst <= 1e-10, "max martingale error = " + format_double(worst)};
    return r;
  });
}

CheckResult check_mc_ability(const VerifyOptions& opt) {
  return timed("mc_ability", [&] {
    const ModelParams p = fig1_base(0.2);  // p_T = p_R already
    const AbilityEquilibrium eq = solve_kappa(p);
    SimConfig cfg;
    cfg.n_draws = opt.n_draws;
    cfg.seed = opt.seed;
    cfg.regime = Regime::Ability;
    cfg.threads = opt.threads;
    const SimReport rep = simulate_ability(p, eq, cfg);
    const double share = analytic_share_rate_ability(p, eq.kappa0_star);
    const bool ok = within_se(rep.gamma, eq.gamma) && within_se(rep.share_rate, share) &&
                    within_se(rep.pi_0U, eq.beliefs.pi_0U) &&
                    within_se(rep.pi_empty, eq.beliefs.pi_empty) &&
                    within_se(rep.sigma1_rate, prob_sigma_one(p));
    CheckResult r{"", ok, ""};
    r.detail = "n=" + std::to_string(rep.n_draws) + " seed=" + std::to_string(rep.seed) +
               " isa=" + rep.isa + ": " + mc_line("gamma", rep.gamma, eq.gamma) +
               mc_line("share_rate", rep.share_rate, share) +
               mc_line("pi_0U", rep.pi_0U, eq.beliefs.pi_0U) +
               mc_line("pi_empty", rep.pi_empty, eq.beliefs.pi_empty) +
               mc_line("P(sigma=1)", rep.sigma1_rate, prob_sigma_one(p));
    return r;
  });
}

ModelParams mc_worldview_params() {
  ModelParams w;
  w.q = 0.3;
  w.beta = 0.2;
  w.eta = 0.6;
  w.p_T = 0.8;
  w.p_R = 0.8;
  w.c_S = 0.05;
  return w;
}

CheckResult check_mc_worldview(const VerifyOptions& opt) {
  return timed("mc_worldview", [&] {
    const ModelParams p = mc_worldview_params();
    const Distribution U = Distribution::uniform(0.0, 1.0);
    const WorldviewEquilibrium eq = solve_thresholds(U, Distribution::point_mass(p.p_R), p);
    SimConfig cfg;
    cfg.n_draws = opt.n_draws;
    cfg.seed = opt.seed;
    cfg.regime = Regime::Worldview;
    cfg.threads = opt.threads;
    const SimReport rep = simulate_worldview(U, p, eq, cfg);
    const WorldviewPosteriors post =
        posteriors(U, eq.p_Sl_star, eq.p_Sh_star, p_hat_R(p, p.p_R));
    const double share = analytic_share_rate_worldview(U, p, eq.p_Sl_star, eq.p_Sh_star);
    const bool ok = eq.status == WorldviewStatus::Interior &&
                    within_se(rep.pS_given_0, post.pS_given_0) &&
                    within_se(rep.pS_given_1, post.pS_given_1) &&
                    within_se(rep.pS_given_empty, post.pS_given_empty) &&
                    within_se(rep.gamma, eq.gamma) && within_se(rep.share_rate, share) &&
                    within_se(rep.sigma1_rate, prob_sigma_one(p));
    CheckResult r{"", ok, ""};
    r.detail = "n=" + std::to_string(rep.n_draws) + " seed=" + std::to_string(rep.seed) +
               " isa=" + rep.isa + ": " + mc_line("pS_given_0", rep.pS_given_0, post.pS_given_0) +
               mc_line("pS_given_1", rep.pS_given_1, post.pS_given_1) +
               mc_line("pS_given_empty", rep.pS_given_empty, post.pS_given_empty) +
               mc_line("gamma", rep.gamma, eq.gamma) +
               mc_line("share_rate", rep.share_rate, share);
    return r;
  });
}

std::vector<CheckResult> run_verify(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  out.push_back(check_bias_threshold(opt));
  out.push_back(check_cost_monotonicity(opt));
  out.push_back(check_existence_bounds(opt));
  out.push_back(check_bayes_plausibility(opt));
  out.push_back(check_ability_statics(opt));
  out.push_back(check_jacobian_audit(opt));
  out.push_back(check_worldview_statics(opt));
  out.push_back(check_receiver_shift(opt));
  out.push_back(check_neutral_bias(opt));
  out.push_back(check_quality_sign(opt));
  out.push_back(check_martingale(opt));
  if (opt.simulate) {
    out.push_back(check_mc_ability(opt));
    out.push_back(check_mc_worldview(opt));
  }
  return out;
}

}  // namespace sharesig
