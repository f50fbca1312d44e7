// Acceptance gate: one PASS/FAIL line per criterion, tolerances pinned here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sharesig/ability.hpp"
#include "sharesig/experiments.hpp"
#include "sharesig/format.hpp"
#include "sharesig/simulate.hpp"
#include "sharesig/worldview.hpp"

using namespace sharesig;

namespace {

constexpr double kSignSlack = 1e-9;
constexpr int kGrid = 33;
constexpr std::uint64_t kDraws = 1'000'000;
constexpr std::uint64_t kSeed = 7;

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(const char* id, const char* title, double limit_s,
               const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs < limit_s;
  const bool pass = o.pass && in_time;
  failures += !pass;
  std::printf("%s %s  %s  [%.2fs, limit %.0fs%s]  %s\n", id, pass ? "PASS" : "FAIL", title,
              secs, limit_s, in_time ? "" : ", TOO SLOW", o.detail.c_str());
  std::fflush(stdout);
}

std::string num(double v) { return format_double(v); }

bool within(const Estimate& e, double analytic, std::string& log, const char* what) {
  const bool ok = std::abs(e.value - analytic) <= 3.0 * e.se;
  log += std::string(what) + " z=" + num((e.value - analytic) / e.se) + (ok ? "" : "!") + " ";
  return ok;
}

Outcome c1_bias_threshold() {
  bool ok = true;
  std::ostringstream os;
  for (auto [lambda_S, expected] : {std::pair{0.1, 41.0 / 81}, std::pair{0.2, 4.0 / 9}}) {
    const Fig1Panel panel = fig1_panel(lambda_S, kGrid);
    const bool exact = std::abs(panel.beta_tilde - expected) <= 1e-12;
    int above = 0, bad = 0;
    for (const Fig1Cell& c : panel.cells) {
      if (c.beta > panel.beta_tilde) {
        ++above;
        bad += !(c.gamma_minus_q < 0.0);
      }
    }
    ok = ok && exact && bad == 0 && above > 0;
    os << "lambda_S=" << lambda_S << ": beta_tilde err=" << num(panel.beta_tilde - expected)
       << " cells above=" << above << " with gamma>=q=" << bad << "; ";
  }
  return {ok, os.str()};
}

Outcome c2_sign_structure() {
  const Fig1Panel p10 = fig1_panel(0.1, kGrid);
  const Fig1Panel p20 = fig1_panel(0.2, kGrid);
  // 2x2 block of smallest (q, beta)
  bool corner = true;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      corner = corner && p10.cells[i * kGrid + j].gamma_minus_q > kSignSlack;
    }
  }
  const int n10 = p10.positive_cells(kSignSlack);
  const int n20 = p20.positive_cells(kSignSlack);
  return {corner && n10 >= n20 && p10.all_interior() && p20.all_interior(),
          "corner gamma-q=" + num(p10.cells[0].gamma_minus_q) +
              " positive cells lambda_S=0.1: " + std::to_string(n10) +
              " vs 0.2: " + std::to_string(n20)};
}

Outcome c3_cost_monotonicity() {
  const ModelParams base = fig1_base(0.2);
  const double frontier = ability_cost_frontier(base);
  double pk = std::numeric_limits<double>::infinity(), pg = pk, last = 1.0;
  int breaks = 0;
  for (int k = 0; k < 50; ++k) {
    ModelParams p = base;
    p.c_S = (frontier - 1e-7) * k / 49.0;
    const AbilityEquilibrium eq = solve_kappa(p);
    breaks += eq.kappa0_star > pk + kSignSlack || eq.gamma > pg + kSignSlack;
    pk = eq.kappa0_star;
    pg = eq.gamma;
    last = eq.kappa0_star;
  }
  return {breaks == 0 && last < 1e-3, "frontier c_S=" + num(frontier) + " breaks=" +
                                          std::to_string(breaks) + " final kappa0=" + num(last)};
}

Outcome c4_closed_form() {
  ModelParams p;
  p.q = 0.5;
  p.beta = 0.5;
  p.eta = 0.9;
  p.p_T = 0.5;
  p.p_R = 0.5;  // p_hat_R = 1/2
  const Distribution U = Distribution::uniform(0.0, 1.0);
  double worst = 0.0;
  bool interior = true;
  for (double c : {0.0, 0.05, 0.1, 0.2}) {
    p.c_S = c;
    const WorldviewEquilibrium eq = solve_thresholds(U, Distribution::point_mass(0.5), p);
    interior = interior && eq.status == WorldviewStatus::Interior;
    worst = std::max({worst, std::abs(eq.p_Sl_star - (1 - 2 * c) / 3),
                      std::abs(eq.p_Sh_star - (2 + 2 * c) / 3)});
  }
  return {interior && worst <= 1e-9, "max threshold error=" + num(worst)};
}

Outcome c5_quality() {
  const auto neutral = random_worldview_instances(100, 202, true);
  double worst = 0.0;
  for (const auto& w : neutral) {
    worst = std::max(worst, std::abs(w.eq.gamma - w.params.q));
  }
  const auto inst = random_worldview_instances(1000, 303, false);
  int compared = 0, mismatch = 0;
  for (const auto& w : inst) {
    const double d = w.eq.gamma - w.params.q;
    if (!(std::abs(d) > kSignSlack)) continue;
    ++compared;
    mismatch += (d > 0 ? 1 : -1) != predict_quality_sign(Distribution::uniform(w.a, w.b),
                                                          w.params, w.eq.p_Sl_star,
                                                          w.eq.p_Sh_star);
  }
  return {neutral.size() == 100 && worst <= 1e-9 && inst.size() == 1000 && compared > 0 &&
              mismatch == 0,
          "(a) max |gamma-q|=" + num(worst) + " (b) compared=" + std::to_string(compared) +
              " mismatches=" + std::to_string(mismatch)};
}

Outcome c6_statics() {
  const Distribution U = Distribution::uniform(0.0, 1.0);
  const ModelParams base = worldview_statics_base();
  int audit_fail = 0, breaks_r = 0, breaks_c = 0;
  double pl = 2, ph = 2;
  for (double pr : statics_receiver_grid()) {
    ModelParams p = base;
    p.p_R = pr;
    const Distribution R = Distribution::point_mass(pr);
    audit_fail += !check_assumption1(U, R, p, 21).pass();
    const WorldviewEquilibrium eq = solve_thresholds(U, R, p);
    breaks_r += eq.status != WorldviewStatus::Interior || !(eq.p_Sl_star < pl) ||
                !(eq.p_Sh_star < ph);
    pl = eq.p_Sl_star;
    ph = eq.p_Sh_star;
  }
  pl = 2;
  ph = -1;
  for (double c : statics_cost_grid()) {
    ModelParams p = base;
    p.c_S = c;
    const WorldviewEquilibrium eq = solve_thresholds(U, Distribution::point_mass(p.p_R), p);
    breaks_c += eq.status != WorldviewStatus::Interior || !(eq.p_Sl_star < pl) ||
                !(eq.p_Sh_star > ph);
    pl = eq.p_Sl_star;
    ph = eq.p_Sh_star;
  }
  const WorldviewEquilibrium lo = solve_thresholds(U, Distribution::uniform(0.6, 0.8), base);
  const WorldviewEquilibrium hi = solve_thresholds(U, Distribution::uniform(0.7, 0.9), base);
  const bool fosd = hi.p_Sl_star < lo.p_Sl_star && hi.p_Sh_star < lo.p_Sh_star;
  return {audit_fail == 0 && breaks_r == 0 && breaks_c == 0 && fosd,
          "audit failures=" + std::to_string(audit_fail) + " p_R breaks=" +
              std::to_string(breaks_r) + " c_S breaks=" + std::to_string(breaks_c) +
              " FOSD " + (fosd ? "ok" : "FAILED")};
}

Outcome c7_heatmap() {
  const Fig3Grid g = fig3_grid(kGrid);
  const double step = 1.0 / (kGrid + 1);
  int tested = 0, bad = 0;
  for (int j = 0; j < kGrid; ++j) {
    const Fig3Cell& c = g.cells[j];  // lowest q row
    if (std::abs(c.beta - 0.5) <= step) continue;
    ++tested;
    bad += c.status != "Interior" || (c.gamma_minus_q > 0) != (c.beta < 0.5);
  }
  const ModelParams base = fig3_base();
  const Distribution U = Distribution::uniform(0.0, 1.0);
  const double q_top = static_cast<double>(kGrid) / (kGrid + 1);
  const Fig3Cell a = fig3_cell(U, base, q_top, 0.1);
  const Fig3Cell b = fig3_cell(U, base, q_top, 0.9);
  const bool top = a.status == "Interior" && b.status == "Interior" &&
                   a.gamma_minus_q > 0 && b.gamma_minus_q > 0;
  return {g.errors == 0 && tested > 0 && bad == 0 && top,
          "low row tested=" + std::to_string(tested) + " mismatches=" + std::to_string(bad) +
              "; top row gamma-q at beta 0.1: " + num(a.gamma_minus_q) +
              ", 0.9: " + num(b.gamma_minus_q)};
}

Outcome c8_ability_mc() {
  const ModelParams p = fig1_base(0.2);
  const AbilityEquilibrium eq = solve_kappa(p);
  SimConfig cfg;
  cfg.n_draws = kDraws;
  cfg.seed = kSeed;
  const SimReport r = simulate_ability(p, eq, cfg);
  std::string log;
  bool ok = r.receiver_model_matches;
  ok &= within(r.gamma, eq.gamma, log, "gamma");
  ok &= within(r.share_rate, analytic_share_rate_ability(p, eq.kappa0_star), log, "share");
  ok &= within(r.pi_0U, eq.beliefs.pi_0U, log, "pi_0U");
  ok &= within(r.pi_empty, eq.beliefs.pi_empty, log, "pi_empty");

  // Bayes plausibility with p_T = p_R, analytic
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    ModelParams x;
    x.q = 0.01 + 0.98 * u(gen);
    x.beta = u(gen);
    x.p_R = 0.51 + 0.48 * u(gen);
    x.eta = x.p_R + (1 - x.p_R) * u(gen);
    x.p_T = x.p_R;
    x.lambda_S = 0.01 + 0.48 * u(gen);
    const double kappa = u(gen);
    const SignalStats z = signal_stats(x, x.p_R);
    const ReceiverBeliefs b = receiver_beliefs(x, kappa);
    const double share = x.lambda_S * z.z0P + (1 - x.lambda_S) * z.z0 * kappa;
    worst = std::max(worst, std::abs(share * b.pi_0U + (1 - share) * b.pi_empty - x.lambda_S));
  }
  ok &= worst <= 1e-12;
  return {ok, "n=" + std::to_string(kDraws) + " isa=" + r.isa + " " + log +
                  "bayes plausibility err=" + num(worst)};
}

Outcome c8_worldview_mc() {
  ModelParams p;
  p.q = 0.3;
  p.beta = 0.2;
  p.eta = 0.6;
  p.p_T = 0.8;
  p.p_R = 0.8;
  p.c_S = 0.05;
  const Distribution U = Distribution::uniform(0.0, 1.0);
  const WorldviewEquilibrium eq = solve_thresholds(U, Distribution::point_mass(0.8), p);
  SimConfig cfg;
  cfg.n_draws = kDraws;
  cfg.seed = kSeed;
  cfg.regime = Regime::Worldview;
  const SimReport r = simulate_worldview(U, p, eq, cfg);
  std::string log;
  bool ok = eq.status == WorldviewStatus::Interior;
  ok &= within(r.pS_given_0, eq.posteriors.pS_given_0, log, "pS(0)");
  ok &= within(r.pS_given_1, eq.posteriors.pS_given_1, log, "pS(1)");
  ok &= within(r.pS_given_empty, eq.posteriors.pS_given_empty, log, "pS(empty)");
  ok &= within(r.gamma, eq.gamma, log, "gamma");
  ok &= within(r.share_rate,
               analytic_share_rate_worldview(U, p, eq.p_Sl_star, eq.p_Sh_star), log, "share");
  return {ok, "n=" + std::to_string(kDraws) + " isa=" + r.isa + " " + log};
}

Outcome c9_existence() {
  const ModelParams base = fig1_base(0.2);
  const double cbar = existence_bounds(base).c_bar_S;
  const double q0 = q_bar(base, 0.0);
  const double qc = q_bar(base, cbar);
  // q_bar is identically 1 below the saturation cost, so the strict-decrease
  // grid starts there.
  const double c_sat = q_bar_saturation_cost(base);
  bool strict = true;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 20; ++k) {
    const double v = q_bar(base, c_sat + (cbar - c_sat) * (k + 1) / 21.0);
    strict = strict && v < prev;
    prev = v;
  }
  const bool ok = std::abs(q0 - 1) <= 1e-8 && std::abs(qc) <= 1e-8 && strict &&
                  std::abs(cbar - 36.0 / 41) <= 1e-12;
  return {ok, "c_bar_S-36/41=" + num(cbar - 36.0 / 41) + " q_bar(0)=" + num(q0) +
                  " q_bar(c_bar)=" + num(qc) + " strict on (" + num(c_sat) + ", c_bar): " +
                  (strict ? "yes" : "no")};
}

}  // namespace

int main() {
  criterion("C1", "bias threshold values and gamma<q above them", 60, c1_bias_threshold);
  criterion("C2", "ability surface sign structure", 60, c2_sign_structure);
  criterion("C3", "kappa0 and gamma nonincreasing in sharing cost", 5, c3_cost_monotonicity);
  criterion("C4", "worldview uniform closed form", 1, c4_closed_form);
  criterion("C5", "neutral bias and quality sign identity", 30, c5_quality);
  criterion("C6", "worldview thresholds along p_R, c_S, receiver shift", 10, c6_statics);
  criterion("C7", "worldview heatmap sign regions", 60, c7_heatmap);
  criterion("C8a", "Monte Carlo agreement, ability", 30, c8_ability_mc);
  criterion("C8b", "Monte Carlo agreement, worldview", 30, c8_worldview_mc);
  criterion("C9", "existence bounds", 60, c9_existence);
  std::printf("%s: %d failing criteria\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
