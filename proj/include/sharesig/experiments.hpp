#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sharesig/ability.hpp"
#include "sharesig/config.hpp"
#include "sharesig/distribution.hpp"
#include "sharesig/model.hpp"
#include "sharesig/worldview.hpp"

namespace sharesig {

// ---- ability surface ----

/// Base point of the ability-game surface: c_S = 0, eta = 2/3,
/// lambda_R = 1/5, p_S = p_R = p_T = 2/3.
ModelParams fig1_base(double lambda_S);
/// `n` evenly spaced points on [1/10, 9/10].
std::vector<double> fig1_axis(int n);

struct Fig1Cell {
  double q;
  double beta;
  double kappa0_star;
  double gamma;
  double gamma_minus_q;
  AbilityStatus status;
};

struct Fig1Panel {
  double lambda_S;
  double beta_tilde;
  int grid;
  std::vector<Fig1Cell> cells;  // row-major, q outer

  bool all_interior() const;
  int positive_cells(double slack = 1e-9) const;
};

Fig1Panel fig1_panel(double lambda_S, int grid, unsigned threads = 0);
std::string fig1_csv(const Fig1Panel& panel);

// ---- worldview heatmap ----

/// eta = 9/10, p_R = 1/10, p_T = 1/2, c_S = 0.
ModelParams fig3_base();
/// Open-interval grid k/(n+1), k = 1..n.
std::vector<double> fig3_axis(int n);

struct Fig3Cell {
  double q;
  double beta;
  double gamma_minus_q;
  double p_Sl;
  double p_Sh;
  std::string status;  // WorldviewStatus name, or "Error:<kind>"
};

struct Fig3Grid {
  int grid;
  std::vector<Fig3Cell> cells;  // row-major, q outer
  int errors = 0;
};

Fig3Cell fig3_cell(const Distribution& F_S, const ModelParams& base, double q,
                   double beta);
Fig3Grid fig3_grid(int grid, unsigned threads = 0);
std::string fig3_csv(const Fig3Grid& grid);

// ---- sweeps ----

struct SweepOutput {
  std::string csv;
  std::size_t rows = 0;
  int errors = 0;
};

/// Cartesian product of the config's sweep axes around its base point.
/// Throws ConfigError when a grid point fails validation.
SweepOutput run_sweep(const ExperimentConfig& cfg, unsigned threads = 0);

/// Sidecar describing every fixed input behind an output file.
std::string provenance_json(const ExperimentConfig& cfg, const std::string& command,
                            int grid);

// ---- verification suites ----

struct CheckResult {
  std::string name;
  bool pass;
  std::string detail;
  double seconds = 0.0;
};

using GammaFn = std::function<double(const Distribution&, const ModelParams&,
                                     double, double)>;

struct VerifyOptions {
  bool simulate = true;
  std::uint64_t n_draws = 1'000'000;
  std::uint64_t seed = 7;
  unsigned threads = 0;
  int grid = 33;
  /// Replaceable for negative controls.
  GammaFn gamma_worldview_fn = gamma_worldview;
};

/// Intentionally wrong quality measure (bias taken as 1 - beta).
double corrupted_gamma_worldview(const Distribution& F_S, const ModelParams& params,
                                 double p_Sl, double p_Sh);

CheckResult check_bias_threshold(const VerifyOptions& opt);
CheckResult check_cost_monotonicity(const VerifyOptions& opt);
CheckResult check_existence_bounds(const VerifyOptions& opt);
CheckResult check_bayes_plausibility(const VerifyOptions& opt);
CheckResult check_ability_statics(const VerifyOptions& opt);
CheckResult check_jacobian_audit(const VerifyOptions& opt);
CheckResult check_worldview_statics(const VerifyOptions& opt);
CheckResult check_neutral_bias(const VerifyOptions& opt);
CheckResult check_quality_sign(const VerifyOptions& opt);
CheckResult check_receiver_shift(const VerifyOptions& opt);
CheckResult check_martingale(const VerifyOptions& opt);
CheckResult check_mc_ability(const VerifyOptions& opt);
CheckResult check_mc_worldview(const VerifyOptions& opt);

std::vector<CheckResult> run_verify(const VerifyOptions& opt);

// ---- shared fixtures ----

/// Random worldview instance with uniform-family F_S and a point receiver,
/// resampled until the solver reports Interior.
struct WorldviewInstance {
  ModelParams params;
  double a, b;  // F_S = Uniform(a, b)
  WorldviewEquilibrium eq;
};

/// Deterministic stream of instances; `neutral_bias` sets beta = beta_hat.
std::vector<WorldviewInstance> random_worldview_instances(std::size_t count,
                                                          std::uint64_t seed,
                                                          bool neutral_bias);

/// Parameters for the worldview comparative statics: Uniform(0,1) F_S and a
/// point receiver.
ModelParams worldview_statics_base();
std::vector<double> statics_receiver_grid();  // 20 points
std::vector<double> statics_cost_grid();      // 20 points

/// c_S at which the low type stops sharing (delta(0) = 0) at `base`.
double ability_cost_frontier(const ModelParams& base);

}  // namespace sharesig
