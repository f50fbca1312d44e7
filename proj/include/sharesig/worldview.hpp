#pragma once

#include <string_view>
#include <vector>

#include "sharesig/distribution.hpp"
#include "sharesig/model.hpp"

namespace sharesig {

/// Receiver's belief that the sender saw sigma = 1.
double p_hat_R(const ModelParams& params, double p_R);

/// Receiver posteriors about the sender's worldview after sigma = 0 is
/// shared, sigma = 1 is shared, or nothing is shared.
struct WorldviewPosteriors {
  double pS_given_0;
  double pS_given_1;
  double pS_given_empty;
};

/// Senders share sigma = 0 iff p_S <= p_Sl and sigma = 1 iff p_S >= p_Sh.
/// Throws SolverError(EmptyPool) if any of the three events has no mass.
WorldviewPosteriors posteriors(const Distribution& F_S, double p_Sl,
                               double p_Sh, double p_hat_R);

struct Indifference {
  double C_l;  // sigma = 0 sharer at p_Sl: share minus keep
  double C_h;  // sigma = 1 sharer at p_Sh: share minus keep
};

/// Both indifference conditions with the absolute values taken literally.
/// The no-share term is averaged over receivers drawn from F_R.
Indifference indifference(const Distribution& F_S, const Distribution& F_R,
                          const ModelParams& params, double p_Sl, double p_Sh);

struct XiResult {
  double xi;
  double residual;
  bool multiple_roots;  // more than one sign change on the scan grid
};

/// Pivot xi solving 2 xi = E[p | p >= xi] + E[p | p <= xi]. Smallest root
/// of a 1000-point scan refined by bisection.
XiResult solve_xi_detail(const Distribution& F_S);
double solve_xi(const Distribution& F_S);

/// min{1 - xi, E[p_S | p_S <= xi]}.
double c_bar_worldview(const Distribution& F_S);

enum class WorldviewStatus { Interior, CornerNoShare0, CornerNoShare1, NoSharing };

std::string_view to_string(WorldviewStatus status);

struct WorldviewEquilibrium {
  double p_Sl_star = 0.0;
  double p_Sh_star = 1.0;
  double xi = 0.5;
  bool xi_multiple = false;
  double c_bar_S = 0.0;
  WorldviewPosteriors posteriors{};
  double gamma = 0.0;
  WorldviewStatus status = WorldviewStatus::NoSharing;
  double residual_l = 0.0;
  double residual_h = 0.0;
  /// p_S(0) < p_Sl* < p_S(empty) and p_S(1) > p_Sh*, where defined.
  bool ordering_ok = true;
};

inline constexpr double kThresholdTolerance = 1e-13;
inline constexpr double kThresholdResidual = 1e-9;

/// Nested bisection: p_Sl on [0, xi] for each p_Sh, then p_Sh on [xi, 1].
/// Throws SolverError(BracketFailure) when an endpoint has a sign the
/// existence argument rules out.
WorldviewEquilibrium solve_thresholds(const Distribution& F_S,
                                      const Distribution& F_R,
                                      const ModelParams& params,
                                      double tol = kThresholdTolerance);

struct AuditPoint {
  double p_Sl;
  double p_Sh;
  double dCl_dpSl;
  double dCh_dpSh;
  double det;
};

struct Assumption1Audit {
  int grid_resolution = 0;
  double max_dCl_dpSl = 0.0;  // must be < 0
  double min_dCh_dpSh = 0.0;  // must be > 0
  double max_det = 0.0;       // must be < 0
  std::vector<AuditPoint> violations;

  bool pass() const { return violations.empty(); }
};

inline constexpr double kAuditStep = 1e-6;

/// Which form of the indifference conditions the audit differentiates.
/// SignResolved drops the absolute values using the equilibrium ordering
/// p_S(0) <= p_Sl <= p_S(empty) <= p_Sh <= p_S(1); Literal keeps them and
/// so also picks up kinks far from any equilibrium.
enum class AuditForm { SignResolved, Literal };

/// Central-difference audit of the Jacobian sign conditions on a
/// grid_n x grid_n grid over [0, xi] x [xi, 1], clamped inside the support.
Assumption1Audit check_assumption1(const Distribution& F_S,
                                   const Distribution& F_R,
                                   const ModelParams& params, int grid_n,
                                   AuditForm form = AuditForm::SignResolved);

/// Indifference conditions with the absolute values resolved by the
/// equilibrium ordering. Equal to `indifference` wherever that ordering holds.
Indifference indifference_sign_resolved(const Distribution& F_S,
                                        const Distribution& F_R,
                                        const ModelParams& params,
                                        double p_Sl, double p_Sh);

/// Share of fake signals among shared signals under threshold strategies.
double gamma_worldview(const Distribution& F_S, const ModelParams& params,
                       double p_Sl, double p_Sh);

/// Sign[(beta_hat - beta)(F_S(p_Sl) - (1 - F_S(p_Sh)))].
int predict_quality_sign(const Distribution& F_S, const ModelParams& params,
                         double p_Sl, double p_Sh);

}  // namespace sharesig
