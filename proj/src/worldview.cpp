#include "sharesig/worldview.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sharesig/bisection.hpp"
#include "sharesig/error.hpp"

namespace sharesig {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Mass and first moment of the four pools that enter the posteriors. They do
// not depend on the receiver, so C_l/C_h reuse them across F_R nodes.
struct Pools {
  double m_low, x_low;          // p_S <= p_Sl   (shares sigma = 0)
  double m_high, x_high;        // p_S >= p_Sh   (shares sigma = 1)
  double m_below_h, x_below_h;  // p_S <= p_Sh   (keeps sigma = 1)
  double m_above_l, x_above_l;  // p_S >= p_Sl   (keeps sigma = 0)
};

Pools make_pools(const Distribution& F, double p_Sl, double p_Sh) {
  const double lo = F.support_lo();
  const double hi = F.support_hi();
  Pools p{};
  p.m_low = F.mass(lo, p_Sl);
  p.x_low = F.partial_moment(lo, p_Sl);
  p.m_high = F.mass(p_Sh, hi);
  p.x_high = F.partial_moment(p_Sh, hi);
  p.m_below_h = F.mass(lo, p_Sh);
  p.x_below_h = F.partial_moment(lo, p_Sh);
  p.m_above_l = F.mass(p_Sl, hi);
  p.x_above_l = F.partial_moment(p_Sl, hi);
  return p;
}

[[noreturn]] void empty_pool(const char* which, double p_Sl, double p_Sh) {
  throw SolverError(ErrorKind::EmptyPool,
                    std::string(which) + " pool has no mass at p_Sl=" +
                        std::to_string(p_Sl) + ", p_Sh=" + std::to_string(p_Sh));
}

double empty_posterior(const Pools& p, double ph, double p_Sl, double p_Sh) {
  const double den = ph * p.m_below_h + (1.0 - ph) * p.m_above_l;
  if (!(den > 0.0)) empty_pool("no-share", p_Sl, p_Sh);
  return (ph * p.x_below_h + (1.0 - ph) * p.x_above_l) / den;
}

double mean_low(const Distribution& F, const Pools& p, double p_Sl, double p_Sh) {
  if (!(p.m_low > 0.0)) empty_pool("sigma=0 share", p_Sl, p_Sh);
  return F.truncated_mean(F.support_lo(), p_Sl);
}

double mean_high(const Distribution& F, const Pools& p, double p_Sl, double p_Sh) {
  if (!(p.m_high > 0.0)) empty_pool("sigma=1 share", p_Sl, p_Sh);
  return F.truncated_mean(p_Sh, F.support_hi());
}

// Expected distance between the no-share posterior and `target` across
// receivers.
double no_share_term(const Distribution& F_R, const ModelParams& params,
                     const Pools& pools, double target, double p_Sl,
                     double p_Sh) {
  return F_R.expect([&](double p_R) {
    const double e = empty_posterior(pools, p_hat_R(params, p_R), p_Sl, p_Sh);
    return std::abs(e - target);
  });
}

double c_low(const Distribution& F_S, const Distribution& F_R,
             const ModelParams& params, double p_Sl, double p_Sh) {
  const Pools pools = make_pools(F_S, p_Sl, p_Sh);
  const double m0 = mean_low(F_S, pools, p_Sl, p_Sh);
  return -std::abs(p_Sl - m0) - params.c_S +
         no_share_term(F_R, params, pools, p_Sl, p_Sl, p_Sh);
}

double c_high(const Distribution& F_S, const Distribution& F_R,
              const ModelParams& params, double p_Sl, double p_Sh) {
  const Pools pools = make_pools(F_S, p_Sl, p_Sh);
  const double m1 = mean_high(F_S, pools, p_Sl, p_Sh);
  return -std::abs(p_Sh - m1) - params.c_S +
         no_share_term(F_R, params, pools, p_Sh, p_Sl, p_Sh);
}

double c_low_resolved(const Distribution& F_S, const Distribution& F_R,
                      const ModelParams& params, double p_Sl, double p_Sh) {
  const Pools pools = make_pools(F_S, p_Sl, p_Sh);
  const double m0 = mean_low(F_S, pools, p_Sl, p_Sh);
  const double e = F_R.expect([&](double p_R) {
    return empty_posterior(pools, p_hat_R(params, p_R), p_Sl, p_Sh);
  });
  return m0 + e - 2.0 * p_Sl - params.c_S;
}

double c_high_resolved(const Distribution& F_S, const Distribution& F_R,
                       const ModelParams& params, double p_Sl, double p_Sh) {
  const Pools pools = make_pools(F_S, p_Sl, p_Sh);
  const double m1 = mean_high(F_S, pools, p_Sl, p_Sh);
  const double e = F_R.expect([&](double p_R) {
    return empty_posterior(pools, p_hat_R(params, p_R), p_Sl, p_Sh);
  });
  return 2.0 * p_Sh - m1 - e - params.c_S;
}

// An empty tail contributes its limit, the cut point itself.
double xi_lhs(const Distribution& F, double x) {
  const double lo = F.support_lo();
  const double hi = F.support_hi();
  if (x <= lo) return 2.0 * x - F.mean() - lo;
  if (x >= hi) return 2.0 * x - hi - F.mean();
  const double upper = F.mass(x, hi) > 0.0 ? F.truncated_mean(x, hi) : x;
  const double lower = F.mass(lo, x) > 0.0 ? F.truncated_mean(lo, x) : x;
  return 2.0 * x - upper - lower;
}

}  // namespace

std::string_view to_string(WorldviewStatus status) {
  switch (status) {
    case WorldviewStatus::Interior: return "Interior";
    case WorldviewStatus::CornerNoShare0: return "CornerNoShare0";
    case WorldviewStatus::CornerNoShare1: return "CornerNoShare1";
    case WorldviewStatus::NoSharing: return "NoSharing";
  }
  return "Unknown";
}

double p_hat_R(const ModelParams& p, double p_R) {
  return (1.0 - p.q) * (p.eta * p_R + (1.0 - p.eta) * (1.0 - p_R)) + p.q * p.beta;
}

WorldviewPosteriors posteriors(const Distribution& F_S, double p_Sl,
                               double p_Sh, double ph) {
  const Pools pools = make_pools(F_S, p_Sl, p_Sh);
  return {mean_low(F_S, pools, p_Sl, p_Sh), mean_high(F_S, pools, p_Sl, p_Sh),
          empty_posterior(pools, ph, p_Sl, p_Sh)};
}

Indifference indifference(const Distribution& F_S, const Distribution& F_R,
                          const ModelParams& params, double p_Sl, double p_Sh) {
  return {c_low(F_S, F_R, params, p_Sl, p_Sh),
          c_high(F_S, F_R, params, p_Sl, p_Sh)};
}

XiResult solve_xi_detail(const Distribution& F) {
  if (F.is_degenerate()) {
    throw SolverError(ErrorKind::PreconditionViolation,
                      "xi requires a nondegenerate F_S");
  }
  const double lo = F.support_lo();
  const double hi = F.support_hi();
  constexpr int kScan = 1000;
  int changes = 0;
  double bracket_lo = kNaN;
  double bracket_hi = kNaN;
  double prev_x = lo;
  double prev_v = xi_lhs(F, lo);
  for (int i = 1; i <= kScan; ++i) {
    const double x = i == kScan ? hi : lo + (hi - lo) * i / kScan;
    const double v = xi_lhs(F, x);
    if ((prev_v < 0.0) != (v < 0.0)) {
      if (changes == 0) {
        bracket_lo = prev_x;
        bracket_hi = x;
      }
      ++changes;
    }
    prev_x = x;
    prev_v = v;
  }
  if (changes == 0) {
    throw SolverError(ErrorKind::NoRoot, "no sign change of the xi equation");
  }
  const BisectResult r = bisect([&](double x) { return xi_lhs(F, x); },
                                bracket_lo, bracket_hi, false, 1e-15);
  return {r.x, std::abs(xi_lhs(F, r.x)), changes > 1};
}

double solve_xi(const Distribution& F_S) { return solve_xi_detail(F_S).xi; }

double c_bar_worldview(const Distribution& F_S) {
  const double xi = solve_xi(F_S);
  return std::min(1.0 - xi, F_S.truncated_mean(F_S.support_lo(), xi));
}

WorldviewEquilibrium solve_thresholds(const Distribution& F_S,
                                      const Distribution& F_R,
                                      const ModelParams& params, double tol) {
  if (!(tol > 0.0)) {
    throw SolverError(ErrorKind::PreconditionViolation, "tol must be positive");
  }
  WorldviewEquilibrium eq;
  const XiResult xr = solve_xi_detail(F_S);
  eq.xi = xr.xi;
  eq.xi_multiple = xr.multiple_roots;
  eq.c_bar_S = std::min(1.0 - eq.xi, F_S.truncated_mean(F_S.support_lo(), eq.xi));

  const double lo = F_S.support_lo();
  const double hi = F_S.support_hi();
  const double inset = 1e-12 * (hi - lo);
  const double l_edge = lo + inset;  // smallest p_Sl with a nonempty share pool
  const double h_edge = hi - inset;
  const double xi = eq.xi;

  // Inner problem: p_Sl solving C_l = 0 given p_Sh, with nobody sharing
  // sigma = 0 encoded as p_Sl = lo.
  struct Inner {
    double p_Sl;
    bool pinned;
  };
  auto inner = [&](double p_Sh) -> Inner {
    auto g = [&](double x) { return c_low(F_S, F_R, params, x, p_Sh); };
    if (g(l_edge) <= 0.0) return {lo, true};
    if (const double gx = g(xi); gx > 0.0) {
      throw SolverError(ErrorKind::BracketFailure,
                        "C_l > 0 at p_Sl = xi (" + std::to_string(gx) +
                            ") for p_Sh = " + std::to_string(p_Sh));
    }
    return {bisect(g, l_edge, xi, true, tol).x, false};
  };

  auto h = [&](double p_Sh) {
    const Inner in = inner(p_Sh);
    return c_high(F_S, F_R, params, in.p_Sl, p_Sh);
  };

  bool pinned_high = false;
  double p_Sh = hi;
  if (const double hx = h(xi); hx > 0.0) {
    throw SolverError(ErrorKind::BracketFailure,
                      "C_h > 0 at p_Sh = xi (" + std::to_string(hx) + ")");
  }
  if (h(h_edge) <= 0.0) {
    pinned_high = true;
  } else {
    p_Sh = bisect(h, xi, h_edge, false, tol).x;
  }
  const Inner in = inner(p_Sh);
  const bool pinned_low = in.pinned;

  eq.p_Sl_star = pinned_low ? 0.0 : in.p_Sl;
  eq.p_Sh_star = pinned_high ? 1.0 : p_Sh;
  if (pinned_low && pinned_high) {
    eq.status = WorldviewStatus::NoSharing;
  } else if (pinned_low) {
    eq.status = WorldviewStatus::CornerNoShare0;
  } else if (pinned_high) {
    eq.status = WorldviewStatus::CornerNoShare1;
  } else {
    eq.status = WorldviewStatus::Interior;
  }

  // Residuals at the reported point; a pinned side reports its edge value.
  const double eval_l = pinned_low ? l_edge : in.p_Sl;
  const double eval_h = pinned_high ? h_edge : p_Sh;
  eq.residual_l = std::abs(c_low(F_S, F_R, params, eval_l, pinned_high ? hi : p_Sh));
  eq.residual_h = std::abs(c_high(F_S, F_R, params, pinned_low ? lo : in.p_Sl, eval_h));

  const double pool_l = pinned_low ? lo : in.p_Sl;
  const double pool_h = pinned_high ? hi : p_Sh;
  const Pools pools = make_pools(F_S, pool_l, pool_h);
  const double ph_mean = p_hat_R(params, F_R.mean());
  eq.posteriors.pS_given_0 = pinned_low ? kNaN : mean_low(F_S, pools, pool_l, pool_h);
  eq.posteriors.pS_given_1 = pinned_high ? kNaN : mean_high(F_S, pools, pool_l, pool_h);
  eq.posteriors.pS_given_empty = empty_posterior(pools, ph_mean, pool_l, pool_h);

  eq.ordering_ok = true;
  if (!pinned_low) {
    eq.ordering_ok = eq.ordering_ok && eq.posteriors.pS_given_0 < in.p_Sl &&
                     in.p_Sl < eq.posteriors.pS_given_empty;
  }
  if (!pinned_high) {
    eq.ordering_ok = eq.ordering_ok && eq.posteriors.pS_given_1 > p_Sh;
  }

  eq.gamma = eq.status == WorldviewStatus::NoSharing
                 ? kNaN
                 : gamma_worldview(F_S, params, eq.p_Sl_star, eq.p_Sh_star);
  return eq;
}

Indifference indifference_sign_resolved(const Distribution& F_S,
                                        const Distribution& F_R,
                                        const ModelParams& params,
                                        double p_Sl, double p_Sh) {
  return {c_low_resolved(F_S, F_R, params, p_Sl, p_Sh),
          c_high_resolved(F_S, F_R, params, p_Sl, p_Sh)};
}

Assumption1Audit check_assumption1(const Distribution& F_S,
                                   const Distribution& F_R,
                                   const ModelParams& params, int grid_n,
                                   AuditForm form) {
  if (grid_n < 11) {
    throw SolverError(ErrorKind::PreconditionViolation, "grid_n must be >= 11");
  }
  const double xi = solve_xi(F_S);
  const double step = kAuditStep;
  const double l_min = std::max(0.0, F_S.support_lo()) + 2.0 * step;
  const double l_max = xi - step;
  const double h_min = xi + step;
  const double h_max = std::min(1.0, F_S.support_hi()) - 2.0 * step;

  Assumption1Audit audit;
  audit.grid_resolution = grid_n;
  audit.max_dCl_dpSl = -std::numeric_limits<double>::infinity();
  audit.min_dCh_dpSh = std::numeric_limits<double>::infinity();
  audit.max_det = -std::numeric_limits<double>::infinity();

  auto eval = [&](double a, double b) {
    return form == AuditForm::Literal
               ? indifference(F_S, F_R, params, a, b)
               : indifference_sign_resolved(F_S, F_R, params, a, b);
  };
  for (int i = 0; i < grid_n; ++i) {
    const double pl = l_min + (l_max - l_min) * i / (grid_n - 1);
    for (int j = 0; j < grid_n; ++j) {
      const double ph = h_min + (h_max - h_min) * j / (grid_n - 1);
      const Indifference lp = eval(pl + step, ph);
      const Indifference lm = eval(pl - step, ph);
      const Indifference hp = eval(pl, ph + step);
      const Indifference hm = eval(pl, ph - step);
      const double dl_l = (lp.C_l - lm.C_l) / (2.0 * step);
      const double dh_l = (lp.C_h - lm.C_h) / (2.0 * step);
      const double dl_h = (hp.C_l - hm.C_l) / (2.0 * step);
      const double dh_h = (hp.C_h - hm.C_h) / (2.0 * step);
      const double det = dl_l * dh_h - dl_h * dh_l;
      audit.max_dCl_dpSl = std::max(audit.max_dCl_dpSl, dl_l);
      audit.min_dCh_dpSh = std::min(audit.min_dCh_dpSh, dh_h);
      audit.max_det = std::max(audit.max_det, det);
      if (!(dl_l < 0.0 && dh_h > 0.0 && det < 0.0)) {
        audit.violations.push_back({pl, ph, dl_l, dh_h, det});
      }
    }
  }
  return audit;
}

double gamma_worldview(const Distribution& F_S, const ModelParams& params,
                       double p_Sl, double p_Sh) {
  const double share0 = F_S.mass(F_S.support_lo(), p_Sl);
  const double share1 = F_S.mass(p_Sh, F_S.support_hi());
  const double s1 = prob_sigma_one(params);
  const double fake = params.q * (1.0 - params.beta) * share0 +
                      params.q * params.beta * share1;
  const double total = (1.0 - s1) * share0 + s1 * share1;
  if (!(total > 0.0)) {
    throw SolverError(ErrorKind::NoSharing, "no signal is ever shared");
  }
  return fake / total;
}

int predict_quality_sign(const Distribution& F_S, const ModelParams& params,
                         double p_Sl, double p_Sh) {
  const double share0 = F_S.mass(F_S.support_lo(), p_Sl);
  const double share1 = F_S.mass(p_Sh, F_S.support_hi());
  const double v = (beta_hat(params) - params.beta) * (share0 - share1);
  return (v > 0.0) - (v < 0.0);
}

}  // namespace sharesig
