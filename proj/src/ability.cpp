#include "sharesig/ability.hpp"

#include <cmath>
#include <string>

#include "sharesig/bisection.hpp"
#include "sharesig/error.hpp"

namespace sharesig {

std::string_view to_string(AbilityStatus status) {
  switch (status) {
    case AbilityStatus::Interior: return "Interior";
    case AbilityStatus::CornerNoLowSharing: return "CornerNoLowSharing";
    case AbilityStatus::NotExist: return "NotExist";
  }
  return "Unknown";
}

ReceiverBeliefs receiver_beliefs(const ModelParams& p, double kappa0) {
  const SignalStats r = signal_stats(p, p.p_R);
  const double l = p.lambda_S;
  ReceiverBeliefs b{};
  b.pi_0P = l / (l + (1.0 - l) * kappa0);
  b.pi_0U = l * r.z0P / (l * r.z0P + (1.0 - l) * r.z0 * kappa0);
  b.pi_0F = 0.0;
  b.pi_empty = l * (1.0 - r.z0P) /
               (l * (1.0 - r.z0P) + (1.0 - l) * (1.0 - r.z0 * kappa0));
  return b;
}

SharingUtilities sharing_utilities(const ModelParams& p, double kappa0) {
  const ReceiverBeliefs b = receiver_beliefs(p, kappa0);
  const double fake = sender_fake_belief(p);
  const double lr = p.lambda_R;
  SharingUtilities u{};
  u.u_0P = lr * b.pi_0P + (1.0 - lr) * b.pi_0U - p.c_S;
  u.u_0F = (1.0 - lr) * b.pi_0U - p.c_S;
  u.u_0U = lr * (1.0 - fake) * b.pi_0P + (1.0 - lr) * b.pi_0U - p.c_S;
  u.u_empty = b.pi_empty;
  return u;
}

double delta(const ModelParams& p, double kappa0) {
  const SharingUtilities u = sharing_utilities(p, kappa0);
  return u.u_0U - u.u_empty;
}

AbilityEquilibrium solve_kappa(const ModelParams& p, double tol) {
  if (!(tol > 0.0)) {
    throw SolverError(ErrorKind::PreconditionViolation, "tol must be positive");
  }
  AbilityEquilibrium eq;
  eq.delta_at_zero = delta(p, 0.0);
  if (eq.delta_at_zero <= 0.0) {
    eq.status = AbilityStatus::CornerNoLowSharing;
    eq.kappa0_star = 0.0;
  } else if (const double d1 = delta(p, 1.0); d1 >= 0.0) {
    // Cannot happen for admissible parameters; kept as a diagnostic.
    eq.status = AbilityStatus::NotExist;
    eq.kappa0_star = 1.0;
  } else {
    const BisectResult r =
        bisect([&](double k) { return delta(p, k); }, 0.0, 1.0, true, tol);
    if (!r.converged) {
      throw SolverError(ErrorKind::ToleranceNotReached,
                        "kappa bisection did not reach tol " + std::to_string(tol));
    }
    eq.kappa0_star = r.x;
    eq.iterations = r.iterations;
    eq.status = AbilityStatus::Interior;
  }
  eq.beliefs = receiver_beliefs(p, eq.kappa0_star);
  eq.residual = std::abs(delta(p, eq.kappa0_star));
  eq.gamma = gamma_ability(p, eq.kappa0_star);
  return eq;
}

namespace {

// delta at kappa0 = 0 as a function of q, with the fake belief taken as 0
// when no surprising signal is possible (its limit along beta = 1).
double delta_no_low_sharing(ModelParams p, double q, double c_S) {
  p.q = q;
  p.c_S = c_S;
  const SignalStats s = signal_stats(p, p.p_S);
  const double fake = s.z0 > 0.0 ? s.z0F / s.z0 : 0.0;
  const SignalStats r = signal_stats(p, p.p_R);
  const double l = p.lambda_S;
  const double pi_empty = l * (1.0 - r.z0P) / (l * (1.0 - r.z0P) + (1.0 - l));
  return p.lambda_R * (1.0 - fake) + (1.0 - p.lambda_R) - c_S - pi_empty;
}

}  // namespace

double q_bar(const ModelParams& p, double c_S) {
  if (delta_no_low_sharing(p, 1.0, c_S) >= 0.0) return 1.0;
  if (delta_no_low_sharing(p, 0.0, c_S) <= 0.0) return 0.0;
  const BisectResult r = bisect(
      [&](double q) { return delta_no_low_sharing(p, q, c_S); }, 0.0, 1.0,
      true, 1e-15);
  return r.x;
}

double q_bar_saturation_cost(const ModelParams& p) {
  return delta_no_low_sharing(p, 1.0, 0.0);
}

ExistenceBounds existence_bounds(const ModelParams& p) {
  ModelParams no_fakes = p;
  no_fakes.q = 0.0;
  const double z0P = signal_stats(no_fakes, p.p_R).z0P;
  const double l = p.lambda_S;
  return {(1.0 - l) / (1.0 - l * z0P), q_bar(p, p.c_S)};
}

bool offeq_check(const ModelParams& p, const AbilityEquilibrium& eq,
                 double pi_tilde_1) {
  return pi_tilde_1 <= p.c_S + eq.beliefs.pi_empty;
}

double gamma_ability(const ModelParams& p, double kappa0) {
  if (kappa0 == 0.0) return 0.0;
  const double l = p.lambda_S;
  const double proper_zero = p.p_T * (1.0 - p.eta) + (1.0 - p.p_T) * p.eta;
  const double shared_proper =
      (1.0 - p.q) * proper_zero * ((1.0 - l) * kappa0 + l);
  const double shared_fake = p.q * (1.0 - p.beta) * (1.0 - l) * kappa0;
  const double total = shared_fake + shared_proper;
  if (!(total > 0.0)) {
    throw SolverError(ErrorKind::NoSharing, "no signal is ever shared");
  }
  return shared_fake / total;
}

}  // namespace sharesig
