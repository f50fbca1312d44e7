#include "sharesig/model.hpp"

#include "sharesig/error.hpp"

namespace sharesig {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateSignal: return "DegenerateSignal";
    case ErrorKind::ToleranceNotReached: return "ToleranceNotReached";
    case ErrorKind::NoSharing: return "NoSharing";
    case ErrorKind::EmptyTruncation: return "EmptyTruncation";
    case ErrorKind::EmptyPool: return "EmptyPool";
    case ErrorKind::NoRoot: return "NoRoot";
    case ErrorKind::BracketFailure: return "BracketFailure";
    case ErrorKind::InvalidDistribution: return "InvalidDistribution";
    case ErrorKind::PreconditionViolation: return "PreconditionViolation";
  }
  return "Unknown";
}

std::string_view to_string(Regime regime) {
  return regime == Regime::Ability ? "ability" : "worldview";
}

namespace {

void check_open(ValidationReport& out, std::string_view name, double v,
                double lo, double hi, std::string_view range) {
  if (!(v > lo && v < hi)) {
    out.push_back({std::string(name),
                   std::string(name) + " ∉ " + std::string(range)});
  }
}

void check_closed(ValidationReport& out, std::string_view name, double v,
                  double lo, double hi, std::string_view range) {
  if (!(v >= lo && v <= hi)) {
    out.push_back({std::string(name),
                   std::string(name) + " ∉ " + std::string(range)});
  }
}

}  // namespace

ValidationReport validate(const ModelParams& p, Regime regime,
                          bool allow_regime_override) {
  ValidationReport out;
  check_open(out, "q", p.q, 0.0, 1.0, "(0, 1)");
  check_closed(out, "beta", p.beta, 0.0, 1.0, "[0, 1]");
  check_closed(out, "eta", p.eta, 0.5, 1.0, "[1/2, 1]");
  check_open(out, "p_T", p.p_T, 0.0, 1.0, "(0, 1)");
  check_open(out, "lambda_S", p.lambda_S, 0.0, 0.5, "(0, 1/2)");
  check_open(out, "lambda_R", p.lambda_R, 0.0, 0.5, "(0, 1/2)");
  if (!(p.c_S >= 0.0)) out.push_back({"c_S", "c_S < 0"});
  check_closed(out, "p_S", p.p_S, 0.0, 1.0, "[0, 1]");
  check_closed(out, "p_R", p.p_R, 0.0, 1.0, "[0, 1]");

  if (regime == Regime::Ability) {
    if (!(p.p_R > 0.5)) out.push_back({"p_R", "p_R <= 1/2 in ability regime"});
    if (p.eta < p.p_R) out.push_back({"eta", "eta < p_R in ability regime"});
  } else if (!allow_regime_override && !(p.eta < p.p_R)) {
    out.push_back({"eta", "eta >= p_R in worldview regime (no override set)"});
  }
  return out;
}

SignalStats signal_stats(const ModelParams& p, double prior) {
  const double proper_zero = prior * (1.0 - p.eta) + (1.0 - prior) * p.eta;
  const double z0P = (1.0 - p.q) * proper_zero;
  const double z0F = p.q * (1.0 - p.beta);
  return {z0P + z0F, z0P, z0F};
}

double sender_fake_belief(const ModelParams& p) {
  const SignalStats s = signal_stats(p, p.p_S);
  if (!(s.z0 > 0.0)) {
    throw SolverError(ErrorKind::DegenerateSignal,
                      "sender assigns zero probability to a surprising signal");
  }
  return s.z0F / s.z0;
}

double prob_sigma_one(const ModelParams& p) {
  return p.q * p.beta + (1.0 - p.q) * beta_hat(p);
}

double beta_hat(const ModelParams& p) {
  return p.p_T * p.eta + (1.0 - p.p_T) * (1.0 - p.eta);
}

double beta_tilde(const ModelParams& p) {
  const double proper_zero = p.p_T * (1.0 - p.eta) + (1.0 - p.p_T) * p.eta;
  return 1.0 - proper_zero / (1.0 - p.lambda_S);
}

}  // namespace sharesig
