#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sharesig {

/// Exogenous scalars shared by both sharing games.
///
/// Ability types and fact-checking costs are not parameters: a high-ability
/// player checks exactly when veracity is payoff-relevant, a low-ability
/// player never checks.
struct ModelParams {
  double q = 0.5;         // probability a signal is fake
  double beta = 0.5;      // probability a fake signal reads sigma = 1
  double eta = 2.0 / 3;   // precision of proper signals
  double p_T = 2.0 / 3;   // true probability of omega = 1
  double lambda_S = 0.2;  // probability the sender has high ability
  double lambda_R = 0.2;  // probability a receiver has high ability
  double c_S = 0.0;       // sharing cost
  double p_S = 2.0 / 3;   // sender prior on omega = 1 (ability game)
  double p_R = 2.0 / 3;   // receiver prior on omega = 1

  bool operator==(const ModelParams&) const = default;
};

enum class Regime { Ability, Worldview };

std::string_view to_string(Regime regime);

struct Violation {
  std::string field;
  std::string message;
};

using ValidationReport = std::vector<Violation>;

/// Range checks for `regime`. The worldview regime expects eta < p_R;
/// `allow_regime_override` waives that single check.
ValidationReport validate(const ModelParams& params, Regime regime,
                          bool allow_regime_override = false);

/// Probabilities of a surprising (sigma = 0) signal as assessed by a player
/// with prior `prior`.
struct SignalStats {
  double z0;   // any surprising signal
  double z0P;  // proper and surprising
  double z0F;  // fake and surprising
};

SignalStats signal_stats(const ModelParams& params, double prior);

/// Low-ability sender's belief that a surprising signal is fake. Throws
/// SolverError(DegenerateSignal) when no surprising signal can occur.
double sender_fake_belief(const ModelParams& params);

/// True probability of sigma = 1 under the data-generating process.
double prob_sigma_one(const ModelParams& params);

/// Proper-signal rate of sigma = 1: p_T eta + (1 - p_T)(1 - eta).
double beta_hat(const ModelParams& params);

/// Bias above which the ability equilibrium has gamma < q regardless of the
/// low type's mixing. Returned unclamped; a negative value means the bound
/// holds for every beta.
double beta_tilde(const ModelParams& params);

}  // namespace sharesig
