#pragma once

#include <string_view>

#include "sharesig/model.hpp"

namespace sharesig {

/// Receiver posteriors that the sender has high ability. kappa0 is the
/// probability a low-ability sender shares a surprising signal.
struct ReceiverBeliefs {
  double pi_0P;     // shared, checked and proper
  double pi_0U;     // shared, unchecked
  double pi_0F;     // shared, checked and fake (always 0)
  double pi_empty;  // nothing shared
};

struct SharingUtilities {
  double u_0P;
  double u_0F;
  double u_0U;
  double u_empty;
};

enum class AbilityStatus { Interior, CornerNoLowSharing, NotExist };

std::string_view to_string(AbilityStatus status);

struct AbilityEquilibrium {
  double kappa0_star = 0.0;
  ReceiverBeliefs beliefs{};
  double gamma = 0.0;
  AbilityStatus status = AbilityStatus::NotExist;
  double residual = 0.0;  // |delta(kappa0_star)|
  double delta_at_zero = 0.0;
  int iterations = 0;
};

struct ExistenceBounds {
  double c_bar_S;      // cost bound in the q -> 0 limit
  double q_bar_of_cS;  // largest q sustaining low-type sharing at params.c_S
};

inline constexpr double kKappaTolerance = 1e-12;
inline constexpr double kKappaResidual = 1e-10;

/// All signal statistics are evaluated at the receiver prior p_R.
ReceiverBeliefs receiver_beliefs(const ModelParams& params, double kappa0);

SharingUtilities sharing_utilities(const ModelParams& params, double kappa0);

/// u_0U - u_empty: the low-ability sender's gain from sharing a surprising
/// signal. Strictly decreasing in kappa0.
double delta(const ModelParams& params, double kappa0);

/// Low type's mixing probability. Interior when delta(0) > 0 (unique root
/// by bisection), CornerNoLowSharing otherwise.
AbilityEquilibrium solve_kappa(const ModelParams& params,
                               double tol = kKappaTolerance);

ExistenceBounds existence_bounds(const ModelParams& params);

/// Largest q with delta|kappa0=0 >= 0 at sharing cost c_S; 1 when the
/// whole range qualifies, 0 when none does.
double q_bar(const ModelParams& params, double c_S);

/// Largest c_S with q_bar(c_S) = 1: the gain from sharing at kappa0 = 0 in the
/// all-fake limit. Below it q_bar is flat at 1.
double q_bar_saturation_cost(const ModelParams& params);

/// True iff the off-equilibrium belief pi_tilde_1 deters sharing a
/// non-surprising signal: pi_tilde_1 <= c_S + u_empty.
bool offeq_check(const ModelParams& params, const AbilityEquilibrium& eq,
                 double pi_tilde_1 = 0.0);

/// Fraction of shared signals that are fake. Defined as 0 at kappa0 = 0.
double gamma_ability(const ModelParams& params, double kappa0);

}  // namespace sharesig
