#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sharesig/ability.hpp"
#include "sharesig/distribution.hpp"
#include "sharesig/kernels/draw.hpp"
#include "sharesig/model.hpp"
#include "sharesig/worldview.hpp"

namespace sharesig {

struct SimConfig {
  std::uint64_t n_draws = 1'000'000;
  std::uint64_t seed = 1;
  Regime regime = Regime::Ability;
  kernels::Isa isa = kernels::Isa::Auto;
  unsigned threads = 0;  // 0 = hardware concurrency
};

/// Sample statistic with its standard error; NaN when the sample is empty.
struct Estimate {
  double value;
  double se;
  std::uint64_t n;  // sample size behind the estimate
};

struct SimCell {
  std::string name;
  std::uint64_t count;
};

struct SimReport {
  Regime regime = Regime::Ability;
  std::uint64_t n_draws = 0;
  std::uint64_t seed = 0;
  std::string isa;
  bool receiver_model_matches = false;  // p_T == p_R

  Estimate share_rate{};
  Estimate gamma{};
  Estimate sigma1_rate{};

  // ability: share of high-ability senders per receiver cell
  Estimate high_among_shares{};
  Estimate pi_0P{};
  Estimate pi_0U{};
  Estimate pi_empty{};

  // worldview: mean sender prior per message cell
  Estimate pS_given_0{};
  Estimate pS_given_1{};
  Estimate pS_given_empty{};

  std::vector<SimCell> cells;  // counts sum to n_draws
};

inline constexpr std::uint64_t kSimBlock = 65536;

/// Plays the ability game under the solved strategies. `trace`, if set,
/// receives one CSV row per draw.
SimReport simulate_ability(const ModelParams& params,
                           const AbilityEquilibrium& eq, const SimConfig& cfg,
                           std::ostream* trace = nullptr);

SimReport simulate_worldview(const Distribution& F_S, const ModelParams& params,
                             const WorldviewEquilibrium& eq,
                             const SimConfig& cfg,
                             std::ostream* trace = nullptr);

/// Analytic share rate under the data-generating process.
double analytic_share_rate_ability(const ModelParams& params, double kappa0);
double analytic_share_rate_worldview(const Distribution& F_S,
                                     const ModelParams& params, double p_Sl,
                                     double p_Sh);

}  // namespace sharesig
