#include "sharesig/simulate.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "sharesig/error.hpp"
#include "sharesig/format.hpp"
#include "sharesig/parallel.hpp"
#include "sharesig/rng.hpp"

namespace sharesig {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Estimate proportion(std::uint64_t hits, std::uint64_t n) {
  if (n == 0) return {kNaN, kNaN, 0};
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(n)), n};
}

Estimate sample_mean(double sum, double sumsq, std::uint64_t n) {
  if (n == 0) return {kNaN, kNaN, 0};
  const double dn = static_cast<double>(n);
  const double mean = sum / dn;
  if (n == 1) return {mean, kNaN, 1};
  const double var = std::max(0.0, (sumsq - dn * mean * mean) / (dn - 1.0));
  return {mean, std::sqrt(var / dn), n};
}

std::uint64_t block_count(std::uint64_t n) { return (n + kSimBlock - 1) / kSimBlock; }

template <typename Tally, typename Run>
Tally run_blocks(std::uint64_t n, unsigned threads, Run&& run) {
  const std::uint64_t blocks = block_count(n);
  std::vector<Tally> parts(blocks);
  parallel_for(
      blocks,
      [&](std::size_t b) {
        const std::uint64_t first = b * kSimBlock;
        const std::uint64_t count = std::min<std::uint64_t>(kSimBlock, n - first);
        run(first, count, parts[b]);
      },
      threads);
  Tally total;
  for (const Tally& t : parts) total.merge(t);  // fixed order
  return total;
}

void check_draws(const SimConfig& cfg) {
  if (cfg.n_draws < 1) {
    throw SolverError(ErrorKind::PreconditionViolation, "n_draws must be >= 1");
  }
}

}  // namespace

double analytic_share_rate_ability(const ModelParams& p, double kappa0) {
  const SignalStats t = signal_stats(p, p.p_T);
  return p.lambda_S * t.z0P + (1.0 - p.lambda_S) * t.z0 * kappa0;
}

double analytic_share_rate_worldview(const Distribution& F_S,
                                     const ModelParams& p, double p_Sl,
                                     double p_Sh) {
  const double s1 = prob_sigma_one(p);
  return (1.0 - s1) * F_S.mass(F_S.support_lo(), p_Sl) +
         s1 * F_S.mass(p_Sh, F_S.support_hi());
}

SimReport simulate_ability(const ModelParams& params,
                           const AbilityEquilibrium& eq, const SimConfig& cfg,
                           std::ostream* trace) {
  check_draws(cfg);
  if (eq.status == AbilityStatus::NotExist) {
    throw SolverError(ErrorKind::PreconditionViolation,
                      "cannot simulate a non-existent equilibrium");
  }
  const kernels::AbilityKernelParams kp{
      CounterStream(cfg.seed, kernels::kAbilityVariates).key(),
      params.p_T, params.q, params.eta, params.beta, params.lambda_S,
      params.lambda_R, eq.kappa0_star};
  const kernels::Isa isa = kernels::resolve(cfg.isa);
  const kernels::AbilityTally t = run_blocks<kernels::AbilityTally>(
      cfg.n_draws, cfg.threads,
      [&](std::uint64_t first, std::uint64_t count, kernels::AbilityTally& out) {
        kernels::ability_block(isa, kp, first, count, out);
      });

  if (trace != nullptr) {
    *trace << "draw,omega,veracity,sigma,theta_or_pS,shared,checked\n";
    for (std::uint64_t i = 0; i < cfg.n_draws; ++i) {
      const kernels::AbilityDraw d = kernels::ability_draw(kp, i);
      *trace << i << ',' << d.omega << ',' << (d.fake ? "fake" : "proper") << ','
             << d.sigma << ',' << (d.high ? 'H' : 'L') << ',' << d.shared << ','
             << d.checked << '\n';
    }
  }

  using namespace kernels;
  SimReport r;
  r.regime = Regime::Ability;
  r.n_draws = t.n;
  r.seed = cfg.seed;
  r.isa = std::string(to_string(isa));
  r.receiver_model_matches = params.p_T == params.p_R;
  const std::uint64_t shares = t.count[kCell0P] + t.count[kCell0F] + t.count[kCell0U];
  r.share_rate = proportion(shares, t.n);
  r.gamma = proportion(t.shared_fake, shares);
  r.sigma1_rate = proportion(t.sigma1, t.n);
  r.high_among_shares =
      proportion(t.high[kCell0P] + t.high[kCell0F] + t.high[kCell0U], shares);
  r.pi_0P = proportion(t.high[kCell0P], t.count[kCell0P]);
  r.pi_0U = proportion(t.high[kCell0U], t.count[kCell0U]);
  r.pi_empty = proportion(t.high[kCellEmpty], t.count[kCellEmpty]);
  r.pS_given_0 = r.pS_given_1 = r.pS_given_empty = {kNaN, kNaN, 0};
  r.cells = {{"0P", t.count[kCell0P]},
             {"0F", t.count[kCell0F]},
             {"0U", t.count[kCell0U]},
             {"empty", t.count[kCellEmpty]}};
  return r;
}

SimReport simulate_worldview(const Distribution& F_S, const ModelParams& params,
                             const WorldviewEquilibrium& eq,
                             const SimConfig& cfg, std::ostream* trace) {
  check_draws(cfg);
  constexpr double inf = std::numeric_limits<double>::infinity();
  kernels::WorldviewKernelParams kp{};
  kp.key = CounterStream(cfg.seed, kernels::kWorldviewVariates).key();
  kp.p_T = params.p_T;
  kp.q = params.q;
  kp.eta = params.eta;
  kp.beta = params.beta;
  // A pinned side means nobody sends that message.
  const bool none0 = eq.status == WorldviewStatus::CornerNoShare0 ||
                     eq.status == WorldviewStatus::NoSharing;
  const bool none1 = eq.status == WorldviewStatus::CornerNoShare1 ||
                     eq.status == WorldviewStatus::NoSharing;
  kp.p_Sl = none0 ? -inf : eq.p_Sl_star;
  kp.p_Sh = none1 ? inf : eq.p_Sh_star;
  if (const auto* u = std::get_if<UniformPrior>(&F_S.kind())) {
    kp.ps_offset = u->a;
    kp.ps_scale = u->b - u->a;
  } else if (const auto* pm = std::get_if<PointMassPrior>(&F_S.kind())) {
    kp.ps_offset = pm->x;
    kp.ps_scale = 0.0;
  } else {
    kp.general = &F_S;
  }
  const kernels::Isa isa = kernels::resolve(cfg.isa);
  const kernels::WorldviewTally t = run_blocks<kernels::WorldviewTally>(
      cfg.n_draws, cfg.threads,
      [&](std::uint64_t first, std::uint64_t count, kernels::WorldviewTally& out) {
        kernels::worldview_block(isa, kp, first, count, out);
      });

  if (trace != nullptr) {
    *trace << "draw,omega,veracity,sigma,theta_or_pS,shared,checked\n";
    for (std::uint64_t i = 0; i < cfg.n_draws; ++i) {
      const kernels::WorldviewDraw d = kernels::worldview_draw(kp, i);
      *trace << i << ',' << d.omega << ',' << (d.fake ? "fake" : "proper") << ','
             << d.sigma << ',' << format_double(d.p_S) << ',' << d.shared
             << ",0\n";
    }
  }

  using namespace kernels;
  SimReport r;
  r.regime = Regime::Worldview;
  r.n_draws = t.n;
  r.seed = cfg.seed;
  r.isa = std::string(to_string(isa));
  r.receiver_model_matches = params.p_T == params.p_R;
  const std::uint64_t shares = t.count[kShare0] + t.count[kShare1];
  r.share_rate = proportion(shares, t.n);
  r.gamma = proportion(t.shared_fake, shares);
  r.sigma1_rate = proportion(t.sigma1, t.n);
  r.high_among_shares = r.pi_0P = r.pi_0U = r.pi_empty = {kNaN, kNaN, 0};
  r.pS_given_0 = sample_mean(t.total_sum(kShare0), t.total_sumsq(kShare0), t.count[kShare0]);
  r.pS_given_1 = sample_mean(t.total_sum(kShare1), t.total_sumsq(kShare1), t.count[kShare1]);
  r.pS_given_empty =
      sample_mean(t.total_sum(kNoShare), t.total_sumsq(kNoShare), t.count[kNoShare]);
  r.cells = {{"share0", t.count[kShare0]},
             {"share1", t.count[kShare1]},
             {"none", t.count[kNoShare]}};
  return r;
}

}  // namespace sharesig
