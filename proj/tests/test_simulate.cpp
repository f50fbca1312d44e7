#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "sharesig/rng.hpp"
#include "sharesig/simulate.hpp"

using namespace sharesig;
using namespace sharesig::kernels;

namespace {

ModelParams ability_params() { return ModelParams{}; }

ModelParams worldview_params() {
  ModelParams p;
  p.q = 0.3;
  p.beta = 0.2;
  p.eta = 0.6;
  p.p_T = 0.8;
  p.p_R = 0.8;
  p.c_S = 0.05;
  return p;
}

AbilityKernelParams ability_kernel(std::uint64_t seed) {
  return {CounterStream(seed, kAbilityVariates).key(), 2.0 / 3, 0.5, 2.0 / 3, 0.5, 0.2,
          0.2, 0.45};
}

WorldviewKernelParams worldview_kernel(std::uint64_t seed) {
  WorldviewKernelParams p{};
  p.key = CounterStream(seed, kWorldviewVariates).key();
  p.p_T = 0.8;
  p.q = 0.3;
  p.eta = 0.6;
  p.beta = 0.2;
  p.p_Sl = 0.31;
  p.p_Sh = 0.71;
  return p;
}

bool near(const Estimate& e, double analytic, double k) {
  return std::abs(e.value - analytic) <= k * e.se;
}

}  // namespace

TEST_CASE("splitmix64 reference value") {
  // first output of SplitMix64 seeded with 0
  CHECK(mix64(kGolden) == 0xE220A8397B1DCDAFULL);
  const CounterStream s(3, 4);
  CHECK(s.bits(10, 2) == mix64(mix64(3) + (10 * 4 + 2 + 1) * kGolden));
  CHECK(to_unit(0) == 0.0);
  CHECK(to_unit(~0ULL) < 1.0);
}

TEST_CASE("ability kernels give identical tallies") {
  const AbilityKernelParams kp = ability_kernel(7);
  for (auto [first, count] : {std::pair<std::uint64_t, std::uint64_t>{0, 4096}, {3, 1001},
                              {1 << 20, 7}, {5, 2}}) {
    AbilityTally a, b;
    ability_block_scalar(kp, first, count, a);
    ability_block(Isa::Auto, kp, first, count, b);
    CHECK(a == b);
    CHECK(a.n == count);
  }
}

TEST_CASE("worldview kernels give identical tallies") {
  const WorldviewKernelParams kp = worldview_kernel(9);
  for (auto [first, count] : {std::pair<std::uint64_t, std::uint64_t>{0, 4096}, {1, 999},
                              {77, 3}}) {
    WorldviewTally a, b;
    worldview_block_scalar(kp, first, count, a);
    worldview_block(Isa::Auto, kp, first, count, b);
    CHECK(a == b);
  }
}

TEST_CASE("block tallies merge to the serial tally") {
  const AbilityKernelParams kp = ability_kernel(1);
  AbilityTally whole, left, right;
  ability_block_scalar(kp, 0, 10000, whole);
  ability_block_scalar(kp, 0, 3333, left);
  ability_block_scalar(kp, 3333, 10000 - 3333, right);
  left.merge(right);
  CHECK(left == whole);
}

TEST_CASE("per-draw rules") {
  const AbilityKernelParams kp = ability_kernel(2);
  for (std::uint64_t i = 0; i < 2000; ++i) {
    const AbilityDraw d = ability_draw(kp, i);
    if (d.sigma) CHECK_FALSE(d.shared);
    if (d.shared && d.high) CHECK_FALSE(d.fake);
    if (d.checked) CHECK(d.shared);
  }
  const WorldviewKernelParams wp = worldview_kernel(2);
  for (std::uint64_t i = 0; i < 2000; ++i) {
    const WorldviewDraw d = worldview_draw(wp, i);
    if (d.cell == kShare0) CHECK((!d.sigma && d.p_S < wp.p_Sl));
    if (d.cell == kShare1) CHECK((d.sigma && d.p_S > wp.p_Sh));
  }
}

TEST_CASE("ability simulation matches the analytic values") {
  const ModelParams p = ability_params();
  const AbilityEquilibrium eq = solve_kappa(p);
  SimConfig cfg;
  cfg.n_draws = 200000;
  cfg.seed = 3;
  const SimReport r = simulate_ability(p, eq, cfg);
  CHECK(r.receiver_model_matches);
  CHECK(near(r.gamma, eq.gamma, 4));
  CHECK(near(r.pi_0U, eq.beliefs.pi_0U, 4));
  CHECK(near(r.pi_empty, eq.beliefs.pi_empty, 4));
  CHECK(near(r.share_rate, analytic_share_rate_ability(p, eq.kappa0_star), 4));
  std::uint64_t total = 0;
  for (const SimCell& c : r.cells) total += c.count;
  CHECK(total == cfg.n_draws);
}

TEST_CASE("simulation is reproducible across kernels and thread counts") {
  const ModelParams p = worldview_params();
  const Distribution U = Distribution::uniform(0.0, 1.0);
  const WorldviewEquilibrium eq = solve_thresholds(U, Distribution::point_mass(0.8), p);
  SimConfig cfg;
  cfg.n_draws = 150001;
  cfg.seed = 5;
  cfg.regime = Regime::Worldview;
  cfg.isa = Isa::Scalar;
  cfg.threads = 1;
  const SimReport a = simulate_worldview(U, p, eq, cfg);
  cfg.isa = Isa::Auto;
  cfg.threads = 3;
  const SimReport b = simulate_worldview(U, p, eq, cfg);
  CHECK(a.gamma.value == b.gamma.value);
  CHECK(a.pS_given_0.value == b.pS_given_0.value);
  CHECK(a.pS_given_empty.se == b.pS_given_empty.se);
  CHECK(a.share_rate.value == b.share_rate.value);
  CHECK(near(a.pS_given_1, eq.posteriors.pS_given_1, 4));
}

TEST_CASE("general priors use the quantile path") {
  ModelParams p = worldview_params();
  const Distribution B = Distribution::beta(2.0, 2.0);
  const WorldviewEquilibrium eq = solve_thresholds(B, Distribution::point_mass(0.8), p);
  SimConfig cfg;
  cfg.n_draws = 100000;
  cfg.regime = Regime::Worldview;
  const SimReport r = simulate_worldview(B, p, eq, cfg);
  const WorldviewPosteriors post =
      posteriors(B, eq.p_Sl_star, eq.p_Sh_star, p_hat_R(p, 0.8));
  CHECK(near(r.pS_given_0, post.pS_given_0, 4));
  CHECK(near(r.pS_given_empty, post.pS_given_empty, 4));
}

TEST_CASE("trace rows") {
  const ModelParams p = ability_params();
  const AbilityEquilibrium eq = solve_kappa(p);
  SimConfig cfg;
  cfg.n_draws = 5;
  std::ostringstream os;
  simulate_ability(p, eq, cfg, &os);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "draw,omega,veracity,sigma,theta_or_pS,shared,checked");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 5);
}

TEST_CASE("isa resolution") {
  CHECK(resolve(Isa::Scalar) == Isa::Scalar);
  CHECK(resolve(Isa::Auto) == (avx2_available() ? Isa::Avx2 : Isa::Scalar));
  CHECK(to_string(Isa::Avx2) == "avx2");
}
