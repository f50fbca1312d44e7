#include <doctest.h>

#include <cmath>

#include "sharesig/error.hpp"
#include "sharesig/worldview.hpp"

using namespace sharesig;

namespace {

// p_hat_R = 1/2 exactly.
ModelParams symmetric(double c_S = 0.0) {
  ModelParams p;
  p.q = 0.5;
  p.beta = 0.5;
  p.eta = 0.9;
  p.p_T = 0.5;
  p.p_R = 0.5;
  p.c_S = c_S;
  return p;
}

const Distribution kUniform = Distribution::uniform(0.0, 1.0);

}  // namespace

TEST_CASE("receiver signal belief") {
  CHECK(p_hat_R(symmetric(), 0.5) == doctest::Approx(0.5).epsilon(1e-15));
  ModelParams p = symmetric();
  p.q = 0.0;
  CHECK(p_hat_R(p, 1.0) == doctest::Approx(0.9));
}

TEST_CASE("uniform closed form") {
  for (double c : {0.0, 0.05, 0.1, 0.2, 0.3, 0.49}) {
    CAPTURE(c);
    const WorldviewEquilibrium eq =
        solve_thresholds(kUniform, Distribution::point_mass(0.5), symmetric(c));
    REQUIRE(eq.status == WorldviewStatus::Interior);
    CHECK(std::abs(eq.p_Sl_star - (1 - 2 * c) / 3) <= 1e-9);
    CHECK(std::abs(eq.p_Sh_star - (2 + 2 * c) / 3) <= 1e-9);
    CHECK(eq.ordering_ok);
    CHECK(eq.residual_l <= kThresholdResidual);
    CHECK(eq.residual_h <= kThresholdResidual);
  }
}

TEST_CASE("cost beyond one half shuts sharing down") {
  const WorldviewEquilibrium eq =
      solve_thresholds(kUniform, Distribution::point_mass(0.5), symmetric(0.6));
  CHECK(eq.status == WorldviewStatus::NoSharing);
  CHECK(std::isnan(eq.gamma));
}

TEST_CASE("pivot type") {
  CHECK(solve_xi(kUniform) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(c_bar_worldview(kUniform) == doctest::Approx(0.25).epsilon(1e-12));
  const Distribution half = Distribution::uniform(0.0, 0.5);
  CHECK(solve_xi(half) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(c_bar_worldview(half) == doctest::Approx(0.125).epsilon(1e-12));
  // frozen from the scan-and-bisect oracle
  CHECK(solve_xi(Distribution::beta(2.0, 5.0)) ==
        doctest::Approx(0.31710343742).epsilon(1e-9));
  CHECK_FALSE(solve_xi_detail(kUniform).multiple_roots);
}

TEST_CASE("posteriors at the uniform solution") {
  const WorldviewPosteriors post = posteriors(kUniform, 1.0 / 3, 2.0 / 3, 0.5);
  CHECK(post.pS_given_0 == doctest::Approx(1.0 / 6));
  CHECK(post.pS_given_1 == doctest::Approx(5.0 / 6));
  CHECK(post.pS_given_empty == doctest::Approx(0.5));
}

TEST_CASE("indifference vanishes at the solution") {
  const ModelParams p = symmetric(0.1);
  const Distribution R = Distribution::point_mass(0.5);
  const WorldviewEquilibrium eq = solve_thresholds(kUniform, R, p);
  const Indifference lit = indifference(kUniform, R, p, eq.p_Sl_star, eq.p_Sh_star);
  const Indifference res =
      indifference_sign_resolved(kUniform, R, p, eq.p_Sl_star, eq.p_Sh_star);
  CHECK(std::abs(lit.C_l) <= 1e-9);
  CHECK(std::abs(lit.C_h) <= 1e-9);
  CHECK(std::abs(res.C_l) <= 1e-9);
  CHECK(std::abs(res.C_h) <= 1e-9);
}

TEST_CASE("jacobian audit on uniform and on a spiked prior") {
  const ModelParams p = symmetric();
  const Distribution R = Distribution::point_mass(0.5);
  const Assumption1Audit a = check_assumption1(kUniform, R, p, 21);
  CHECK(a.pass());
  CHECK(a.max_dCl_dpSl < 0.0);
  CHECK(a.min_dCh_dpSh > 0.0);
  CHECK(a.max_det < 0.0);
  const Distribution spikes = Distribution::piecewise_linear(
      {0.0, 0.19, 0.2, 0.21, 0.79, 0.8, 0.81, 1.0},
      {0.01, 0.01, 100.0, 0.01, 0.01, 100.0, 0.01, 0.01});
  CHECK_FALSE(check_assumption1(spikes, R, p, 21).pass());
  CHECK_THROWS_AS(check_assumption1(kUniform, R, p, 5), SolverError);
}

TEST_CASE("audit passes off the symmetric point in the sign-resolved form") {
  ModelParams p = symmetric();
  p.eta = 0.55;
  p.q = 0.3;
  p.p_R = 0.8;
  const Distribution R = Distribution::point_mass(0.8);
  CHECK(check_assumption1(kUniform, R, p, 21).pass());
  CHECK(check_assumption1(Distribution::beta(2.0, 5.0), R, p, 21).pass());
}

TEST_CASE("quality is unchanged at the neutral bias") {
  ModelParams p = symmetric(0.05);
  p.q = 0.3;
  p.eta = 0.6;
  p.p_T = 0.7;
  p.p_R = 0.8;
  p.beta = beta_hat(p);
  const WorldviewEquilibrium eq = solve_thresholds(kUniform, Distribution::point_mass(0.8), p);
  CHECK(std::abs(eq.gamma - p.q) <= 1e-12);
}

TEST_CASE("quality sign matches its prediction") {
  ModelParams p = symmetric(0.05);
  p.q = 0.3;
  p.eta = 0.6;
  p.p_T = 0.5;
  p.p_R = 0.9;
  for (double beta : {0.1, 0.9}) {
    p.beta = beta;
    const WorldviewEquilibrium eq =
        solve_thresholds(kUniform, Distribution::point_mass(0.9), p);
    const int sign = eq.gamma > p.q ? 1 : -1;
    CHECK(sign == predict_quality_sign(kUniform, p, eq.p_Sl_star, eq.p_Sh_star));
  }
}

TEST_CASE("thresholds fall as the receiver prior rises") {
  ModelParams p = symmetric(0.05);
  p.q = 0.3;
  p.eta = 0.55;
  const WorldviewEquilibrium a = solve_thresholds(kUniform, Distribution::point_mass(0.7), p);
  const WorldviewEquilibrium b = solve_thresholds(kUniform, Distribution::point_mass(0.9), p);
  CHECK(b.p_Sl_star < a.p_Sl_star);
  CHECK(b.p_Sh_star < a.p_Sh_star);
}

TEST_CASE("status names") {
  CHECK(to_string(WorldviewStatus::Interior) == "Interior");
  CHECK(to_string(WorldviewStatus::NoSharing) == "NoSharing");
}
