#include <doctest.h>

#include <cmath>

#include "sharesig/ability.hpp"
#include "sharesig/error.hpp"

using namespace sharesig;

namespace {

ModelParams base(double lambda_S = 0.2) {
  ModelParams p;
  p.lambda_S = lambda_S;
  return p;
}

}  // namespace

TEST_CASE("mixing probability at the surface base point") {
  const AbilityEquilibrium eq = solve_kappa(base());
  REQUIRE(eq.status == AbilityStatus::Interior);
  CHECK(eq.kappa0_star > 0.0);
  CHECK(eq.kappa0_star < 1.0);
  CHECK(eq.residual <= kKappaResidual);
  // frozen from the bisection oracle
  CHECK(eq.kappa0_star == doctest::Approx(0.45322117312434784).epsilon(1e-10));
  CHECK(eq.gamma == doctest::Approx(0.42030823864050443).epsilon(1e-10));
  CHECK(eq.beliefs.pi_0F == 0.0);
  CHECK(offeq_check(base(), eq));
}

TEST_CASE("residual agrees with a fine scan") {
  const ModelParams p = base(0.1);
  double best = 0.0;
  double best_abs = 1e300;
  for (int i = 0; i <= 100000; ++i) {
    const double k = i / 100000.0;
    if (std::abs(delta(p, k)) < best_abs) {
      best_abs = std::abs(delta(p, k));
      best = k;
    }
  }
  CHECK(solve_kappa(p).kappa0_star == doctest::Approx(best).epsilon(2e-5));
}

TEST_CASE("delta decreases in kappa0") {
  const ModelParams p = base();
  double prev = delta(p, 0.0);
  for (int i = 1; i <= 50; ++i) {
    const double d = delta(p, i / 50.0);
    CHECK(d < prev);
    prev = d;
  }
}

TEST_CASE("utility ranking") {
  const SharingUtilities u = sharing_utilities(base(), 0.3);
  CHECK(u.u_0P > u.u_0U);
  CHECK(u.u_0U > u.u_0F);
}

TEST_CASE("beliefs at kappa0 = 0") {
  const ReceiverBeliefs b = receiver_beliefs(base(), 0.0);
  CHECK(b.pi_0P == doctest::Approx(1.0));
  CHECK(b.pi_0U == doctest::Approx(1.0));
}

TEST_CASE("high cost gives the no-sharing corner") {
  ModelParams p = base();
  p.c_S = 0.75;
  const AbilityEquilibrium eq = solve_kappa(p);
  CHECK(eq.status == AbilityStatus::CornerNoLowSharing);
  CHECK(eq.kappa0_star == 0.0);
  CHECK(eq.gamma == 0.0);
  CHECK(eq.delta_at_zero <= 0.0);
}

TEST_CASE("existence bound hand value") {
  const ExistenceBounds b = existence_bounds(base());
  CHECK(std::abs(b.c_bar_S - 36.0 / 41) <= 1e-12);
  CHECK(b.q_bar_of_cS == 1.0);
}

TEST_CASE("q_bar is flat up to the saturation cost, then falls to 0") {
  const ModelParams p = base();
  const double c_sat = q_bar_saturation_cost(p);
  // 1 - lambda_R - lambda_S
  CHECK(c_sat == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(q_bar(p, 0.0) == 1.0);
  CHECK(q_bar(p, c_sat) == doctest::Approx(1.0));
  CHECK(q_bar(p, 0.7) < 1.0);
  CHECK(q_bar(p, 0.7) > q_bar(p, 0.8));
  CHECK(std::abs(q_bar(p, 36.0 / 41)) <= 1e-8);
}

TEST_CASE("gamma rises with the low type's sharing") {
  const ModelParams p = base();
  CHECK(gamma_ability(p, 0.0) == 0.0);
  CHECK(gamma_ability(p, 0.2) < gamma_ability(p, 0.8));
}

TEST_CASE("tolerance must be positive") {
  CHECK_THROWS_AS(solve_kappa(base(), 0.0), SolverError);
}

TEST_CASE("status names") {
  CHECK(to_string(AbilityStatus::Interior) == "Interior");
  CHECK(to_string(AbilityStatus::CornerNoLowSharing) == "CornerNoLowSharing");
}
