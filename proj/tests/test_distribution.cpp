#include <doctest.h>

#include <cmath>

#include "sharesig/distribution.hpp"
#include "sharesig/error.hpp"
#include "sharesig/quadrature.hpp"

using namespace sharesig;

TEST_CASE("gauss-legendre integrates polynomials up to degree 127") {
  CHECK(integrate([](double x) { return std::pow(x, 9); }, 0.0, 1.0) ==
        doctest::Approx(0.1).epsilon(1e-14));
  double wsum = 0.0;
  for (double w : gauss_legendre_64().weights) wsum += w;
  CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("uniform closed forms") {
  const Distribution u = Distribution::uniform(0.2, 0.6);
  CHECK(u.mean() == doctest::Approx(0.4));
  CHECK(u.mass(0.0, 0.3) == doctest::Approx(0.25));
  CHECK(u.partial_moment(0.2, 0.4) == doctest::Approx(0.5 * 0.3));
  CHECK(u.truncated_mean(0.3, 0.5) == doctest::Approx(0.4));
  CHECK(u.quantile(0.5) == doctest::Approx(0.4));
  CHECK(u.cdf(0.6) == 1.0);
}

TEST_CASE("beta moments") {
  const Distribution b = Distribution::beta(2.0, 5.0);
  CHECK(b.mean() == doctest::Approx(2.0 / 7).epsilon(1e-13));
  CHECK(b.mass(0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  // survival for integer shapes: (1-x)^6 + 6x(1-x)^5
  const double x = 0.99;
  const double tail = std::pow(1 - x, 6) + 6 * x * std::pow(1 - x, 5);
  CHECK(b.mass(x, 1.0) == doctest::Approx(tail).epsilon(1e-8));
  CHECK(b.mass(x, 1.0) > 0.0);

  const Distribution s = Distribution::beta(2.0, 2.0);
  CHECK(s.mass(0.0, 0.5) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(s.truncated_mean(0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-13));
  // E[X; X < 1/2] for density 6x(1-x): 6 (1/24 - 1/64)
  CHECK(s.partial_moment(0.0, 0.5) == doctest::Approx(6 * (1.0 / 24 - 1.0 / 64)).epsilon(1e-13));
}

TEST_CASE("piecewise density is normalized") {
  const Distribution t = Distribution::piecewise_linear({0.0, 0.5, 1.0}, {0.0, 1.0, 0.0});
  CHECK(t.mass(0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(t.mass(0.0, 0.5) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(t.mean() == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(t.density(0.5) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(t.quantile(0.125) == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("point mass") {
  const Distribution p = Distribution::point_mass(0.3);
  CHECK(p.mean() == 0.3);
  CHECK(p.expect([](double x) { return x * x; }) == doctest::Approx(0.09));
  CHECK(p.mass(0.0, 1.0) == 1.0);
}

TEST_CASE("bad parameters are rejected") {
  CHECK_THROWS_AS(Distribution::uniform(0.6, 0.2), SolverError);
  CHECK_THROWS_AS(Distribution::beta(-1.0, 2.0), SolverError);
  CHECK_THROWS_AS(Distribution::piecewise_linear({0.0, 1.0}, {0.0, 0.0}), SolverError);
  CHECK_THROWS_AS(Distribution::point_mass(1.5), SolverError);
}

TEST_CASE("truncation to an empty interval throws") {
  const Distribution u = Distribution::uniform(0.2, 0.6);
  CHECK_THROWS_AS(u.truncated_mean(0.7, 0.9), SolverError);
}
