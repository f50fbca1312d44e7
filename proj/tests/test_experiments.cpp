#include <doctest.h>

#include <cmath>
#include <string>

#include "sharesig/config.hpp"
#include "sharesig/experiments.hpp"

using namespace sharesig;

TEST_CASE("grid axes") {
  const auto a = fig1_axis(33);
  CHECK(a.front() == 0.1);
  CHECK(a.back() == doctest::Approx(0.9).epsilon(1e-15));
  const auto b = fig3_axis(33);
  CHECK(b.front() == doctest::Approx(1.0 / 34));
  CHECK(b.back() == doctest::Approx(33.0 / 34));
}

TEST_CASE("surface csv is byte stable across thread counts") {
  const Fig1Panel a = fig1_panel(0.2, 9, 1);
  const Fig1Panel b = fig1_panel(0.2, 9, 4);
  CHECK(fig1_csv(a) == fig1_csv(b));
  CHECK(fig1_csv(a).rfind("q,beta,gamma_minus_q,status\n", 0) == 0);
  CHECK(a.all_interior());
  CHECK(a.cells.size() == 81);
}

TEST_CASE("heatmap csv") {
  const Fig3Grid g = fig3_grid(5, 2);
  CHECK(g.errors == 0);
  CHECK(g.cells.size() == 25);
  CHECK(fig3_csv(g).rfind("q,beta,gamma_minus_q,p_Sl,p_Sh,status\n", 0) == 0);
  CHECK(fig3_csv(g) == fig3_csv(fig3_grid(5, 1)));
}

TEST_CASE("sweep echoes the parameter tuple") {
  const ExperimentConfig cfg = parse_config(
      "regime = \"ability\"\n[sweep]\nq = [0.1, 0.5, 3]\nc_S = [0.0, 0.2, 2]\n");
  const SweepOutput s = run_sweep(cfg, 1);
  CHECK(s.rows == 6);
  CHECK(s.errors == 0);
  CHECK(s.csv.rfind("q,beta,eta,p_T,lambda_S,lambda_R,c_S,p_S,p_R,kappa0_star", 0) == 0);
}

TEST_CASE("sweep into an invalid region is a config error") {
  const ExperimentConfig cfg =
      parse_config("regime = \"ability\"\n[sweep]\nlambda_S = [0.1, 0.6, 3]\n");
  CHECK_THROWS_AS(run_sweep(cfg, 1), ConfigError);
}

TEST_CASE("worldview sweep") {
  const ExperimentConfig cfg = parse_config(
      "regime = \"worldview\"\nq = 0.3\neta = 0.55\np_T = 0.5\nc_S = 0.05\np_R = 0.8\n"
      "[sweep]\np_R = [0.6, 0.9, 4]\n");
  const SweepOutput s = run_sweep(cfg, 1);
  CHECK(s.rows == 4);
  CHECK(s.errors == 0);
  CHECK(s.csv.find("Interior") != std::string::npos);
}

TEST_CASE("provenance sidecar") {
  const ExperimentConfig cfg = parse_config("q = 0.4\n");
  const std::string j = provenance_json(cfg, "sweep", 0);
  CHECK(j.find("\"command\": \"sweep\"") != std::string::npos);
  CHECK(j.find("\"q\": 0.4") != std::string::npos);
}

TEST_CASE("cost frontier") {
  const ModelParams p = fig1_base(0.2);
  const double c = ability_cost_frontier(p);
  ModelParams at = p;
  at.c_S = c;
  CHECK(std::abs(delta(at, 0.0)) <= 1e-14);
}

TEST_CASE("random instances are deterministic and interior") {
  const auto a = random_worldview_instances(20, 1, false);
  const auto b = random_worldview_instances(20, 1, false);
  REQUIRE(a.size() == 20);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].params == b[i].params);
    CHECK(a[i].eq.status == WorldviewStatus::Interior);
  }
}

TEST_CASE("checks pass and the corrupted quality measure is caught") {
  VerifyOptions opt;
  opt.grid = 9;
  CHECK(check_quality_sign(opt).pass);
  CHECK(check_martingale(opt).pass);
  opt.gamma_worldview_fn = corrupted_gamma_worldview;
  const CheckResult r = check_quality_sign(opt);
  CHECK_FALSE(r.pass);
  CHECK(r.detail.find("first offending tuple") != std::string::npos);
}
