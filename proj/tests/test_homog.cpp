#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "fucik/homog.hpp"
#include "support/generators.hpp"

using namespace fucik;

namespace {

const PiecewiseConstantWeight two_phase({0.0, 0.5, 1.0}, {1.0, 3.0});

}  // namespace

TEST_CASE("rate prefactor gamma", "[homog]") {
  CHECK(fucik::gamma(1.0) == 1.0);
  CHECK_THAT(fucik::gamma(0.25), Catch::Matchers::WithinRel(8.0, 1e-14));
  CHECK_THAT(fucik::gamma(4.0), Catch::Matchers::WithinRel(2.0, 1e-14));
  CHECK_THROWS_AS(fucik::gamma(0.0), std::invalid_argument);
}

TEST_CASE("fit_rate recovers exact power laws", "[homog]") {
  std::vector<std::pair<double, double>> lin, quad;
  for (double e : {0.25, 0.125, 0.0625, 0.03125}) {
    lin.emplace_back(e, 0.5 * e);
    quad.emplace_back(e, 2.0 * e * e);
  }
  const auto [s1, i1] = fit_rate(lin);
  CHECK_THAT(s1, Catch::Matchers::WithinAbs(1.0, 1e-12));
  CHECK_THAT(std::exp(i1), Catch::Matchers::WithinRel(0.5, 1e-10));
  const auto [s2, i2] = fit_rate(quad);
  CHECK_THAT(s2, Catch::Matchers::WithinAbs(2.0, 1e-12));
  CHECK_THROWS_AS(fit_rate({{0.5, 0.1}, {0.25, 0.05}}), std::invalid_argument);
}

TEST_CASE("constant base weights give zero error and C_emp", "[homog]") {
  ExperimentConfig cfg;
  cfg.m = PiecewiseConstantWeight::constant(2.0);
  cfg.n = PiecewiseConstantWeight::constant(0.5);
  cfg.k_list = {1, 2, 3};
  cfg.t_list = {0.5, 1.0};
  cfg.signs = {Sign::plus};
  cfg.epsilon_list = {0.25, 0.125};
  const auto report = run_rate_experiment(cfg);
  REQUIRE(report.series.size() == 6);
  for (const auto& ser : report.series) {
    CHECK(ser.complete);
    for (const auto& row : ser.rows) {
      REQUIRE(row.ok);
      // m_eps == m_0 for every eps: error is solver tolerance only
      CHECK(row.abs_err <= 10.0 * cfg.tol * row.lambda_0);
    }
    CHECK(ser.c_emp < 1e-7);
    CHECK(ser.usable_rows == 0);  // everything sits below the noise floor
    CHECK_FALSE(ser.slope.has_value());
  }
  CHECK(check_rate_bound(report, 1.0));
}

TEST_CASE("two-phase experiment: errors decrease and bound holds", "[homog]") {
  ExperimentConfig cfg;
  cfg.m = two_phase;
  cfg.n = PiecewiseConstantWeight::constant(1.0);
  cfg.k_list = {2};
  cfg.t_list = {1.0};
  cfg.signs = {Sign::plus};
  cfg.epsilon_list = {0.25, 0.125, 0.0625, 0.03125};
  const auto report = run_rate_experiment(cfg);
  REQUIRE(report.series.size() == 1);
  const auto& ser = report.series.front();
  REQUIRE(ser.complete);
  REQUIRE(ser.rows.size() == 4);
  // rows sorted by decreasing epsilon, errors decreasing along the tail
  for (std::size_t i = 1; i < ser.rows.size(); ++i) {
    CHECK(ser.rows[i].epsilon < ser.rows[i - 1].epsilon);
    CHECK(ser.rows[i].abs_err < ser.rows[0].abs_err);
  }
  CHECK(ser.slope.has_value());
  CHECK(ser.c_emp > 0.0);
  CHECK(check_rate_bound(report, 10.0 * ser.c_emp));
  CHECK_FALSE(check_rate_bound(report, ser.c_emp / 2.0));
}

TEST_CASE("limit values agree with the weight means", "[homog]") {
  ExperimentConfig cfg;
  cfg.m = two_phase;  // mean 2
  cfg.n = PiecewiseConstantWeight::constant(1.0);
  cfg.k_list = {2};
  cfg.t_list = {1.0};
  cfg.signs = {Sign::plus};
  cfg.epsilon_list = {0.25};
  const auto report = run_rate_experiment(cfg);
  const double expected =
      limit_half_eigenvalue(2, 1.0, Sign::plus, 2.0, 1.0, 1.0).lambda;
  CHECK_THAT(report.series.front().lambda_0,
             Catch::Matchers::WithinRel(expected, 1e-14));
}

TEST_CASE("k=2 rate check is stable across t", "[homog]") {
  ExperimentConfig cfg;
  cfg.m = two_phase;
  cfg.n = PiecewiseConstantWeight::constant(1.0);
  cfg.k_list = {2};
  cfg.t_list = {0.25, 0.5, 1.0};
  cfg.signs = {Sign::plus};
  cfg.epsilon_list = {0.25, 0.125, 0.0625, 0.03125, 0.015625};
  const auto report = run_rate_experiment(cfg);
  const auto chk = check_k2_rate(report);
  REQUIRE(chk.per_t_constant.size() == 3);
  for (const auto& [t, c] : chk.per_t_constant) CHECK(std::isfinite(c));
  CHECK(chk.ok);
  CHECK(chk.ratio <= 10.0);
}

TEST_CASE("degenerate series sit below the noise floor", "[homog]") {
  // k=1, sign -: the single negative domain sees only the constant n, so
  // lambda is exact for every eps and the series is excluded from fitting
  ExperimentConfig cfg;
  cfg.m = two_phase;
  cfg.n = PiecewiseConstantWeight::constant(1.0);
  cfg.k_list = {1};
  cfg.t_list = {0.5};
  cfg.signs = {Sign::minus};
  cfg.epsilon_list = {0.25, 0.125, 0.0625};
  const auto report = run_rate_experiment(cfg);
  const auto& ser = report.series.front();
  CHECK(ser.usable_rows == 0);
  CHECK_FALSE(ser.slope.has_value());
}

TEST_CASE("weak tail monotonicity of the error", "[homog]") {
  ExperimentConfig cfg;
  cfg.m = two_phase;
  cfg.n = PiecewiseConstantWeight::constant(1.0);
  cfg.k_list = {2, 3};
  cfg.t_list = {0.5, 1.0, 2.0};
  cfg.signs = {Sign::plus};
  const auto report = run_rate_experiment(cfg);  // default eps = 1/4 .. 1/256
  for (const auto& ser : report.series) {
    REQUIRE(ser.complete);
    const double err_at_largest = ser.rows.front().abs_err;
    int bad = 0;
    for (const auto& row : ser.rows)
      if (row.epsilon <= 1.0 / 32.0 && row.abs_err > err_at_largest) ++bad;
    CHECK(bad <= 1);  // one non-monotone oscillation step allowed
  }
}

TEST_CASE("experiment config validation", "[homog]") {
  ExperimentConfig cfg;
  cfg.k_list = {0};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.k_list = {1};
  cfg.t_list = {-1.0};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.t_list = {1.0};
  cfg.tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
