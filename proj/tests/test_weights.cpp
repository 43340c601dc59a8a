#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>

#include "fucik/weights.hpp"
#include "support/generators.hpp"

using namespace fucik;

TEST_CASE("average of piecewise-constant weights", "[weights]") {
  CHECK(PiecewiseConstantWeight::constant(1.0).average() == 1.0);
  CHECK(PiecewiseConstantWeight({0.0, 0.5, 1.0}, {1.0, 3.0}).average() == 2.0);
  const PiecewiseConstantWeight thirds({0.0, 1.0 / 3, 2.0 / 3, 1.0},
                                       {1.0, 2.0, 4.0});
  CHECK_THAT(thirds.average(),
             Catch::Matchers::WithinRel(7.0 / 3.0, 1e-15));
  CHECK(thirds.average() >= thirds.bound_lo());
  CHECK(thirds.average() <= thirds.bound_hi());
}

TEST_CASE("scale realizes compressed copies on [0, ell]", "[weights]") {
  SECTION("constant weight is unchanged by any epsilon") {
    const ScaledWeight s(PiecewiseConstantWeight::constant(2.5), 0.37, 2.0);
    CHECK(s.value_at(0.0) == 2.5);
    CHECK(s.value_at(1.234) == 2.5);
    CHECK(s.value_at(2.0) == 2.5);
  }
  SECTION("two-phase pattern, eps = 1/2, ell = 1") {
    const ScaledWeight s(PiecewiseConstantWeight({0.0, 0.5, 1.0}, {1.0, 3.0}),
                         0.5, 1.0);
    const std::vector<double> walls{0.0, 0.25, 0.5, 0.75, 1.0};
    const std::vector<double> vals{1.0, 3.0, 1.0, 3.0};
    REQUIRE(s.realized_breakpoints().size() == walls.size());
    for (std::size_t i = 0; i < walls.size(); ++i)
      CHECK_THAT(s.realized_breakpoints()[i],
                 Catch::Matchers::WithinAbs(walls[i], 1e-15));
    CHECK(s.realized_values() == vals);
  }
  SECTION("eps = 1 over one period is the identity") {
    const PiecewiseConstantWeight w({0.0, 0.3, 1.0}, {2.0, 5.0});
    const ScaledWeight s(w, 1.0, 1.0);
    REQUIRE(s.realized_values() == w.values());
    for (std::size_t i = 0; i < w.breakpoints().size(); ++i)
      CHECK_THAT(s.realized_breakpoints()[i],
                 Catch::Matchers::WithinAbs(w.breakpoints()[i], 1e-15));
  }
}

TEST_CASE("value_at uses the half-open right-limit convention", "[weights]") {
  const ScaledWeight s(PiecewiseConstantWeight({0.0, 0.5, 1.0}, {1.0, 3.0}),
                       0.5, 1.0);
  CHECK(s.value_at(0.3) == 3.0);
  CHECK(s.value_at(0.0) == 1.0);
  CHECK(s.value_at(0.25) == 3.0);  // right limit at an interior breakpoint
  CHECK(s.value_at(1.0) == 1.0);   // periodic extension at the domain end
  CHECK_THROWS_AS(s.value_at(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(s.value_at(1.1), std::invalid_argument);
}

TEST_CASE("weight validation", "[weights]") {
  CHECK_THROWS_AS(PiecewiseConstantWeight({0.5, 1.0}, {1.0}),
                  std::invalid_argument);  // first breakpoint not 0
  CHECK_THROWS_AS(PiecewiseConstantWeight({0.0, 0.6, 0.5, 1.0}, {1.0, 2.0, 3.0}),
                  std::invalid_argument);  // not increasing
  CHECK_THROWS_AS(PiecewiseConstantWeight({0.0, 1.0}, {-1.0}),
                  std::invalid_argument);  // nonpositive value
  CHECK_THROWS_AS(PiecewiseConstantWeight({0.0, 1.0}, {1.0, 2.0}),
                  std::invalid_argument);  // value count mismatch
  CHECK_THROWS_AS(PiecewiseConstantWeight({0.0, 0.5, 1.0}, {1.0, 3.0}, 1.0, 2.0),
                  std::invalid_argument);  // value above declared bound
  CHECK_THROWS_AS(
      ScaledWeight(PiecewiseConstantWeight::constant(1.0), 0.0, 1.0),
      std::invalid_argument);
  CHECK_THROWS_AS(
      ScaledWeight(PiecewiseConstantWeight::constant(1.0), 0.5, -1.0),
      std::invalid_argument);
}

TEST_CASE("non-integer period fit truncates the final copy at ell",
          "[weights]") {
  const PiecewiseConstantWeight w({0.0, 0.5, 1.0}, {1.0, 3.0});
  const ScaledWeight s(w, 0.3, 1.0);  // 10/3 copies
  CHECK(s.realized_breakpoints().back() == 1.0);
  // compare against direct periodic evaluation of the base pattern
  for (double x : {0.0, 0.1, 0.14, 0.16, 0.44, 0.6, 0.89, 0.91, 0.99, 1.0}) {
    const double y = std::fmod(x / 0.3, 1.0);
    CHECK(s.value_at(x) == w.value(y));
  }
  // total measure where the value is 3: two full copies contribute 0.15 each,
  // the partial third copy contributes [0.75, 0.9) plus nothing past 0.9+0.05
  double len3 = 0.0;
  const auto& walls = s.realized_breakpoints();
  for (std::size_t i = 0; i + 1 < walls.size(); ++i)
    if (s.realized_values()[i] == 3.0) len3 += walls[i + 1] - walls[i];
  CHECK_THAT(len3, Catch::Matchers::WithinAbs(0.45, 1e-12));
}

TEST_CASE("scaling preserves the mean over integer period fits", "[weights]") {
  for (int rep = 0; rep < 50; ++rep) {
    const auto w = gen::weight(1.0, 0.5, 4.0);
    const int j = gen::uniform_int(1, 40);
    const double ell = 1.0;
    const ScaledWeight s(w, ell / j, ell);
    // realized mean over [0, ell] equals the base mean exactly when an
    // integer number of periods fits
    double mean = 0.0;
    const auto& walls = s.realized_breakpoints();
    for (std::size_t i = 0; i + 1 < walls.size(); ++i)
      mean += s.realized_values()[i] * (walls[i + 1] - walls[i]);
    mean /= ell;
    CHECK_THAT(mean, Catch::Matchers::WithinRel(w.average(), 1e-12));
  }
}

TEST_CASE("scaling preserves the value distribution", "[weights]") {
  for (int rep = 0; rep < 50; ++rep) {
    const auto w = gen::weight(1.0, 0.5, 4.0);
    const int j = gen::uniform_int(1, 40);
    const ScaledWeight s(w, 1.0 / j, 1.0);
    std::map<double, double> base_len, scaled_len;
    for (std::size_t i = 0; i < w.values().size(); ++i)
      base_len[w.values()[i]] +=
          w.breakpoints()[i + 1] - w.breakpoints()[i];
    const auto& walls = s.realized_breakpoints();
    for (std::size_t i = 0; i + 1 < walls.size(); ++i)
      scaled_len[s.realized_values()[i]] += walls[i + 1] - walls[i];
    REQUIRE(base_len.size() == scaled_len.size());
    for (const auto& [v, len] : base_len)
      CHECK_THAT(scaled_len.at(v), Catch::Matchers::WithinAbs(len, 1e-12));
  }
}
