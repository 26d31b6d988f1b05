#include <doctest.h>

#include "qoc/scenario.hpp"

using namespace qoc;

TEST_CASE("empty config yields the default scenario") {
  const auto scenarios = parse_config("");
  REQUIRE(scenarios.size() == 1);
  const Scenario& s = scenarios.front();
  CHECK(s.label == "default");
  CHECK(s.params.alpha2 == 0.01);
  CHECK(s.params.kBT == 300.0);
  CHECK(s.params.r == 0.1);
  CHECK(s.weights.theta == 1.0);
  CHECK(s.grid.tf == 20.0);
  CHECK(s.grid.n_steps == 4000);
  CHECK(s.x0[0] == doctest::Approx(std::numbers::sqrt3 / 2.0));
  CHECK(s.x0[1] == doctest::Approx(-std::numbers::sqrt2 / 4.0));
  CHECK(s.method == CoefficientMethod::Exact);
}

TEST_CASE("flat keys configure a single run") {
  const auto scenarios = parse_config(
      "kBT = 3\n"
      "r = 1\n"
      "theta = 0.5\n"
      "method = markovian\n"
      "x0 = 1, 0, 0\n"
      "# a comment\n"
      "n_steps = 100\n");
  REQUIRE(scenarios.size() == 1);
  CHECK(scenarios[0].params.kBT == 3.0);
  CHECK(scenarios[0].params.r == 1.0);
  CHECK(scenarios[0].weights.theta == 0.5);
  CHECK(scenarios[0].method == CoefficientMethod::Markovian);
  CHECK(scenarios[0].x0 == BlochVector{1.0, 0.0, 0.0});
  CHECK(scenarios[0].grid.n_steps == 100);
}

TEST_CASE("base keys apply to every section") {
  const auto scenarios = parse_config(
      "kBT = 300\n"
      "[scenario]\n"
      "label = a\n"
      "r = 0.1\n"
      "[scenario]\n"
      "label = b\n"
      "r = 10\n");
  REQUIRE(scenarios.size() == 2);
  CHECK(scenarios[0].label == "a");
  CHECK(scenarios[1].label == "b");
  CHECK(scenarios[0].params.kBT == 300.0);
  CHECK(scenarios[1].params.kBT == 300.0);
  CHECK(scenarios[0].params.r == 0.1);
  CHECK(scenarios[1].params.r == 10.0);
}

TEST_CASE("errors carry line numbers and categories") {
  CHECK_THROWS_WITH_AS(parse_config("theta = 0\n"), doctest::Contains("theta"), ConfigError);

  try {
    parse_config("r = 1\nbogus_key = 3\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 2);
    CHECK(doctest::Contains("bogus_key").checkWith(e.what()));
  }

  try {
    parse_config("r = not-a-number\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 1);
  }

  CHECK_THROWS_AS(parse_config("just words\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[other-section]\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("x0 = 1, 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("method = spline\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[scenario]\nlabel = a\n[scenario]\nlabel = a\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("x0 = 2, 0, 0\n"), ConfigError);  // outside the Bloch ball
}

TEST_CASE("formatted config round-trips") {
  Scenario s;
  s.label = "cell_3_10";
  s.params.kBT = 3.0;
  s.params.r = 10.0;
  s.sweep.relaxation = 0.25;
  s.method = CoefficientMethod::Quadrature;

  const auto parsed = parse_config(format_config(s));
  REQUIRE(parsed.size() == 1);
  CHECK(parsed[0].label == s.label);
  CHECK(parsed[0].params.kBT == s.params.kBT);
  CHECK(parsed[0].params.r == s.params.r);
  CHECK(parsed[0].sweep.relaxation == s.sweep.relaxation);
  CHECK(parsed[0].method == s.method);
  CHECK(parsed[0].x0 == s.x0);
}

TEST_CASE("load_config reports missing files") {
  CHECK_THROWS_AS(load_config("/nonexistent/path.ini"), ConfigError);
}
