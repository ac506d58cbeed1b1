#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "phasedisc/angles.hpp"
#include "phasedisc/constellation.hpp"
#include "phasedisc/rng.hpp"

using namespace phasedisc;

TEST_CASE("wrap_angle maps into (-pi, pi]") {
  CHECK(wrap_angle(0.0) == doctest::Approx(0.0));
  CHECK(wrap_angle(kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(-kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(3.0 * kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(kTwoPi + 0.25) == doctest::Approx(0.25));
  CHECK(wrap_angle(-kTwoPi - 0.25) == doctest::Approx(-0.25));

  CounterRng rng(7, 0);
  for (int i = 0; i < 2000; ++i) {
    const double x = (rng.next_unit() - 0.5) * 50.0;
    const double w = wrap_angle(x);
    CHECK(w > -kPi);
    CHECK(w <= kPi);
    CHECK(std::abs(std::remainder(w - x, kTwoPi)) < 1e-9);
  }
}

TEST_CASE("circular_midpoint stays on the shorter arc") {
  CHECK(circular_midpoint(0.1, 0.3) == doctest::Approx(0.2));
  CHECK(circular_midpoint(-0.1 * kPi, 0.1 * kPi) == doctest::Approx(0.0));
  // Pair straddling the branch cut: the short arc passes through pi.
  CHECK(circular_midpoint(0.75 * kPi, -0.75 * kPi) == doctest::Approx(kPi));
  // Argument order never matters.
  CounterRng rng(11, 0);
  for (int i = 0; i < 2000; ++i) {
    const double a = (rng.next_unit() - 0.5) * kTwoPi;
    const double b = (rng.next_unit() - 0.5) * kTwoPi;
    CHECK(circular_distance(circular_midpoint(a, b),
                            circular_midpoint(b, a)) < 1e-12);
    // The midpoint is equidistant from both inputs.
    CHECK(circular_distance(a, circular_midpoint(a, b)) ==
          doctest::Approx(circular_distance(b, circular_midpoint(a, b)))
              .epsilon(1e-9));
  }
}

TEST_CASE("dispersive_pull evaluates atan(g^2/(kappa delta))") {
  CHECK(dispersive_pull(0.0, 1.0, 1.0) == 0.0);

  // Typical circuit-QED cavity-pull ratio of 2.5.
  const double g = std::sqrt(2.5);
  CHECK(dispersive_pull(g, 1.0, 1.0) ==
        doctest::Approx(1.1902899496825317).epsilon(1e-12));

  SUBCASE("odd in the detuning sign") {
    CounterRng rng(3, 0);
    for (int i = 0; i < 500; ++i) {
      const double gs = rng.next_unit() * 4.0;
      const double kappa = 0.1 + rng.next_unit() * 5.0;
      const double delta = 0.1 + rng.next_unit() * 5.0;
      CHECK(dispersive_pull(gs, kappa, -delta) ==
            doctest::Approx(-dispersive_pull(gs, kappa, delta)));
      const double pull = dispersive_pull(gs, kappa, delta);
      CHECK(pull > -0.5 * kPi);
      CHECK(pull < 0.5 * kPi);
    }
  }

  SUBCASE("domain errors") {
    CHECK_THROWS_AS(dispersive_pull(1.0, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(dispersive_pull(1.0, -2.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(dispersive_pull(1.0, 1.0, 0.0), std::domain_error);
  }
}

TEST_CASE("build_constellation enumerates the signed sums") {
  SUBCASE("two-qubit example") {
    const Constellation c =
        build_constellation({0.4 * kPi, 0.3 * kPi}, 5.0);
    REQUIRE(c.size() == 4);
    CHECK(c.phases[0] == doctest::Approx(0.7 * kPi));
    CHECK(c.phases[1] == doctest::Approx(0.1 * kPi));
    CHECK(c.phases[2] == doctest::Approx(-0.1 * kPi));
    CHECK(c.phases[3] == doctest::Approx(-0.7 * kPi));
    CHECK(c.label_string(0) == "++");
    CHECK(c.label_string(1) == "+-");
    CHECK(c.label_string(2) == "-+");
    CHECK(c.label_string(3) == "--");
    CHECK(c.amplitude == 5.0);
    CHECK(c.smallest_positive_phase_index() == 1);
  }

  SUBCASE("four-qubit example covers the odd multiples of pi/16") {
    const Constellation c = build_constellation(
        {kPi / 16.0, kPi / 8.0, kPi / 4.0, kPi / 2.0}, 5.0);
    REQUIRE(c.size() == 16);
    // Independent enumeration: +/-1 +/-2 +/-4 +/-8 sixteenths hit every
    // odd multiple from -15 to 15 exactly once.
    std::vector<double> expected;
    for (int m = -15; m <= 15; m += 2) {
      expected.push_back(m * kPi / 16.0);
    }
    std::vector<double> got = c.phases;
    std::sort(got.begin(), got.end());
    REQUIRE(got.size() == expected.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i] == doctest::Approx(expected[i]).epsilon(1e-12));
    }
  }

  SUBCASE("single qubit gives +/- phi") {
    const Constellation c = build_constellation({0.1 * kPi}, 1.0);
    REQUIRE(c.size() == 2);
    CHECK(c.phases[0] == doctest::Approx(0.1 * kPi));
    CHECK(c.phases[1] == doctest::Approx(-0.1 * kPi));
    CHECK(c.label_string(0) == "+");
    CHECK(c.smallest_positive_phase_index() == 0);
  }

  SUBCASE("preconditions") {
    CHECK_THROWS_AS(build_constellation({}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(build_constellation(std::vector<double>(17, 0.1), 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_constellation({0.1}, -1.0), std::invalid_argument);
  }

  SUBCASE("properties over random pulls") {
    CounterRng rng(17, 0);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 1 + (rng.next_u64() % 8);
      std::vector<double> pulls(n);
      for (double& p : pulls) p = (rng.next_unit() - 0.5) * kPi;
      const Constellation c = build_constellation(pulls, 1.0);
      REQUIRE(c.size() == (std::size_t{1} << n));
      for (double phase : c.phases) {
        CHECK(phase > -kPi);
        CHECK(phase <= kPi);
      }
      // Negating every pull negates the phase multiset mod 2*pi.
      std::vector<double> negated(pulls);
      for (double& p : negated) p = -p;
      const Constellation m = build_constellation(negated, 1.0);
      std::vector<double> lhs, rhs;
      for (std::size_t i = 0; i < c.size(); ++i) {
        lhs.push_back(wrap_angle(-c.phases[i]));
        rhs.push_back(m.phases[i]);
      }
      std::sort(lhs.begin(), lhs.end());
      std::sort(rhs.begin(), rhs.end());
      for (std::size_t i = 0; i < lhs.size(); ++i) {
        CHECK(circular_distance(lhs[i], rhs[i]) < 1e-12);
      }
    }
  }
}

TEST_CASE("validate_unique flags colliding signed sums") {
  SUBCASE("well-separated pull sets stay unique") {
    CHECK(validate_unique(build_constellation({0.4 * kPi, 0.3 * kPi}, 5.0))
              .ok);
    const Constellation big = build_constellation(
        {kPi / 16.0, kPi / 8.0, kPi / 4.0, kPi / 2.0}, 5.0);
    const UniquenessReport report = validate_unique(big);
    CHECK(report.ok);
    CHECK(report.collisions.empty());
  }

  SUBCASE("equal pulls collide on the +-/-+ labels") {
    const Constellation c = build_constellation({0.25 * kPi, 0.25 * kPi}, 1.0);
    const UniquenessReport report = validate_unique(c);
    REQUIRE_FALSE(report.ok);
    REQUIRE(report.collisions.size() == 1);
    CHECK(report.collisions[0].first == 1);
    CHECK(report.collisions[0].second == 2);
    CHECK(c.label_string(1) == "+-");
    CHECK(c.label_string(2) == "-+");
  }

  SUBCASE("collisions across the 2pi wrap are caught") {
    // Phases pi - x and -pi + x sit 2x apart through the cut.
    const Constellation c = build_constellation({kPi - 1e-12}, 1.0);
    CHECK_FALSE(validate_unique(c, 1e-9).ok);
  }

  SUBCASE("perturbing one pull resolves a degenerate pair") {
    const Constellation fixed =
        build_constellation({0.25 * kPi, 0.25 * kPi + 1e-3}, 1.0);
    CHECK(validate_unique(fixed).ok);
  }

  SUBCASE("tolerance must be positive") {
    const Constellation c = build_constellation({0.1}, 1.0);
    CHECK_THROWS_AS(validate_unique(c, 0.0), std::invalid_argument);
  }
}
