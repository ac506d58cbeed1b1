#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "phasedisc/angles.hpp"
#include "phasedisc/constellation.hpp"
#include "phasedisc/rng.hpp"
#include "phasedisc/strategies.hpp"

using namespace phasedisc;

namespace {

Constellation cqed_n4(double alpha = 5.0) {
  return build_constellation({0.4 * kPi, 0.3 * kPi}, alpha);
}

}  // namespace

TEST_CASE("midpoint_quadrature") {
  CHECK(midpoint_quadrature(0.3, 0.3) == doctest::Approx(0.5 * kPi + 0.3));
  CHECK(midpoint_quadrature(0.7 * kPi, 0.1 * kPi) ==
        doctest::Approx(0.9 * kPi));
  CHECK(midpoint_quadrature(0.1 * kPi, -0.1 * kPi) ==
        doctest::Approx(0.5 * kPi));
  // Pair straddling the cut: midpoint pi, quadrature axis at -pi/2.
  CHECK(midpoint_quadrature(0.75 * kPi, -0.75 * kPi) ==
        doctest::Approx(-0.5 * kPi));

  CounterRng rng(9, 0);
  for (int i = 0; i < 1000; ++i) {
    const double a = (rng.next_unit() - 0.5) * kTwoPi;
    const double b = (rng.next_unit() - 0.5) * kTwoPi;
    CHECK(circular_distance(midpoint_quadrature(a, b),
                            midpoint_quadrature(b, a)) < 1e-12);
  }
}

TEST_CASE("static homodyne returns its phase") {
  FilterState state(cqed_n4());
  const Strategy s = StaticHomodyne{0.42};
  CHECK(lo_phase(s, 0.0, state) == doctest::Approx(0.42));
  CHECK(lo_phase(s, 0.9, state) == doctest::Approx(0.42));
}

TEST_CASE("heterodyne cycles at its rate") {
  FilterState state(cqed_n4());
  const Strategy s = Heterodyne{100.0 * kPi, 0.0};
  CHECK(circular_distance(lo_phase(s, 0.01, state), kPi) < 1e-12);
  CHECK(lo_phase(s, 0.0, state) == doctest::Approx(0.0));

  SUBCASE("periodic in t with period 2pi/rate") {
    const double period = kTwoPi / 100.0 / kPi * kPi / 1.0;  // 2pi/omega
    for (double t : {0.0, 0.003, 0.17, 0.5}) {
      CHECK(circular_distance(lo_phase(s, t, state),
                              lo_phase(s, t + kTwoPi / (100.0 * kPi), state)) <
            1e-9);
    }
    (void)period;
  }

  SUBCASE("rate must be positive") {
    CHECK_THROWS_AS(lo_phase(Heterodyne{0.0, 0.0}, 0.1, state),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate_strategy(Heterodyne{-3.0, 0.0},
                                      state.constellation()),
                    std::invalid_argument);
  }
}

TEST_CASE("adaptive rule measures the top-two pair in quadrature") {
  const Constellation c = cqed_n4();

  SUBCASE("uniform start picks the two lowest indices") {
    FilterState state(c);
    // phases[0] = 7pi/10, phases[1] = pi/10 -> midpoint 4pi/10.
    CHECK(lo_phase(AdaptiveTopTwo{}, 0.0, state) ==
          doctest::Approx(0.9 * kPi));
  }

  SUBCASE("top-two pair {+pi/10, -pi/10} yields pi/2") {
    FilterState state(c, {}, {0.0, 3.0, 2.9, -1.0}, 0.0);
    CHECK(lo_phase(AdaptiveTopTwo{}, 0.0, state) ==
          doctest::Approx(0.5 * kPi));
  }

  SUBCASE("depends only on the identity of the top two") {
    FilterState a(c, {}, {0.0, 3.0, 2.9, -1.0}, 0.0);
    FilterState b(c, {}, {100.0, 103.5, 102.9, 99.0}, 0.0);  // same order
    CHECK(lo_phase(AdaptiveTopTwo{}, 0.2, a) ==
          doctest::Approx(lo_phase(AdaptiveTopTwo{}, 0.2, b)));
    // Swapping which of the pair is first changes nothing either.
    FilterState swapped(c, {}, {0.0, 2.9, 3.0, -1.0}, 0.0);
    CHECK(lo_phase(AdaptiveTopTwo{}, 0.2, swapped) ==
          doctest::Approx(lo_phase(AdaptiveTopTwo{}, 0.2, a)));
  }

  SUBCASE("pure function of its inputs") {
    FilterState state(c, {}, {0.0, 3.0, 2.9, -1.0}, 0.0);
    const double first = lo_phase(AdaptiveTopTwo{}, 0.3, state);
    for (int i = 0; i < 10; ++i) {
      CHECK(lo_phase(AdaptiveTopTwo{}, 0.3, state) == first);
    }
  }
}

TEST_CASE("optimal two-phase rule") {
  const Constellation two = build_constellation({0.1 * kPi}, 3.0);
  FilterState state(two);
  CHECK(lo_phase(OptimalTwoPhase{}, 0.0, state) == doctest::Approx(0.5 * kPi));

  SUBCASE("rejects larger constellations") {
    FilterState big(cqed_n4());
    CHECK_THROWS_AS(lo_phase(OptimalTwoPhase{}, 0.0, big),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate_strategy(OptimalTwoPhase{}, cqed_n4()),
                    std::invalid_argument);
  }

  SUBCASE("adaptive rule coincides for N = 2") {
    CounterRng rng(21, 0);
    for (int i = 0; i < 200; ++i) {
      const double l0 = rng.next_gaussian();
      const double l1 = rng.next_gaussian();
      FilterState s(two, {}, {l0, l1}, 0.0);
      CHECK(lo_phase(AdaptiveTopTwo{}, 0.1, s) ==
            doctest::Approx(lo_phase(OptimalTwoPhase{}, 0.1, s)));
    }
  }
}

TEST_CASE("strategy names are stable") {
  CHECK(strategy_name(AdaptiveTopTwo{}) == "adaptive");
  CHECK(strategy_name(OptimalTwoPhase{}) == "optimal_two");
  CHECK(strategy_name(Heterodyne{100.0, 0.0}) == "heterodyne@100");
  CHECK(strategy_name(StaticHomodyne{0.5}) == "static@0.5");
}
