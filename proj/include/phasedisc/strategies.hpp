#pragma once

#include <string>
#include <variant>

#include "phasedisc/constellation.hpp"
#include "phasedisc/filter.hpp"

namespace phasedisc {

/// Fixed local-oscillator phase.
struct StaticHomodyne {
  double phase = 0.0;
};

/// Local-oscillator phase cycled at a constant rate (rad per unit time).
struct Heterodyne {
  double rate = 0.0;
  double initial_phase = 0.0;
};

/// Measure symmetrically in quadrature with respect to the two currently
/// most likely hypotheses: Phi = pi/2 + midpoint(phi_M, phi_m).
struct AdaptiveTopTwo {};

/// The optimal static rule for two hypotheses: Phi = pi/2 + (phi_0 + phi_1)/2.
struct OptimalTwoPhase {};

using Strategy =
    std::variant<StaticHomodyne, Heterodyne, AdaptiveTopTwo, OptimalTwoPhase>;

/// pi/2 plus the midpoint of the two angles: the measurement axis in
/// quadrature with their bisector. The midpoint is taken on the shorter
/// arc so pairs straddling the branch cut behave.
double midpoint_quadrature(double phi_a, double phi_b);

/// Local-oscillator phase at time t given the current filter state.
/// Pure in (strategy, t, state); result is canonical in (-pi, pi].
double lo_phase(const Strategy& strategy, double t, const FilterState& state);

/// Checks strategy parameters against a constellation: heterodyne rate
/// must be positive, OptimalTwoPhase needs exactly two hypotheses.
/// Throws std::invalid_argument on violation.
void validate_strategy(const Strategy& strategy, const Constellation& c);

/// True when the rule consults the filter posterior (needs filtering on).
bool is_adaptive(const Strategy& strategy);

/// Default human-readable name, e.g. "static@1.5708" or "adaptive".
std::string strategy_name(const Strategy& strategy);

}  // namespace phasedisc
