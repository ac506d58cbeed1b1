#include "phasedisc/strategies.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>

#include "phasedisc/angles.hpp"

namespace phasedisc {

double midpoint_quadrature(double phi_a, double phi_b) {
  return wrap_angle(0.5 * kPi + circular_midpoint(phi_a, phi_b));
}

namespace {

/// Indices of the largest and second-largest filter score; ties go to
/// the lowest index.
std::pair<std::size_t, std::size_t> top_two(const FilterState& state) {
  const std::size_t n = state.log_liks().size();
  std::size_t best = 0;
  for (std::size_t j = 1; j < n; ++j) {
    if (state.score(j) > state.score(best)) best = j;
  }
  std::size_t second = best == 0 ? 1 : 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == best || j == second) continue;
    if (state.score(j) > state.score(second)) second = j;
  }
  return {best, second};
}

}  // namespace

double lo_phase(const Strategy& strategy, double t, const FilterState& state) {
  struct Visitor {
    double t;
    const FilterState& state;

    double operator()(const StaticHomodyne& s) const {
      return wrap_angle(s.phase);
    }
    double operator()(const Heterodyne& h) const {
      if (!(h.rate > 0.0)) {
        throw std::invalid_argument("Heterodyne: rate must be > 0");
      }
      return wrap_angle(h.initial_phase + h.rate * t);
    }
    double operator()(const AdaptiveTopTwo&) const {
      const auto [hi, lo] = top_two(state);
      const std::vector<double>& phases = state.constellation().phases;
      return midpoint_quadrature(phases[hi], phases[lo]);
    }
    double operator()(const OptimalTwoPhase&) const {
      const std::vector<double>& phases = state.constellation().phases;
      if (phases.size() != 2) {
        throw std::invalid_argument(
            "OptimalTwoPhase: constellation must have exactly 2 hypotheses");
      }
      return midpoint_quadrature(phases[0], phases[1]);
    }
  };
  return std::visit(Visitor{t, state}, strategy);
}

void validate_strategy(const Strategy& strategy, const Constellation& c) {
  if (std::holds_alternative<OptimalTwoPhase>(strategy) && c.size() != 2) {
    throw std::invalid_argument(
        "OptimalTwoPhase: constellation must have exactly 2 hypotheses");
  }
  if (const auto* h = std::get_if<Heterodyne>(&strategy)) {
    if (!(h->rate > 0.0)) {
      throw std::invalid_argument("Heterodyne: rate must be > 0");
    }
  }
  if (c.size() < 2) {
    throw std::invalid_argument("strategy: constellation too small");
  }
}

bool is_adaptive(const Strategy& strategy) {
  return std::holds_alternative<AdaptiveTopTwo>(strategy);
}

std::string strategy_name(const Strategy& strategy) {
  char buf[64];
  if (const auto* s = std::get_if<StaticHomodyne>(&strategy)) {
    std::snprintf(buf, sizeof(buf), "static@%.6g", s->phase);
    return buf;
  }
  if (const auto* h = std::get_if<Heterodyne>(&strategy)) {
    std::snprintf(buf, sizeof(buf), "heterodyne@%.6g", h->rate);
    return buf;
  }
  if (std::holds_alternative<AdaptiveTopTwo>(strategy)) return "adaptive";
  return "optimal_two";
}

}  // namespace phasedisc
