#include "phasedisc/signal.hpp"

#include <cmath>
#include <stdexcept>

namespace phasedisc {

TimeGrid::TimeGrid(double dt_, double horizon_) : dt(dt_), horizon(horizon_) {
  if (!(dt > 0.0)) throw std::invalid_argument("TimeGrid: dt must be > 0");
  if (!(horizon > 0.0)) {
    throw std::invalid_argument("TimeGrid: horizon must be > 0");
  }
  steps = static_cast<std::size_t>(std::llround(horizon / dt));
  if (steps < 1) throw std::invalid_argument("TimeGrid: fewer than one step");
  if (std::abs(static_cast<double>(steps) * dt - horizon) > 1e-6 * horizon) {
    throw std::invalid_argument("TimeGrid: horizon is not a multiple of dt");
  }
}

double drift_increment(double alpha, double true_phase, double lo_phase,
                       double t, double dt) {
  return 2.0 * alpha * std::exp(-0.5 * t) * std::cos(lo_phase - true_phase) *
         dt;
}

std::pair<TrajectoryRecord, FilterState> simulate_trajectory(
    const Constellation& constellation, std::size_t true_label,
    const Strategy& strategy, const TimeGrid& grid, std::uint64_t seed,
    std::uint64_t stream, const SimOptions& options) {
  if (true_label >= constellation.size()) {
    throw std::out_of_range("simulate_trajectory: true_label out of range");
  }
  validate_strategy(strategy, constellation);
  if (!options.filter_enabled && is_adaptive(strategy)) {
    throw std::invalid_argument(
        "simulate_trajectory: adaptive strategy needs the filter enabled");
  }
  if (options.forced_noise && options.forced_noise->size() < grid.steps) {
    throw std::invalid_argument(
        "simulate_trajectory: forced noise shorter than the grid");
  }

  TrajectoryRecord record{grid, {}, {}, constellation.phases[true_label], seed,
                          stream, {}};
  record.increments.reserve(grid.steps);
  record.lo_phases.reserve(grid.steps);

  FilterState filter(constellation);
  const bool record_posterior = options.filter_enabled &&
                                options.record_posterior;
  if (record_posterior) {
    record.posterior_correct.reserve(grid.steps + 1);
    record.posterior_correct.push_back(filter.posterior_of(true_label));
  }

  CounterRng rng(seed, stream);
  const double alpha = constellation.amplitude;
  for (std::size_t k = 0; k < grid.steps; ++k) {
    const double t = grid.time_at(k);
    const double phi_lo = lo_phase(strategy, t, filter);
    const double noise = options.forced_noise
                             ? (*options.forced_noise)[k]
                             : sample_wiener_increment(rng, grid.dt);
    const double increment =
        drift_increment(alpha, record.true_phase, phi_lo, t, grid.dt) + noise;
    record.lo_phases.push_back(phi_lo);
    record.increments.push_back(increment);
    if (options.filter_enabled) {
      filter.update(phi_lo, increment, t, grid.dt);
      if (record_posterior) {
        record.posterior_correct.push_back(filter.posterior_of(true_label));
      }
    }
  }
  return {std::move(record), std::move(filter)};
}

}  // namespace phasedisc
