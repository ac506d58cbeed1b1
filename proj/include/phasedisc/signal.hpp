#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "phasedisc/constellation.hpp"
#include "phasedisc/filter.hpp"
#include "phasedisc/rng.hpp"
#include "phasedisc/strategies.hpp"

namespace phasedisc {

/// Uniform discretization of [0, horizon]. Time is dimensionless with the
/// cavity decay rate set to 1, so the field envelope decays as exp(-t/2).
struct TimeGrid {
  double dt = 1e-3;
  double horizon = 1.0;
  std::size_t steps = 1000;

  TimeGrid(double dt_, double horizon_);

  double time_at(std::size_t k) const { return static_cast<double>(k) * dt; }
};

/// One realized measurement run.
struct TrajectoryRecord {
  TimeGrid grid;
  std::vector<double> increments;  // I(t_k) dt
  std::vector<double> lo_phases;   // Phi(t_k)
  double true_phase = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  /// Posterior of the correct hypothesis; size steps+1 with the prior at
  /// index 0. Empty when not recorded.
  std::vector<double> posterior_correct;
};

/// Deterministic drift part of the photocurrent increment:
///   2 * alpha * exp(-t/2) * cos(lo_phase - true_phase) * dt
double drift_increment(double alpha, double true_phase, double lo_phase,
                       double t, double dt);

struct SimOptions {
  bool filter_enabled = true;
  bool record_posterior = true;
  /// Per-step Wiener increments to use instead of sampling; must hold at
  /// least grid.steps values. Pass zeros for a noise-free run.
  const std::vector<double>* forced_noise = nullptr;
};

/// Closed-loop run: each step queries the strategy for Phi(t_k) against
/// the filter state left by step k-1 (one-step feedback latency), emits
/// drift + dW, then feeds the increment back into the filter. Identical
/// (seed, stream, config, strategy) give a bit-identical record.
std::pair<TrajectoryRecord, FilterState> simulate_trajectory(
    const Constellation& constellation, std::size_t true_label,
    const Strategy& strategy, const TimeGrid& grid, std::uint64_t seed,
    std::uint64_t stream = 0, const SimOptions& options = {});

}  // namespace phasedisc
