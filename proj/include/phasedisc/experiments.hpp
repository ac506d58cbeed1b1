#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "phasedisc/constellation.hpp"
#include "phasedisc/signal.hpp"
#include "phasedisc/strategies.hpp"

namespace phasedisc {

struct NamedStrategy {
  std::string name;
  Strategy strategy;
};

/// Which hypothesis generates the data: one fixed label, or every label in
/// turn (for averaging over the possible correct states).
struct CorrectState {
  enum class Mode { Fixed, Average };
  Mode mode = Mode::Fixed;
  std::size_t label = 0;
};

struct ExperimentConfig {
  Constellation constellation;
  std::vector<NamedStrategy> strategies;
  /// Probe amplitudes to sweep; empty means the constellation's own.
  std::vector<double> alphas;
  std::size_t n_runs = 500;
  TimeGrid grid{1e-3, 1.0};
  std::uint64_t master_seed = 0;
  CorrectState correct;
  double threshold = 0.5;
  /// Worker threads; 0 picks the hardware count. Results never depend on it.
  std::size_t threads = 0;
};

/// Ensemble statistics of the correct-hypothesis posterior for one
/// (strategy, alpha, correct label) cell, on the full grid including t=0.
struct CellStats {
  std::string strategy;
  double alpha = 0.0;
  std::size_t label = 0;
  std::vector<double> mean;
  std::vector<double> stddev;
  std::vector<double> stderr_;
  std::optional<double> time_to_threshold;
  double map_success_rate = 0.0;
  std::size_t n_runs = 0;
};

struct EnsembleResult {
  std::vector<double> times;
  double threshold = 0.5;
  std::vector<CellStats> cells;

  const CellStats* find(const std::string& strategy, double alpha,
                        std::size_t label) const;
};

/// Runs n_runs independent trajectories per cell (in parallel) and reduces
/// them in fixed trajectory order, so the result is a pure function of the
/// config and master seed.
EnsembleResult run_ensemble(const ExperimentConfig& config);

/// First grid time at which the mean curve reaches the threshold.
std::optional<double> time_to_threshold(const std::vector<double>& times,
                                        const std::vector<double>& mean_curve,
                                        double threshold);

/// Per-(strategy, alpha, time) summary with the correct-state average taken
/// over every label present in the result.
struct StateAveragedStats {
  std::string strategy;
  double alpha = 0.0;
  double time = 0.0;
  double mean = 0.0;
  /// Run-level standard deviation pooled across labels.
  double run_std = 0.0;
  /// Standard deviation of the per-label means.
  double state_std = 0.0;
  /// run_std / sqrt(total runs).
  double stderr_ = 0.0;
};

std::vector<StateAveragedStats> average_over_correct_states(
    const EnsembleResult& result, const std::vector<double>& times);

/// Convenience wrapper: run the config (mode must be Average) and reduce.
std::vector<StateAveragedStats> average_over_correct_states(
    const ExperimentConfig& config, const std::vector<double>& times);

/// Success probability of the two-hypothesis likelihood-ratio test at the
/// horizon, (Pr(ln L > 0 | +) + Pr(ln L < 0 | -))/2, estimated over n_runs
/// per branch. An exact ratio of one counts as half a success, matching
/// the expected value of a coin-flip decision.
struct PcEstimate {
  double p_c = 0.0;
  double stderr_ = 0.0;
  std::size_t n_runs = 0;  // per branch
};

PcEstimate success_probability_n2(const Constellation& c,
                                  const Strategy& strategy, double alpha,
                                  const TimeGrid& grid, std::size_t n_runs,
                                  std::uint64_t seed, std::size_t threads = 0);

/// Heterodyne-rate sweep: the base config's strategy list is replaced by
/// one heterodyne entry per rate; rows report the correct-state posterior
/// statistics at each requested time.
struct SweepRow {
  double omega = 0.0;
  double time = 0.0;
  double mean = 0.0;
  double stddev = 0.0;
  double stderr_ = 0.0;
};

std::vector<SweepRow> heterodyne_rate_sweep(const ExperimentConfig& base,
                                            const std::vector<double>& rates,
                                            const std::vector<double>& times);

}  // namespace phasedisc
