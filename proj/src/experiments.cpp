#include "phasedisc/experiments.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>

namespace phasedisc {

namespace {

std::size_t resolve_threads(std::size_t requested, std::size_t jobs) {
  std::size_t n = requested ? requested : std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  return std::min(n, jobs);
}

/// Runs fn(0..n-1) on a worker pool. Each index must write only to its own
/// slots; scheduling order carries no information.
void parallel_for(std::size_t n, std::size_t threads,
                  const std::function<void(std::size_t)>& fn) {
  threads = resolve_threads(threads, n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

struct CellJob {
  NamedStrategy strategy;
  double alpha = 0.0;
  std::size_t label = 0;
  std::uint64_t cell_index = 0;
};

CellStats run_cell(const ExperimentConfig& config, const CellJob& job) {
  const Constellation working = config.constellation.with_amplitude(job.alpha);
  validate_strategy(job.strategy.strategy, working);

  const std::size_t n = config.n_runs;
  const std::size_t points = config.grid.steps + 1;
  std::vector<std::vector<double>> curves(n);
  std::vector<unsigned char> map_hits(n, 0);

  parallel_for(n, config.threads, [&](std::size_t i) {
    const std::uint64_t stream = (job.cell_index << 32) | i;
    auto [record, filter] =
        simulate_trajectory(working, job.label, job.strategy.strategy,
                            config.grid, config.master_seed, stream);
    curves[i] = std::move(record.posterior_correct);
    map_hits[i] = filter.map_decision().index == job.label ? 1 : 0;
  });

  CellStats stats;
  stats.strategy = job.strategy.name;
  stats.alpha = job.alpha;
  stats.label = job.label;
  stats.n_runs = n;
  stats.mean.assign(points, 0.0);
  stats.stddev.assign(points, 0.0);
  stats.stderr_.assign(points, 0.0);

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < points; ++k) stats.mean[k] += curves[i][k];
  }
  for (double& m : stats.mean) m /= static_cast<double>(n);
  if (n > 1) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < points; ++k) {
        const double d = curves[i][k] - stats.mean[k];
        stats.stddev[k] += d * d;
      }
    }
    const double inv = 1.0 / static_cast<double>(n - 1);
    for (std::size_t k = 0; k < points; ++k) {
      stats.stddev[k] = std::sqrt(stats.stddev[k] * inv);
      stats.stderr_[k] = stats.stddev[k] / std::sqrt(static_cast<double>(n));
    }
  }

  std::size_t hits = 0;
  for (unsigned char h : map_hits) hits += h;
  stats.map_success_rate = static_cast<double>(hits) / static_cast<double>(n);
  return stats;
}

}  // namespace

const CellStats* EnsembleResult::find(const std::string& strategy,
                                      double alpha, std::size_t label) const {
  for (const CellStats& c : cells) {
    if (c.strategy == strategy && c.alpha == alpha && c.label == label) {
      return &c;
    }
  }
  return nullptr;
}

std::optional<double> time_to_threshold(const std::vector<double>& times,
                                        const std::vector<double>& mean_curve,
                                        double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw std::invalid_argument("time_to_threshold: threshold must be in (0,1)");
  }
  for (std::size_t k = 0; k < mean_curve.size(); ++k) {
    if (mean_curve[k] >= threshold) return times[k];
  }
  return std::nullopt;
}

EnsembleResult run_ensemble(const ExperimentConfig& config) {
  if (config.n_runs < 1) {
    throw std::invalid_argument("run_ensemble: n_runs must be >= 1");
  }
  if (config.strategies.empty()) {
    throw std::invalid_argument("run_ensemble: no strategies configured");
  }
  std::vector<double> alphas = config.alphas;
  if (alphas.empty()) alphas.push_back(config.constellation.amplitude);
  for (double a : alphas) {
    if (!(a >= 0.0)) {
      throw std::invalid_argument("run_ensemble: alphas must be >= 0");
    }
  }
  std::vector<std::size_t> labels;
  if (config.correct.mode == CorrectState::Mode::Average) {
    for (std::size_t l = 0; l < config.constellation.size(); ++l) {
      labels.push_back(l);
    }
  } else {
    if (config.correct.label >= config.constellation.size()) {
      throw std::out_of_range("run_ensemble: correct label out of range");
    }
    labels.push_back(config.correct.label);
  }

  EnsembleResult result;
  result.threshold = config.threshold;
  result.times.reserve(config.grid.steps + 1);
  for (std::size_t k = 0; k <= config.grid.steps; ++k) {
    result.times.push_back(config.grid.time_at(k));
  }

  std::uint64_t cell_index = 0;
  for (const NamedStrategy& strategy : config.strategies) {
    for (double alpha : alphas) {
      for (std::size_t label : labels) {
        CellJob job{strategy, alpha, label, cell_index++};
        CellStats stats = run_cell(config, job);
        stats.time_to_threshold =
            time_to_threshold(result.times, stats.mean, config.threshold);
        result.cells.push_back(std::move(stats));
      }
    }
  }
  return result;
}

std::vector<StateAveragedStats> average_over_correct_states(
    const EnsembleResult& result, const std::vector<double>& times) {
  // Group cells by (strategy, alpha) preserving first-seen order.
  std::vector<std::pair<std::string, double>> groups;
  for (const CellStats& c : result.cells) {
    const std::pair<std::string, double> key{c.strategy, c.alpha};
    if (std::find(groups.begin(), groups.end(), key) == groups.end()) {
      groups.push_back(key);
    }
  }

  std::vector<StateAveragedStats> rows;
  for (const auto& [strategy, alpha] : groups) {
    std::vector<const CellStats*> members;
    for (const CellStats& c : result.cells) {
      if (c.strategy == strategy && c.alpha == alpha) members.push_back(&c);
    }
    for (double time : times) {
      const auto it =
          std::min_element(result.times.begin(), result.times.end(),
                           [time](double a, double b) {
                             return std::abs(a - time) < std::abs(b - time);
                           });
      const std::size_t k = static_cast<std::size_t>(
          std::distance(result.times.begin(), it));

      StateAveragedStats row;
      row.strategy = strategy;
      row.alpha = alpha;
      row.time = result.times[k];

      const double label_count = static_cast<double>(members.size());
      for (const CellStats* c : members) row.mean += c->mean[k];
      row.mean /= label_count;

      // Total run-level variance around the grand mean, rebuilt from the
      // per-cell moments; and the spread of the per-label means.
      double ss_total = 0.0;
      double ss_between = 0.0;
      std::size_t n_total = 0;
      for (const CellStats* c : members) {
        const double n = static_cast<double>(c->n_runs);
        const double dm = c->mean[k] - row.mean;
        ss_total += (n - 1.0) * c->stddev[k] * c->stddev[k] + n * dm * dm;
        ss_between += dm * dm;
        n_total += c->n_runs;
      }
      if (n_total > 1) {
        row.run_std = std::sqrt(ss_total / static_cast<double>(n_total - 1));
        row.stderr_ = row.run_std / std::sqrt(static_cast<double>(n_total));
      }
      if (members.size() > 1) {
        row.state_std = std::sqrt(ss_between / (label_count - 1.0));
      }
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<StateAveragedStats> average_over_correct_states(
    const ExperimentConfig& config, const std::vector<double>& times) {
  if (config.correct.mode != CorrectState::Mode::Average) {
    throw std::invalid_argument(
        "average_over_correct_states: correct-state mode must be Average");
  }
  return average_over_correct_states(run_ensemble(config), times);
}

PcEstimate success_probability_n2(const Constellation& c,
                                  const Strategy& strategy, double alpha,
                                  const TimeGrid& grid, std::size_t n_runs,
                                  std::uint64_t seed, std::size_t threads) {
  if (c.size() != 2) {
    throw std::invalid_argument(
        "success_probability_n2: constellation must have exactly 2 hypotheses");
  }
  if (n_runs < 1) {
    throw std::invalid_argument("success_probability_n2: n_runs must be >= 1");
  }
  const Constellation working = c.with_amplitude(alpha);
  validate_strategy(strategy, working);

  SimOptions options;
  options.record_posterior = false;

  std::array<std::vector<double>, 2> outcomes;
  for (std::size_t label = 0; label < 2; ++label) {
    outcomes[label].assign(n_runs, 0.0);
    parallel_for(n_runs, threads, [&, label](std::size_t i) {
      const std::uint64_t stream =
          (static_cast<std::uint64_t>(label) << 32) | i;
      auto [record, filter] = simulate_trajectory(
          working, label, strategy, grid, seed, stream, options);
      const double llr = filter.log_likelihood_ratio();
      const double want_positive = label == 0 ? llr : -llr;
      outcomes[label][i] =
          want_positive > 0.0 ? 1.0 : (want_positive == 0.0 ? 0.5 : 0.0);
    });
  }

  PcEstimate estimate;
  estimate.n_runs = n_runs;
  double variance_sum = 0.0;
  for (const std::vector<double>& branch : outcomes) {
    double mean = 0.0;
    for (double x : branch) mean += x;
    mean /= static_cast<double>(n_runs);
    estimate.p_c += 0.5 * mean;
    if (n_runs > 1) {
      double ss = 0.0;
      for (double x : branch) ss += (x - mean) * (x - mean);
      variance_sum += ss / static_cast<double>(n_runs - 1) /
                      static_cast<double>(n_runs);
    }
  }
  estimate.stderr_ = 0.5 * std::sqrt(variance_sum);
  return estimate;
}

std::vector<SweepRow> heterodyne_rate_sweep(const ExperimentConfig& base,
                                            const std::vector<double>& rates,
                                            const std::vector<double>& times) {
  if (rates.empty()) {
    throw std::invalid_argument("heterodyne_rate_sweep: no rates given");
  }
  std::vector<SweepRow> rows;
  for (double rate : rates) {
    if (!(rate > 0.0)) {
      throw std::invalid_argument("heterodyne_rate_sweep: rates must be > 0");
    }
    ExperimentConfig config = base;
    config.strategies = {{strategy_name(Heterodyne{rate, 0.0}),
                          Heterodyne{rate, 0.0}}};
    const EnsembleResult result = run_ensemble(config);
    const std::vector<StateAveragedStats> summary =
        average_over_correct_states(result, times);
    for (const StateAveragedStats& s : summary) {
      rows.push_back({rate, s.time, s.mean, s.run_std, s.stderr_});
    }
  }
  return rows;
}

}  // namespace phasedisc
