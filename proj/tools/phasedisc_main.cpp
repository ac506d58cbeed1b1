// Command-line front end for the phase-discrimination Monte Carlo library.
//
// Subcommands:
//   constellation  validate a hypothesis set and print it
//   run            ensemble simulation -> curves.csv, summary.csv, manifest
//   sweep          heterodyne rate sweep -> sweep.csv, manifest
//   plot           render a results CSV as an SVG line chart
//
// Exit codes: 0 success, 1 config/usage error, 2 uniqueness violation
// (constellation only), 3 I/O failure during a run.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "phasedisc/angles.hpp"
#include "phasedisc/config.hpp"
#include "phasedisc/csv.hpp"
#include "phasedisc/manifest.hpp"
#include "phasedisc/svg.hpp"

namespace fs = std::filesystem;
using namespace phasedisc;

namespace {

struct CommonFlags {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::size_t threads = 0;
  double dt = 0.0;
  double horizon = 0.0;
};

std::size_t threads_from_env() {
  if (const char* env = std::getenv("PHASEDISCRIM_THREADS")) {
    const long value = std::atol(env);
    if (value > 0) return static_cast<std::size_t>(value);
  }
  return 0;
}

void apply_overrides(const CommonFlags& flags, const RawConfig& raw,
                     ExperimentConfig& config) {
  if (flags.seed_set) config.master_seed = flags.seed;
  config.threads = flags.threads ? flags.threads : threads_from_env();
  if (config.threads == 0) {
    config.threads = std::max(1u, std::thread::hardware_concurrency());
  }
  double dt = flags.dt > 0.0 ? flags.dt : config.grid.dt;
  double horizon = flags.horizon > 0.0 ? flags.horizon : config.grid.horizon;
  config.grid = TimeGrid(dt, horizon);
  (void)raw;
}

/// Deletes everything this invocation managed to write.
class OutputTracker {
 public:
  std::string track(const std::string& path) {
    paths_.push_back(path);
    return path;
  }
  void discard_all() {
    std::error_code ec;
    for (const std::string& p : paths_) fs::remove(p, ec);
  }
  /// Result files only: everything tracked except the manifest itself.
  std::vector<std::string> results(const std::string& manifest_path) const {
    std::vector<std::string> out;
    for (const std::string& p : paths_) {
      if (p != manifest_path) out.push_back(p);
    }
    return out;
  }

 private:
  std::vector<std::string> paths_;
};

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

/// A cycling rate near pi per step aliases instead of sampling all
/// quadratures; flag it rather than silently producing junk.
void warn_if_undersampled(double rate, double dt) {
  if (rate * dt > 0.5 * kPi) {
    std::fprintf(stderr,
                 "warning: heterodyne rate %.6g advances %.2f rad per step at "
                 "dt=%.3g; decrease dt to resolve the cycling\n",
                 rate, rate * dt, dt);
  }
}

int cmd_constellation(const std::string& config_path, double tol) {
  RawConfig raw = parse_config_file(config_path);
  Constellation c = constellation_from_config(raw);
  const UniquenessReport report = validate_unique(c, tol);

  std::printf("constellation: %zu qubits, %zu phases, amplitude %.6g\n",
              c.n_qubits(), c.size(), c.amplitude);
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::printf("  %3zu  %s  % .12f rad  (%.6g pi)\n", i,
                c.label_string(i).c_str(), c.phases[i], c.phases[i] / kPi);
  }
  if (report.ok) {
    std::printf("uniqueness: ok (all pairwise gaps > %.3g rad mod 2pi)\n",
                report.tolerance);
    return 0;
  }
  std::printf("uniqueness: VIOLATION (%zu colliding pairs)\n",
              report.collisions.size());
  for (const auto& [i, j] : report.collisions) {
    std::printf("  labels %s and %s both map to % .12f rad\n",
                c.label_string(i).c_str(), c.label_string(j).c_str(),
                c.phases[i]);
  }
  return 2;
}

int cmd_run(const CommonFlags& flags, bool dump_trajectory) {
  RawConfig raw = parse_config_file(flags.config_path);
  ExperimentConfig config = experiment_from_config(raw);
  apply_overrides(flags, raw, config);
  if (config.strategies.empty()) {
    throw ConfigError("no strategies configured in [strategies]");
  }
  const UniquenessReport unique = validate_unique(config.constellation);
  if (!unique.ok) {
    throw ConfigError(
        "constellation has colliding phases; run `constellation` for details");
  }
  for (const NamedStrategy& s : config.strategies) {
    validate_strategy(s.strategy, config.constellation);
    if (const auto* h = std::get_if<Heterodyne>(&s.strategy)) {
      warn_if_undersampled(h->rate, config.grid.dt);
    }
  }
  const std::vector<double> times =
      summary_times_from_config(raw, config.grid);

  OutputTracker outputs;
  std::error_code ec;
  fs::create_directories(flags.out_dir, ec);
  if (ec) {
    std::fprintf(stderr, "error: cannot create output directory %s\n",
                 flags.out_dir.c_str());
    return 3;
  }

  RunManifest manifest;
  manifest.config_checksum = config_checksum(raw);
  manifest.master_seed = config.master_seed;
  manifest.threads = config.threads;
  const std::string manifest_path =
      (fs::path(flags.out_dir) / "manifest.json").string();

  try {
    outputs.track(manifest_path);
    write_manifest(manifest_path, manifest);

    const auto start = std::chrono::steady_clock::now();
    const EnsembleResult result = run_ensemble(config);
    manifest.timings_ms["ensemble"] = ms_since(start);
    std::fprintf(stderr, "ran %zu cells x %zu runs\n", result.cells.size(),
                 config.n_runs);

    const auto write_start = std::chrono::steady_clock::now();
    const std::string curves_path =
        outputs.track((fs::path(flags.out_dir) / "curves.csv").string());
    write_curves_csv(curves_path, result, config.constellation);
    const std::string summary_path =
        outputs.track((fs::path(flags.out_dir) / "summary.csv").string());
    write_summary_csv(summary_path, result, times);
    if (dump_trajectory) {
      const std::string traj_path =
          outputs.track((fs::path(flags.out_dir) / "trajectory.csv").string());
      const auto& first = config.strategies.front();
      const std::size_t label =
          config.correct.mode == CorrectState::Mode::Average
              ? 0
              : config.correct.label;
      const double alpha = config.alphas.empty()
                               ? config.constellation.amplitude
                               : config.alphas.front();
      auto [record, filter] = simulate_trajectory(
          config.constellation.with_amplitude(alpha), label, first.strategy,
          config.grid, config.master_seed, 0);
      write_trajectory_csv(traj_path, record);
    }
    manifest.timings_ms["write"] = ms_since(write_start);

    manifest.outputs = outputs.results(manifest_path);
    manifest.finished = true;
    write_manifest(manifest_path, manifest);
  } catch (const std::logic_error&) {
    outputs.discard_all();
    throw;  // config-induced; maps to exit 1
  } catch (const std::exception& e) {
    outputs.discard_all();
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}

int cmd_sweep(const CommonFlags& flags, const std::string& rates_arg) {
  RawConfig raw = parse_config_file(flags.config_path);
  ExperimentConfig config = experiment_from_config(raw);
  apply_overrides(flags, raw, config);
  const std::vector<double> rates = rates_arg.empty()
                                        ? sweep_rates_from_config(raw)
                                        : parse_angle_list(rates_arg);
  if (rates.empty()) throw ConfigError("no sweep rates given");
  for (double rate : rates) warn_if_undersampled(rate, config.grid.dt);
  const std::vector<double> times =
      summary_times_from_config(raw, config.grid);

  OutputTracker outputs;
  std::error_code ec;
  fs::create_directories(flags.out_dir, ec);
  if (ec) {
    std::fprintf(stderr, "error: cannot create output directory %s\n",
                 flags.out_dir.c_str());
    return 3;
  }

  RunManifest manifest;
  manifest.config_checksum = config_checksum(raw);
  manifest.master_seed = config.master_seed;
  manifest.threads = config.threads;
  const std::string manifest_path =
      (fs::path(flags.out_dir) / "manifest.json").string();
  try {
    outputs.track(manifest_path);
    write_manifest(manifest_path, manifest);

    const auto start = std::chrono::steady_clock::now();
    const std::vector<SweepRow> rows =
        heterodyne_rate_sweep(config, rates, times);
    manifest.timings_ms["sweep"] = ms_since(start);

    const std::string sweep_path =
        outputs.track((fs::path(flags.out_dir) / "sweep.csv").string());
    write_sweep_csv(sweep_path, rows);

    manifest.outputs = outputs.results(manifest_path);
    manifest.finished = true;
    write_manifest(manifest_path, manifest);
  } catch (const std::logic_error&) {
    outputs.discard_all();
    throw;
  } catch (const std::exception& e) {
    outputs.discard_all();
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}

std::map<std::string, std::vector<const std::vector<std::string>*>>
group_rows(const CsvTable& table, const std::vector<int>& key_columns) {
  std::map<std::string, std::vector<const std::vector<std::string>*>> groups;
  for (const auto& row : table.rows) {
    std::string key;
    for (int col : key_columns) {
      key += row.at(static_cast<std::size_t>(col));
      key += '|';
    }
    groups[key].push_back(&row);
  }
  return groups;
}

int cmd_plot(const std::string& csv_path, const std::string& style,
             std::string out_path) {
  const CsvTable table = read_csv(csv_path);
  if (table.rows.empty()) {
    std::fprintf(stderr, "error: %s has no data rows\n", csv_path.c_str());
    return 1;
  }
  if (out_path.empty()) {
    out_path = fs::path(csv_path).replace_extension(".svg").string();
  }

  const auto need = [&](const char* name) {
    const int col = table.column(name);
    if (col < 0) {
      throw ConfigError(std::string("CSV is missing column '") + name + "'");
    }
    return col;
  };

  PlotSpec spec;
  if (style == "time") {
    const int c_strategy = need("strategy");
    const int c_alpha = need("alpha");
    const int c_label = need("label");
    const int c_t = need("t");
    const int c_mean = need("mean");
    const int c_stderr = table.column("stderr");
    spec.title = "Correct-hypothesis posterior vs time";
    spec.x_label = "t";
    spec.y_label = "mean posterior";
    for (auto& [key, rows] :
         group_rows(table, {c_strategy, c_alpha, c_label})) {
      PlotSeries series;
      const auto& first = *rows.front();
      series.name = first[c_strategy] + " a=" + first[c_alpha] + " " +
                    first[c_label];
      for (const auto* row : rows) {
        PlotPoint p{std::stod((*row)[c_t]), std::stod((*row)[c_mean]), {}};
        if (c_stderr >= 0) p.yerr = std::stod((*row)[c_stderr]);
        series.points.push_back(p);
      }
      spec.series.push_back(std::move(series));
    }
  } else if (style == "snr") {
    const int c_strategy = need("strategy");
    const int c_alpha = need("alpha");
    const int c_time = need("time");
    const int c_mean = need("mean");
    const int c_stderr = table.column("stderr");
    spec.title = "Correct-hypothesis posterior vs probe magnitude";
    spec.x_label = "alpha";
    spec.y_label = "mean posterior";
    for (auto& [key, rows] : group_rows(table, {c_strategy, c_time})) {
      PlotSeries series;
      const auto& first = *rows.front();
      series.name = first[c_strategy] + " t=" + first[c_time];
      for (const auto* row : rows) {
        PlotPoint p{std::stod((*row)[c_alpha]), std::stod((*row)[c_mean]), {}};
        if (c_stderr >= 0) p.yerr = std::stod((*row)[c_stderr]);
        series.points.push_back(p);
      }
      spec.series.push_back(std::move(series));
    }
  } else if (style == "ttt") {
    const int c_strategy = need("strategy");
    const int c_alpha = need("alpha");
    const int c_ttt = need("time_to_threshold");
    spec.title = "Time to threshold vs probe magnitude";
    spec.x_label = "alpha";
    spec.y_label = "time to threshold";
    for (auto& [key, rows] : group_rows(table, {c_strategy})) {
      PlotSeries series;
      series.name = (*rows.front())[c_strategy];
      std::set<std::string> seen;
      for (const auto* row : rows) {
        const std::string& value = (*row)[c_ttt];
        if (value == "not_reached") continue;
        const std::string& alpha = (*row)[c_alpha];
        if (!seen.insert(alpha).second) continue;  // one point per alpha
        series.points.push_back({std::stod(alpha), std::stod(value), {}});
      }
      if (!series.points.empty()) spec.series.push_back(std::move(series));
    }
    if (spec.series.empty()) {
      std::fprintf(stderr, "error: no reached thresholds to plot\n");
      return 1;
    }
  } else {
    std::fprintf(stderr, "error: unknown plot style '%s'\n", style.c_str());
    return 1;
  }

  write_svg_chart(out_path, spec);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo phase discrimination for dispersive qubit readout"};
  app.require_subcommand(1);

  CommonFlags flags;
  double tol = 1e-9;
  bool dump_trajectory = false;
  std::string rates_arg;
  std::string plot_style = "time";
  std::string plot_out;

  auto* c_cmd = app.add_subcommand("constellation",
                                   "Validate and print the hypothesis set");
  c_cmd->add_option("config", flags.config_path, "config file")->required();
  c_cmd->add_option("--tol", tol, "uniqueness tolerance (rad)");

  auto* r_cmd = app.add_subcommand("run", "Run the configured ensembles");
  r_cmd->add_option("config", flags.config_path, "config file")->required();
  r_cmd->add_option("--out", flags.out_dir, "output directory")->required();
  r_cmd->add_option("--seed", flags.seed, "master seed override")
      ->each([&flags](const std::string&) { flags.seed_set = true; });
  r_cmd->add_option("--threads", flags.threads, "worker threads");
  r_cmd->add_option("--dt", flags.dt, "grid step override");
  r_cmd->add_option("--horizon", flags.horizon, "grid horizon override");
  r_cmd->add_flag("--dump-trajectory", dump_trajectory,
                  "also write one example trajectory.csv");

  auto* s_cmd = app.add_subcommand("sweep", "Heterodyne cycling-rate sweep");
  s_cmd->add_option("config", flags.config_path, "config file")->required();
  s_cmd->add_option("--out", flags.out_dir, "output directory")->required();
  s_cmd->add_option("--rates", rates_arg, "rate list (overrides [sweep])");
  s_cmd->add_option("--seed", flags.seed, "master seed override")
      ->each([&flags](const std::string&) { flags.seed_set = true; });
  s_cmd->add_option("--threads", flags.threads, "worker threads");
  s_cmd->add_option("--dt", flags.dt, "grid step override");
  s_cmd->add_option("--horizon", flags.horizon, "grid horizon override");

  auto* p_cmd = app.add_subcommand("plot", "Render a results CSV as SVG");
  std::string plot_csv;
  p_cmd->add_option("csv", plot_csv, "curves or summary CSV")->required();
  p_cmd->add_option("--style", plot_style, "time | snr | ttt");
  p_cmd->add_option("--out", plot_out, "output SVG path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (c_cmd->parsed()) return cmd_constellation(flags.config_path, tol);
    if (r_cmd->parsed()) return cmd_run(flags, dump_trajectory);
    if (s_cmd->parsed()) return cmd_sweep(flags, rates_arg);
    if (p_cmd->parsed()) return cmd_plot(plot_csv, plot_style, plot_out);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::out_of_range& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return p_cmd->parsed() ? 1 : 3;
  }
  return 0;
}
