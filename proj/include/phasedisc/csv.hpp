#pragma once

#include <string>
#include <vector>

#include "phasedisc/experiments.hpp"
#include "phasedisc/signal.hpp"

namespace phasedisc {

/// Per-cell posterior curves:
///   strategy,alpha,label,t,mean,std,stderr
void write_curves_csv(const std::string& path, const EnsembleResult& result,
                      const Constellation& constellation);

/// One row per (strategy, alpha, summary time):
///   strategy,alpha,time,mean,std,stderr,time_to_threshold
/// The mean is averaged over the correct states present in the result;
/// time_to_threshold refers to that averaged curve ("not_reached" when the
/// curve stays below threshold).
void write_summary_csv(const std::string& path, const EnsembleResult& result,
                       const std::vector<double>& times);

/// Heterodyne-rate sweep rows: omega,time,mean,std,stderr
void write_sweep_csv(const std::string& path,
                     const std::vector<SweepRow>& rows);

/// Single-trajectory dump: step,t,lo_phase,increment,posterior_correct
void write_trajectory_csv(const std::string& path,
                          const TrajectoryRecord& record);

/// Minimal reader for the files written above (no quoting, '.' decimals).
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index by name; -1 when absent.
  int column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);

/// Fixed-format float used in every CSV cell (round-trips doubles).
std::string format_csv_number(double value);

}  // namespace phasedisc
