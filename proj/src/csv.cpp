#include "phasedisc/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace phasedisc {

namespace {

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // '\n' endings everywhere
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

void group_mean_curve(const EnsembleResult& result,
                      const std::string& strategy, double alpha,
                      std::vector<double>& curve) {
  curve.assign(result.times.size(), 0.0);
  std::size_t members = 0;
  for (const CellStats& c : result.cells) {
    if (c.strategy != strategy || c.alpha != alpha) continue;
    for (std::size_t k = 0; k < curve.size(); ++k) curve[k] += c.mean[k];
    ++members;
  }
  for (double& x : curve) x /= static_cast<double>(members);
}

}  // namespace

std::string format_csv_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", value);
  return buf;
}

void write_curves_csv(const std::string& path, const EnsembleResult& result,
                      const Constellation& constellation) {
  std::ofstream out = open_output(path);
  out << "strategy,alpha,label,t,mean,std,stderr\n";
  for (const CellStats& cell : result.cells) {
    const std::string label = constellation.label_string(cell.label);
    for (std::size_t k = 0; k < result.times.size(); ++k) {
      out << cell.strategy << ',' << format_csv_number(cell.alpha) << ','
          << label << ',' << format_csv_number(result.times[k]) << ','
          << format_csv_number(cell.mean[k]) << ','
          << format_csv_number(cell.stddev[k]) << ','
          << format_csv_number(cell.stderr_[k]) << '\n';
    }
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_summary_csv(const std::string& path, const EnsembleResult& result,
                       const std::vector<double>& times) {
  const std::vector<StateAveragedStats> rows =
      average_over_correct_states(result, times);
  std::ofstream out = open_output(path);
  out << "strategy,alpha,time,mean,std,stderr,time_to_threshold\n";
  std::vector<double> curve;
  for (const StateAveragedStats& row : rows) {
    group_mean_curve(result, row.strategy, row.alpha, curve);
    const std::optional<double> ttt =
        time_to_threshold(result.times, curve, result.threshold);
    out << row.strategy << ',' << format_csv_number(row.alpha) << ','
        << format_csv_number(row.time) << ',' << format_csv_number(row.mean)
        << ',' << format_csv_number(row.run_std) << ','
        << format_csv_number(row.stderr_) << ','
        << (ttt ? format_csv_number(*ttt) : std::string("not_reached"))
        << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_sweep_csv(const std::string& path,
                     const std::vector<SweepRow>& rows) {
  std::ofstream out = open_output(path);
  out << "omega,time,mean,std,stderr\n";
  for (const SweepRow& row : rows) {
    out << format_csv_number(row.omega) << ',' << format_csv_number(row.time)
        << ',' << format_csv_number(row.mean) << ','
        << format_csv_number(row.stddev) << ','
        << format_csv_number(row.stderr_) << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_trajectory_csv(const std::string& path,
                          const TrajectoryRecord& record) {
  std::ofstream out = open_output(path);
  out << "step,t,lo_phase,increment,posterior_correct\n";
  for (std::size_t k = 0; k < record.increments.size(); ++k) {
    out << k << ',' << format_csv_number(record.grid.time_at(k)) << ','
        << format_csv_number(record.lo_phases[k]) << ','
        << format_csv_number(record.increments[k]) << ',';
    if (k + 1 < record.posterior_correct.size()) {
      out << format_csv_number(record.posterior_correct[k + 1]);
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  return -1;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open CSV: " + path);
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::istringstream row(line);
    std::string field;
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (line.back() == ',') fields.push_back("");
    if (first) {
      table.header = std::move(fields);
      first = false;
    } else {
      table.rows.push_back(std::move(fields));
    }
  }
  return table;
}

}  // namespace phasedisc
