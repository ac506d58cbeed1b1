#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "phasedisc/experiments.hpp"

namespace phasedisc {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ConfigEntry {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

/// Parsed sectioned config file. Sections and entries keep file order;
/// repeated keys are allowed (used for strategy lists and qubit triples).
struct RawConfig {
  std::vector<std::pair<std::string, std::vector<ConfigEntry>>> sections;

  bool has_section(const std::string& name) const;
  const std::vector<ConfigEntry>* section(const std::string& name) const;
  std::optional<std::string> get(const std::string& section,
                                 const std::string& key) const;
  std::vector<std::string> get_all(const std::string& section,
                                   const std::string& key) const;
};

RawConfig parse_config_text(const std::string& text);
RawConfig parse_config_file(const std::string& path);

/// Angles are plain numbers or rational multiples of pi:
/// "0.25", "pi", "-pi/2", "4pi/10", "100pi".
double parse_angle(const std::string& token);
double parse_number(const std::string& token);
std::vector<double> parse_angle_list(const std::string& text);
std::vector<double> parse_number_list(const std::string& text);

/// Builders from the [constellation], [grid], [strategies], [experiment]
/// and [sweep] sections. All throw ConfigError with a line reference.
Constellation constellation_from_config(const RawConfig& raw);
TimeGrid grid_from_config(const RawConfig& raw);

/// A bare `heterodyne = on` line picks a rate above the performance
/// plateau for the constellation size (100*pi up to 4 hypotheses,
/// 300*pi beyond); pass 0 hypotheses to require explicit rates.
std::vector<NamedStrategy> strategies_from_config(const RawConfig& raw,
                                                  std::size_t n_hypotheses = 0);
ExperimentConfig experiment_from_config(const RawConfig& raw);
std::vector<double> sweep_rates_from_config(const RawConfig& raw);

/// Times at which summary rows are emitted (defaults to the horizon).
std::vector<double> summary_times_from_config(const RawConfig& raw,
                                              const TimeGrid& grid);

/// Round-trippable [constellation] section for a built constellation.
std::string constellation_to_config(const Constellation& c);

/// FNV-1a over a canonical serialization: stable under section/key
/// reordering, comments, and whitespace.
std::uint64_t config_checksum(const RawConfig& raw);

}  // namespace phasedisc
