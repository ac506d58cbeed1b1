#include "phasedisc/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "phasedisc/angles.hpp"

namespace phasedisc {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

[[noreturn]] void fail(std::size_t line, const std::string& message) {
  throw ConfigError("config line " + std::to_string(line) + ": " + message);
}

std::vector<std::string> split_list(const std::string& text) {
  std::string normalized = text;
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::istringstream in(normalized);
  std::vector<std::string> tokens;
  std::string token;
  while (in >> token) tokens.push_back(token);
  return tokens;
}

bool parse_bool(const std::string& value) {
  const std::string v = lower(trim(value));
  if (v == "on" || v == "true" || v == "1" || v == "yes" || v.empty()) {
    return true;
  }
  if (v == "off" || v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("expected a boolean, got '" + value + "'");
}

}  // namespace

bool RawConfig::has_section(const std::string& name) const {
  return section(name) != nullptr;
}

const std::vector<ConfigEntry>* RawConfig::section(
    const std::string& name) const {
  for (const auto& [section_name, entries] : sections) {
    if (section_name == name) return &entries;
  }
  return nullptr;
}

std::optional<std::string> RawConfig::get(const std::string& section_name,
                                          const std::string& key) const {
  const auto* entries = section(section_name);
  if (!entries) return std::nullopt;
  for (const ConfigEntry& e : *entries) {
    if (e.key == key) return e.value;
  }
  return std::nullopt;
}

std::vector<std::string> RawConfig::get_all(const std::string& section_name,
                                            const std::string& key) const {
  std::vector<std::string> values;
  if (const auto* entries = section(section_name)) {
    for (const ConfigEntry& e : *entries) {
      if (e.key == key) values.push_back(e.value);
    }
  }
  return values;
}

RawConfig parse_config_text(const std::string& text) {
  RawConfig raw;
  std::istringstream in(text);
  std::string line;
  std::size_t line_number = 0;
  std::vector<ConfigEntry>* current = nullptr;
  std::string current_name;
  while (std::getline(in, line)) {
    ++line_number;
    const std::size_t comment = line.find_first_of("#;");
    if (comment != std::string::npos) line.erase(comment);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    if (stripped.front() == '[') {
      if (stripped.back() != ']') fail(line_number, "unterminated section");
      current_name = lower(trim(stripped.substr(1, stripped.size() - 2)));
      if (current_name.empty()) fail(line_number, "empty section name");
      raw.sections.emplace_back(current_name, std::vector<ConfigEntry>{});
      current = &raw.sections.back().second;
      continue;
    }
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      fail(line_number, "expected 'key = value'");
    }
    if (!current) fail(line_number, "entry outside any [section]");
    ConfigEntry entry;
    entry.key = lower(trim(stripped.substr(0, eq)));
    entry.value = trim(stripped.substr(eq + 1));
    entry.line = line_number;
    if (entry.key.empty()) fail(line_number, "empty key");
    current->push_back(std::move(entry));
  }
  return raw;
}

RawConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

double parse_number(const std::string& token) {
  const std::string t = trim(token);
  if (t.empty()) throw ConfigError("empty number");
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(t, &consumed);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + token + "'");
  }
  if (consumed != t.size()) {
    throw ConfigError("trailing characters in number: '" + token + "'");
  }
  return value;
}

double parse_angle(const std::string& token) {
  const std::string t = lower(trim(token));
  const std::size_t pos = t.find("pi");
  if (pos == std::string::npos) return parse_number(t);

  const std::string prefix = t.substr(0, pos);
  double coefficient = 1.0;
  if (prefix == "-") {
    coefficient = -1.0;
  } else if (!prefix.empty() && prefix != "+") {
    coefficient = parse_number(prefix);
  }

  const std::string suffix = t.substr(pos + 2);
  double denominator = 1.0;
  if (!suffix.empty()) {
    if (suffix.front() != '/') {
      throw ConfigError("bad angle expression: '" + token + "'");
    }
    denominator = parse_number(suffix.substr(1));
    if (denominator == 0.0) {
      throw ConfigError("zero denominator in angle: '" + token + "'");
    }
  }
  return coefficient * kPi / denominator;
}

std::vector<double> parse_angle_list(const std::string& text) {
  std::vector<double> values;
  for (const std::string& token : split_list(text)) {
    values.push_back(parse_angle(token));
  }
  return values;
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> values;
  for (const std::string& token : split_list(text)) {
    values.push_back(parse_number(token));
  }
  return values;
}

Constellation constellation_from_config(const RawConfig& raw) {
  if (!raw.has_section("constellation")) {
    throw ConfigError("missing [constellation] section");
  }
  const auto pulls_value = raw.get("constellation", "pulls");
  const std::vector<std::string> qubits =
      raw.get_all("constellation", "qubit");
  if (pulls_value && !qubits.empty()) {
    throw ConfigError("[constellation] needs pulls or qubit lines, not both");
  }

  std::vector<double> pulls;
  if (pulls_value) {
    pulls = parse_angle_list(*pulls_value);
  } else {
    for (const std::string& triple : qubits) {
      const std::vector<double> gkd = parse_number_list(triple);
      if (gkd.size() != 3) {
        throw ConfigError("qubit line must be 'g kappa delta': '" + triple +
                          "'");
      }
      try {
        pulls.push_back(dispersive_pull(gkd[0], gkd[1], gkd[2]));
      } catch (const std::domain_error& e) {
        throw ConfigError(e.what());
      }
    }
  }
  if (pulls.empty()) {
    throw ConfigError("[constellation] defines no pulls");
  }

  double amplitude = 1.0;
  if (const auto a = raw.get("constellation", "amplitude")) {
    amplitude = parse_number(*a);
  }
  try {
    return build_constellation(pulls, amplitude);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

TimeGrid grid_from_config(const RawConfig& raw) {
  double dt = 1e-3;
  double horizon = 1.0;
  if (const auto v = raw.get("grid", "dt")) dt = parse_number(*v);
  if (const auto v = raw.get("grid", "horizon")) horizon = parse_number(*v);
  try {
    return TimeGrid(dt, horizon);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::vector<NamedStrategy> strategies_from_config(const RawConfig& raw,
                                                  std::size_t n_hypotheses) {
  std::vector<NamedStrategy> strategies;
  const auto* entries = raw.section("strategies");
  if (!entries) return strategies;
  for (const ConfigEntry& e : *entries) {
    try {
      if (e.key == "static") {
        strategies.push_back(
            {"static@" + e.value, StaticHomodyne{parse_angle(e.value)}});
      } else if (e.key == "heterodyne") {
        std::vector<std::string> tokens = split_list(e.value);
        if (tokens.size() == 1 &&
            (tokens[0] == "on" || tokens[0] == "true")) {
          tokens.clear();
        }
        if (tokens.size() > 2) {
          fail(e.line, "heterodyne takes 'rate [initial_phase]'");
        }
        Heterodyne h;
        std::string name;
        if (tokens.empty()) {
          if (n_hypotheses == 0) {
            fail(e.line, "heterodyne needs an explicit rate here");
          }
          h.rate = (n_hypotheses <= 4 ? 100.0 : 300.0) * kPi;
          name = n_hypotheses <= 4 ? "heterodyne@100pi" : "heterodyne@300pi";
        } else {
          h.rate = parse_angle(tokens[0]);
          name = "heterodyne@" + tokens[0];
          if (tokens.size() == 2) h.initial_phase = parse_angle(tokens[1]);
        }
        strategies.push_back({name, h});
      } else if (e.key == "adaptive") {
        if (parse_bool(e.value)) strategies.push_back({"adaptive", AdaptiveTopTwo{}});
      } else if (e.key == "optimal_two") {
        if (parse_bool(e.value)) {
          strategies.push_back({"optimal_two", OptimalTwoPhase{}});
        }
      } else {
        fail(e.line, "unknown strategy '" + e.key + "'");
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& ex) {
      fail(e.line, ex.what());
    }
  }
  return strategies;
}

ExperimentConfig experiment_from_config(const RawConfig& raw) {
  Constellation constellation = constellation_from_config(raw);
  std::vector<NamedStrategy> strategies =
      strategies_from_config(raw, constellation.size());
  ExperimentConfig config{std::move(constellation),
                          std::move(strategies),
                          {},
                          500,
                          grid_from_config(raw),
                          0,
                          {},
                          0.5,
                          0};

  if (const auto v = raw.get("experiment", "n_runs")) {
    const double n = parse_number(*v);
    if (n < 1 || n != std::floor(n)) {
      throw ConfigError("n_runs must be a positive integer");
    }
    config.n_runs = static_cast<std::size_t>(n);
  }
  if (const auto v = raw.get("experiment", "alphas")) {
    config.alphas = parse_number_list(*v);
    for (double a : config.alphas) {
      if (!(a >= 0.0)) throw ConfigError("alphas must be >= 0");
    }
  }
  if (const auto v = raw.get("experiment", "seed")) {
    try {
      config.master_seed = std::stoull(trim(*v));
    } catch (const std::exception&) {
      throw ConfigError("bad seed: '" + *v + "'");
    }
  }
  if (const auto v = raw.get("experiment", "threshold")) {
    config.threshold = parse_number(*v);
    if (!(config.threshold > 0.0 && config.threshold < 1.0)) {
      throw ConfigError("threshold must be in (0, 1)");
    }
  }
  if (const auto v = raw.get("experiment", "correct")) {
    const std::string mode = lower(trim(*v));
    if (mode == "average") {
      config.correct.mode = CorrectState::Mode::Average;
    } else if (mode == "smallest") {
      config.correct.mode = CorrectState::Mode::Fixed;
      config.correct.label =
          config.constellation.smallest_positive_phase_index();
    } else {
      const double index = parse_number(mode);
      if (index < 0 || index != std::floor(index) ||
          index >= static_cast<double>(config.constellation.size())) {
        throw ConfigError("correct must be 'average', 'smallest', or a label index");
      }
      config.correct.mode = CorrectState::Mode::Fixed;
      config.correct.label = static_cast<std::size_t>(index);
    }
  } else {
    config.correct.mode = CorrectState::Mode::Fixed;
    config.correct.label =
        config.constellation.smallest_positive_phase_index();
  }
  return config;
}

std::vector<double> sweep_rates_from_config(const RawConfig& raw) {
  const auto v = raw.get("sweep", "rates");
  if (!v) throw ConfigError("missing [sweep] rates");
  const std::vector<double> rates = parse_angle_list(*v);
  if (rates.empty()) throw ConfigError("[sweep] rates is empty");
  return rates;
}

std::vector<double> summary_times_from_config(const RawConfig& raw,
                                              const TimeGrid& grid) {
  if (const auto v = raw.get("experiment", "times")) {
    const std::vector<double> times = parse_number_list(*v);
    for (double t : times) {
      if (t < 0.0 || t > grid.horizon + 0.5 * grid.dt) {
        throw ConfigError("summary time outside the grid");
      }
    }
    return times;
  }
  return {grid.horizon};
}

std::string constellation_to_config(const Constellation& c) {
  std::ostringstream out;
  out << "[constellation]\npulls =";
  char buf[40];
  for (double pull : c.pulls) {
    std::snprintf(buf, sizeof(buf), " %.17g", pull);
    out << buf;
  }
  std::snprintf(buf, sizeof(buf), "%.17g", c.amplitude);
  out << "\namplitude = " << buf << "\n";
  return out.str();
}

std::uint64_t config_checksum(const RawConfig& raw) {
  // Canonical form: sections sorted by name, entries sorted by key with
  // repeated keys kept in file order, whitespace collapsed.
  std::vector<std::pair<std::string, std::vector<ConfigEntry>>> sections =
      raw.sections;
  std::sort(sections.begin(), sections.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::string canonical;
  for (auto& [name, entries] : sections) {
    std::stable_sort(entries.begin(), entries.end(),
                     [](const ConfigEntry& a, const ConfigEntry& b) {
                       return a.key < b.key;
                     });
    canonical += '[' + name + "]\n";
    for (const ConfigEntry& e : entries) {
      std::string value;
      for (const std::string& token : split_list(e.value)) {
        if (!value.empty()) value += ' ';
        value += token;
      }
      canonical += e.key + '=' + value + '\n';
    }
  }
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char byte : canonical) {
    hash ^= byte;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

}  // namespace phasedisc
