#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace phasedisc {

inline constexpr const char* kToolVersion = "0.1.0";

/// Provenance record for one `run`/`sweep` invocation. Written with
/// finished=false before the simulation starts and finalized afterwards,
/// so half-written result directories are recognizable.
struct RunManifest {
  std::uint64_t config_checksum = 0;
  std::uint64_t master_seed = 0;
  std::string tool_version = kToolVersion;
  std::size_t threads = 0;
  std::vector<std::string> outputs;
  std::map<std::string, double> timings_ms;
  bool finished = false;
};

void write_manifest(const std::string& path, const RunManifest& manifest);
RunManifest read_manifest(const std::string& path);

}  // namespace phasedisc
