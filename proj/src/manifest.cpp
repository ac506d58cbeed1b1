#include "phasedisc/manifest.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace phasedisc {

void write_manifest(const std::string& path, const RunManifest& manifest) {
  nlohmann::json j;
  char checksum[20];
  std::snprintf(checksum, sizeof(checksum), "%016llx",
                static_cast<unsigned long long>(manifest.config_checksum));
  j["config_checksum"] = checksum;
  j["master_seed"] = manifest.master_seed;
  j["tool_version"] = manifest.tool_version;
  j["threads"] = manifest.threads;
  j["outputs"] = manifest.outputs;
  j["timings_ms"] = manifest.timings_ms;
  j["finished"] = manifest.finished;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write manifest: " + path);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("manifest write failed: " + path);
}

RunManifest read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read manifest: " + path);
  nlohmann::json j;
  in >> j;
  RunManifest manifest;
  manifest.config_checksum =
      std::stoull(j.at("config_checksum").get<std::string>(), nullptr, 16);
  manifest.master_seed = j.at("master_seed").get<std::uint64_t>();
  manifest.tool_version = j.at("tool_version").get<std::string>();
  manifest.threads = j.at("threads").get<std::size_t>();
  manifest.outputs = j.at("outputs").get<std::vector<std::string>>();
  manifest.timings_ms =
      j.at("timings_ms").get<std::map<std::string, double>>();
  manifest.finished = j.at("finished").get<bool>();
  return manifest;
}

}  // namespace phasedisc
