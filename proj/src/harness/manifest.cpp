#include "convexlab/harness.hpp"

namespace convexlab::harness {

std::uint64_t config_hash(const nlohmann::json& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : config.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

nlohmann::json to_json(const RunManifest& m) {
  return {{"manifest_version", 1},
          {"command", m.command},
          {"config", m.config},
          {"config_hash", m.config_hash},
          {"version", m.version},
          {"trial_seeds", m.trial_seeds},
          {"wall_clock_ms", m.wall_clock_ms},
          {"workers", m.workers},
          {"outputs", m.outputs}};
}

bool is_manifest(const nlohmann::json& j) {
  return j.is_object() && j.contains("manifest_version") && j.contains("config");
}

}  // namespace convexlab::harness
