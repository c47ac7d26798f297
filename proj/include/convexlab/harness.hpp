#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace convexlab::harness {

// Settings of one run: defaults, then the config file (or the config
// embedded in a manifest), then --set overrides, then explicit flags.
struct ExperimentConfig {
  nlohmann::json settings = nlohmann::json::object();
  std::uint64_t master_seed = 0;
  int workers = 1;
  std::filesystem::path out_dir = "out";

  // Dotted-path lookup with a default.
  template <typename T>
  T get(const std::string& key, const T& fallback) const {
    const nlohmann::json* node = find(key);
    return node && !node->is_null() ? node->get<T>() : fallback;
  }
  bool has(const std::string& key) const { return find(key) != nullptr; }
  const nlohmann::json* find(const std::string& key) const;

  // The settings that determine data rows (seed included, workers and
  // output directory excluded).
  nlohmann::json replay_config() const;
};

struct LoadOptions {
  std::optional<std::filesystem::path> config_path;
  std::vector<std::string> overrides;  // "a.b=value"
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<std::filesystem::path> out_dir;
  // Used when neither --seed nor the config sets one.
  std::optional<std::string> env_seed;
};

ExperimentConfig load_config(const LoadOptions& options);
// Applies one "a.b.c=value" override; the value is parsed as JSON when it
// parses, else taken as a string.
void apply_override(nlohmann::json& settings, const std::string& assignment);

// FNV-1a over the canonical JSON dump.
std::uint64_t config_hash(const nlohmann::json& config);

struct RunManifest {
  std::string command;
  nlohmann::json config;
  std::uint64_t config_hash = 0;
  std::string version;
  std::vector<std::uint64_t> trial_seeds;
  double wall_clock_ms = 0.0;
  int workers = 1;
  std::vector<std::string> outputs;
};

nlohmann::json to_json(const RunManifest& m);
bool is_manifest(const nlohmann::json& j);

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"sample",   "isotropize", "mvee",   "centroid", "approx",
                                                 "theorem11", "theorem13", "vindex", "lemmas",   "bound"};
  return names;
}

// Runs one subcommand, writes its outputs plus manifest.json into
// cfg.out_dir, and prints a short summary to `log`.
RunManifest run_command(const std::string& command, const ExperimentConfig& cfg, std::ostream& log);

}  // namespace convexlab::harness
