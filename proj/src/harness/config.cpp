#include <charconv>
#include <fstream>

#include "convexlab/error.hpp"
#include "convexlab/harness.hpp"
#include "convexlab/parallel.hpp"

namespace convexlab::harness {

using nlohmann::json;

namespace {

std::vector<std::string> split_path(const std::string& key) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t dot = key.find('.', start);
    parts.push_back(key.substr(start, dot - start));
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  for (const auto& p : parts) {
    if (p.empty()) throw ConfigError("malformed key '" + key + "'");
  }
  return parts;
}

std::uint64_t parse_seed(const std::string& text, const std::string& source) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(source + " is not an unsigned 64-bit integer: '" + text + "'");
  }
  return value;
}

void validate(const ExperimentConfig& cfg) {
  const json& s = cfg.settings;
  if (!s.is_object()) throw ConfigError("the config must be a JSON object");
  auto positive_int = [&](const char* key) {
    if (!s.contains(key)) return;
    if (!s[key].is_number_integer() || s[key].get<long long>() < 1) {
      throw ConfigError(std::string("\"") + key + "\" must be a positive integer");
    }
  };
  positive_int("trials");
  positive_int("n");
  positive_int("N");
  positive_int("samples");
  positive_int("directions");
  if (s.contains("beta")) {
    const double beta = s["beta"].get<double>();
    if (!(beta > 0.0 && beta < 1.0)) throw ConfigError("\"beta\" must lie in (0, 1)");
  }
  if (s.contains("alpha") && !(s["alpha"].get<double>() > 0.0)) throw ConfigError("\"alpha\" must be positive");
  if (s.contains("N_list")) {
    const json& list = s["N_list"];
    if (!list.is_array() || list.empty()) throw ConfigError("\"N_list\" must be a nonempty array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (!list[i].is_number_integer() || list[i].get<long long>() < 1) {
        throw ConfigError("\"N_list\" entries must be positive integers");
      }
      if (i > 0 && list[i].get<long long>() <= list[i - 1].get<long long>()) {
        throw ConfigError("\"N_list\" must be strictly increasing");
      }
    }
  }
  if (s.contains("body") && s["body"].is_object() && s["body"].contains("dim") && s.contains("n") &&
      s["body"]["dim"] != s["n"]) {
    throw ConfigError("\"n\" disagrees with the body's \"dim\"");
  }
  if (cfg.workers < 1) throw ConfigError("workers must be at least 1");
}

}  // namespace

const json* ExperimentConfig::find(const std::string& key) const {
  const json* node = &settings;
  for (const auto& part : split_path(key)) {
    if (!node->is_object() || !node->contains(part)) return nullptr;
    node = &(*node)[part];
  }
  return node;
}

json ExperimentConfig::replay_config() const { return settings; }

void apply_override(json& settings, const std::string& assignment) {
  const std::size_t eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("override '" + assignment + "' is not key=value");
  const std::string text = assignment.substr(eq + 1);
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;

  json* node = &settings;
  const auto parts = split_path(assignment.substr(0, eq));
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    json& child = (*node)[parts[i]];
    if (child.is_null()) child = json::object();
    if (!child.is_object()) throw ConfigError("override '" + assignment + "' descends into a non-object");
    node = &child;
  }
  (*node)[parts.back()] = std::move(value);
}

ExperimentConfig load_config(const LoadOptions& options) {
  ExperimentConfig cfg;
  if (options.config_path) {
    std::ifstream in(*options.config_path);
    if (!in) throw ConfigError("cannot open '" + options.config_path->string() + "'");
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw ConfigError("'" + options.config_path->string() + "' is not valid JSON");
    cfg.settings = is_manifest(j) ? j.at("config") : std::move(j);
    if (!cfg.settings.is_object()) throw ConfigError("the config must be a JSON object");
  }
  for (const auto& o : options.overrides) apply_override(cfg.settings, o);

  if (options.seed) {
    cfg.master_seed = *options.seed;
  } else if (cfg.settings.contains("seed")) {
    const json& s = cfg.settings["seed"];
    if (s.is_number_unsigned()) {
      cfg.master_seed = s.get<std::uint64_t>();
    } else if (s.is_number_integer() && s.get<long long>() >= 0) {
      cfg.master_seed = static_cast<std::uint64_t>(s.get<long long>());
    } else if (s.is_string()) {
      cfg.master_seed = parse_seed(s.get<std::string>(), "\"seed\"");
    } else {
      throw ConfigError("\"seed\" must be a nonnegative integer");
    }
  } else if (options.env_seed && !options.env_seed->empty()) {
    cfg.master_seed = parse_seed(*options.env_seed, "CONVEXLAB_SEED");
  }
  cfg.settings["seed"] = cfg.master_seed;

  if (options.workers) {
    cfg.workers = *options.workers;
  } else if (cfg.settings.contains("workers")) {
    cfg.workers = cfg.settings["workers"].get<int>();
  } else {
    cfg.workers = default_workers();
  }
  if (options.out_dir) {
    cfg.out_dir = *options.out_dir;
  } else if (cfg.settings.contains("out")) {
    cfg.out_dir = cfg.settings["out"].get<std::string>();
  }
  cfg.settings.erase("workers");
  cfg.settings.erase("out");
  validate(cfg);
  return cfg;
}

}  // namespace convexlab::harness
