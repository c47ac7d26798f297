#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "convexlab/error.hpp"
#include "convexlab/harness.hpp"

using namespace convexlab;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("convexlab-test-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

int run_cli(const std::string& args) {
  const std::string cmd = std::string(CONVEXLAB_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// trials.csv without the elapsed_ms column.
std::vector<std::string> trial_rows(const fs::path& csv) {
  std::vector<std::string> rows;
  std::istringstream in(slurp(csv));
  for (std::string line; std::getline(in, line);) rows.push_back(line.substr(0, line.rfind(',')));
  return rows;
}

harness::ExperimentConfig config_from(const json& settings, const fs::path& out, int workers = 1) {
  const fs::path path = out / "input.json";
  write(path, settings.dump());
  harness::LoadOptions opt;
  opt.config_path = path;
  opt.out_dir = out;
  opt.workers = workers;
  return harness::load_config(opt);
}

}  // namespace

TEST_CASE("overrides") {
  json s = {{"body", {{"type", "cube"}, {"dim", 3}}}, {"trials", 5}};
  harness::apply_override(s, "body.type=simplex");
  harness::apply_override(s, "trials=12");
  harness::apply_override(s, "constants.C_hat=2.5");
  harness::apply_override(s, "N_list=[10,20]");
  CHECK(s["body"]["type"] == "simplex");
  CHECK(s["trials"] == 12);
  CHECK(s["constants"]["C_hat"] == 2.5);
  CHECK(s["N_list"] == json::array({10, 20}));
  CHECK_THROWS_AS(harness::apply_override(s, "trials"), ConfigError);
  CHECK_THROWS_AS(harness::apply_override(s, "trials.x=1"), ConfigError);
}

TEST_CASE("seed precedence") {
  harness::LoadOptions opt;
  opt.overrides = {"n=2"};
  opt.env_seed = "99";
  CHECK(harness::load_config(opt).master_seed == 99);
  opt.overrides.push_back("seed=7");
  CHECK(harness::load_config(opt).master_seed == 7);
  opt.seed = 3;
  const auto cfg = harness::load_config(opt);
  CHECK(cfg.master_seed == 3);
  CHECK(cfg.settings["seed"] == 3);
  opt = {};
  opt.env_seed = "not-a-number";
  CHECK_THROWS_AS(harness::load_config(opt), ConfigError);
}

TEST_CASE("config validation") {
  const auto bad = [](const std::string& o) {
    harness::LoadOptions opt;
    opt.overrides = {o};
    CHECK_THROWS_AS(harness::load_config(opt), ConfigError);
  };
  bad("beta=1.5");
  bad("alpha=-1");
  bad("trials=0");
  bad("N_list=[40,20]");
  bad("N_list=[]");
  harness::LoadOptions opt;
  opt.overrides = {"n=3", "body={\"type\":\"cube\",\"dim\":4}"};
  CHECK_THROWS_AS(harness::load_config(opt), ConfigError);
}

TEST_CASE("config hash is canonical") {
  const json a = json::parse(R"({"b": 1, "a": [1, 2]})");
  const json b = json::parse(R"({"a": [1, 2], "b": 1})");
  CHECK(harness::config_hash(a) == harness::config_hash(b));
  CHECK(harness::config_hash(a) != harness::config_hash(json::parse(R"({"a": [2, 1], "b": 1})")));
}

TEST_CASE("command line exit codes") {
  const fs::path out = scratch("cli");
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("nonsense") == 2);
  CHECK(run_cli("bound --out " + out.string() + " --set beta=2") == 2);
  CHECK(run_cli("centroid --out " + out.string() + " --set q_list=[]") == 2);
  write(out / "broken.json", "{ not json");
  CHECK(run_cli("bound --config " + (out / "broken.json").string()) == 2);
  CHECK(run_cli("bound --out " + out.string() + " --set N=50 --set n=2 --set q=2 --set C_hat=4") == 0);
  CHECK(slurp(out / "bound.csv").find("50,2,2,4,4.70599428893535") != std::string::npos);
  const json manifest = json::parse(slurp(out / "manifest.json"));
  CHECK(manifest["command"] == "bound");
  CHECK(manifest["manifest_version"] == 1);
}

TEST_CASE("sample output depends only on the seed") {
  const fs::path a = scratch("sample-a");
  const fs::path b = scratch("sample-b");
  const json s = {{"body", "simplex"}, {"n", 3}, {"N", 500}, {"seed", 17}};
  std::ostringstream log;
  harness::run_command("sample", config_from(s, a, 1), log);
  const auto mb = harness::run_command("sample", config_from(s, b, 3), log);
  CHECK(slurp(a / "samples.csv") == slurp(b / "samples.csv"));
  CHECK(mb.workers == 3);
  const json ja = json::parse(slurp(a / "manifest.json"));
  const json jb = json::parse(slurp(b / "manifest.json"));
  CHECK(ja["config_hash"] == jb["config_hash"]);
  CHECK(ja["config"] == jb["config"]);
}

TEST_CASE("a manifest replays to identical trial rows") {
  const fs::path first = scratch("replay-1");
  const fs::path second = scratch("replay-2");
  const json s = {{"body", "cube"}, {"n", 3}, {"trials", 12}, {"seed", 2024}, {"reference_samples", 4000}};
  std::ostringstream log;
  const auto m1 = harness::run_command("theorem11", config_from(s, first, 1), log);
  CHECK(m1.trial_seeds.size() == 12);

  harness::LoadOptions opt;
  opt.config_path = first / "manifest.json";
  opt.out_dir = second;
  opt.workers = 4;
  const auto replay = harness::load_config(opt);
  CHECK(replay.master_seed == 2024);
  const auto m2 = harness::run_command("theorem11", replay, log);
  CHECK(m2.trial_seeds == m1.trial_seeds);
  CHECK(m2.config_hash == m1.config_hash);
  const auto rows1 = trial_rows(first / "trials.csv");
  CHECK(rows1.size() == 13);
  CHECK(rows1 == trial_rows(second / "trials.csv"));
}
