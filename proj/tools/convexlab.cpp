#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "convexlab/error.hpp"
#include "convexlab/harness.hpp"

namespace {

constexpr const char* kCommandHelp =
    "sample      uniform points of a body (samples.csv + samples.json)\n"
    "isotropize  isotropic position and L_K estimate (isotropize.json)\n"
    "mvee        minimum-volume enclosing ellipsoid (mvee.json)\n"
    "centroid    one- and two-sided L_q centroid support estimates (centroid.csv)\n"
    "approx      random-polytope containment trials at a given N (trials.csv)\n"
    "theorem11   containment trials at N = ceil(alpha n) with a c_required summary\n"
    "theorem13   containment trials over N_list with a median-trend summary\n"
    "vindex      vertex index certificates and lower ratio (vindex.csv)\n"
    "lemmas      centroid-body inequality checks (lemmas.jsonl)\n"
    "bound       union-bound failure probability calculator (bound.csv)";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random polytope approximation of convex bodies"};
  app.set_version_flag("--version", CONVEXLAB_VERSION);
  app.footer(kCommandHelp);

  std::string command;
  convexlab::harness::LoadOptions options;
  std::string config_path, out_dir;
  std::uint64_t seed = 0;
  int workers = 0;

  app.add_option("command", command, "Subcommand")
      ->required()
      ->check(CLI::IsMember(convexlab::harness::command_names()));
  app.add_option("--config", config_path, "JSON config or a run manifest to replay");
  app.add_option("--set", options.overrides, "Override a config key, e.g. --set body.type=simplex")
      ->allow_extra_args(false);
  auto* seed_opt = app.add_option("--seed", seed, "Master seed (falls back to CONVEXLAB_SEED)");
  auto* workers_opt = app.add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  auto* out_opt = app.add_option("--out", out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (!config_path.empty()) options.config_path = config_path;
  if (*seed_opt) options.seed = seed;
  if (*workers_opt) options.workers = workers;
  if (*out_opt) options.out_dir = out_dir;
  if (const char* env = std::getenv("CONVEXLAB_SEED")) options.env_seed = env;

  try {
    const auto cfg = convexlab::harness::load_config(options);
    const auto manifest = convexlab::harness::run_command(command, cfg, std::cerr);
    for (const auto& f : manifest.outputs) std::cout << (cfg.out_dir / f).string() << "\n";
  } catch (const convexlab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
