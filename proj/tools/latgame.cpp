// latgame <mode> --config <path> [--out <dir>] [--workers N]
//
// Exit status: 0 success, 1 configuration or usage error, 2 verification
// failure, 3 runtime or I/O error.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "latgame/error.hpp"
#include "latgame/harness/config.hpp"
#include "latgame/harness/experiment.hpp"

namespace lh = latgame::harness;

int main(int argc, char** argv) {
  CLI::App app{"Best-response dynamics on periodic lattices: simulation and verification"};
  std::string mode_name;
  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<int> workers;
  app.add_option("mode", mode_name, "simulate | meanfield | bootstrap | reduce | verify | figure1")->required();
  app.add_option("--config,-c", config_path, "key = value configuration file")->required();
  app.add_option("--out,-o", out_dir, "output directory (overrides output_dir)");
  app.add_option("--workers,-j", workers, "replica threads (overrides workers)")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const auto mode = lh::parse_mode(mode_name);
  if (!mode) {
    std::cerr << "latgame: unknown mode '" << mode_name << "'\n";
    return 1;
  }

  lh::ExperimentConfig cfg;
  try {
    cfg = lh::load_config(config_path, mode);
    lh::apply_environment(cfg);
  } catch (const latgame::ParseError& e) {
    std::cerr << "latgame: " << config_path << ": " << e.what() << "\n";
    return 1;
  } catch (const latgame::Error& e) {
    std::cerr << "latgame: " << e.what() << "\n";
    return 1;
  }
  if (out_dir)
    cfg.output_dir = *out_dir;
  if (workers)
    cfg.workers = *workers;

  try {
    const lh::RunManifest manifest = lh::run_experiment(cfg);
    for (const auto& [k, v] : manifest.results)
      std::cout << k << " = " << v << "\n";
    std::cout << "wrote " << manifest.artifacts.size() << " artifacts to " << cfg.output_dir << "\n";
    return manifest.verification_failed ? 2 : 0;
  } catch (const latgame::InvalidInput& e) {
    std::cerr << "latgame: invalid input: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "latgame: " << e.what() << "\n";
    return 3;
  }
}
