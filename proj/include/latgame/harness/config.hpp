#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "latgame/dynamics.hpp"
#include "latgame/game.hpp"

namespace latgame::harness {

enum class Mode { Simulate, Meanfield, Bootstrap, Reduce, Verify, Figure1 };

std::optional<Mode> parse_mode(std::string_view name) noexcept;
const char* to_string(Mode mode) noexcept;

struct ExperimentConfig {
  Mode mode = Mode::Simulate;

  int d = 2;
  std::vector<int> sides;
  std::optional<PayoffMatrix> payoff;  // set when the four entries were given
  GameParams params;
  double p = 0;
  double t_max = 0;
  double record_every = 1.0;
  int seeds = 1;
  std::uint64_t master_seed = 0;
  std::optional<double> snapshot_every;
  std::string output_dir = "latgame-out";
  int workers = 1;
  Scheme scheme = Scheme::ActiveSet;
  std::optional<std::string> initial;  // checkpoint file replacing the product measure

  // bootstrap mode
  int m = 0;  // 0: use d
  std::vector<int> coarse_sides;
  std::vector<double> q_values;

  // meanfield mode
  double dt = 1e-3;

  // figure1 mode; empty means the default pair 0.15, 0.20
  std::vector<double> densities;

  // Every key = value pair as written, in file order.
  std::vector<std::pair<std::string, std::string>> entries;
};

// One `key = value` per line, `#` starts a comment. Unknown keys, duplicate
// keys, malformed values, odd side lengths, p outside [0, 1] and missing
// required keys raise ParseError carrying the offending line (0 for a missing key).
// If `mode` is given it takes precedence; a conflicting `mode` key is an error.
ExperimentConfig parse_config(std::string_view text, std::optional<Mode> mode = std::nullopt);

ExperimentConfig load_config(const std::filesystem::path& path, std::optional<Mode> mode = std::nullopt);

// LATGAME_SEED replaces master_seed when set.
void apply_environment(ExperimentConfig& config);

}  // namespace latgame::harness
