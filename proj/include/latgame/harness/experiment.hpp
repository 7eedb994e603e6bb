#pragma once

#include <string>

#include "latgame/dynamics.hpp"
#include "latgame/harness/config.hpp"
#include "latgame/harness/io.hpp"

namespace latgame::harness {

inline constexpr const char* kEngineVersion = "1.0.0";

enum class Outcome { AbsorbedMixed, AllOne, AllTwo, Undecided };

const char* to_string(Outcome outcome) noexcept;

// all-1 needs density exactly 1; absorbed-mixed needs an absorbing state with
// both strategies; an absorbing all-2 state is reported as all-2.
Outcome classify_outcome(const RunReport& report) noexcept;

// Dispatches on config.mode and writes every artifact plus manifest.txt into
// config.output_dir. Output bytes depend only on the config, never on workers.
RunManifest run_experiment(const ExperimentConfig& config);

}  // namespace latgame::harness
