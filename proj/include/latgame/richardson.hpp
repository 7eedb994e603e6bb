#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "latgame/dynamics.hpp"
#include "latgame/field.hpp"
#include "latgame/game.hpp"

namespace latgame {

// Infected iff type 1 with at least one type-1 neighbor.
InfectionField richardson_init(const StrategyField& eta0);

struct GrowthPoint {
  double t = 0;
  double infected_fraction = 0;
};

struct RichardsonReport {
  InfectionField final;
  std::vector<GrowthPoint> series;
  bool saturated = false;  // no healthy site borders the infection
  std::optional<double> saturation_time;
  std::uint64_t events = 0;
  double end_time = 0;
};

// A healthy site with at least one infected neighbor becomes infected at rate
// one (not at a rate proportional to the number of infected neighbors).
RichardsonReport simulate_richardson(InfectionField pi0, double t_max, std::uint64_t seed,
                                     double record_every = 0);

struct DominationViolation {
  double time;
  Site site;
};

struct DominationReport {
  StrategyField final_strategy;
  InfectionField final_infection;
  std::uint64_t events = 0;
  std::uint64_t checks = 0;
  std::uint64_t violations = 0;
  std::optional<DominationViolation> first_violation;
  bool strategy_absorbed = false;
  std::optional<double> strategy_absorption_time;
  std::optional<double> all_one_time;
  double end_time = 0;
};

// Runs eta_t and pi_t on one shared clock set and checks infected subset of
// strategy-1 set after every ring. Requires a1 > (2d - 1) a2 > 0.
DominationReport check_richardson_domination(StrategyField eta0, GameParams params, double t_max,
                                             std::uint64_t seed);

}  // namespace latgame
