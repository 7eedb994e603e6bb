#pragma once

#include <optional>

#include "latgame/game.hpp"

namespace latgame::meanfield {

enum class RegimeKind { Strategy1Wins, Strategy2Wins, Coexistence, Bistable };

struct Regime {
  RegimeKind kind;
  std::optional<double> threshold;  // u* = a2 / (a1 + a2), only for Coexistence and Bistable
};

const char* to_string(RegimeKind kind) noexcept;

// Throws Unsupported if either parameter is zero.
Regime classify_regime(GameParams params);

// u1' = u2 1{a1 u1 > a2 u2} - u1 1{a1 u1 < a2 u2}; zero at an exact tie.
double drift(double u1, GameParams params) noexcept;

// Closed form. A growth branch follows 1 - (1 - u0) e^-t, a decay branch
// u0 e^-t. When the flow points into the threshold (both strategies
// altruistic) the trajectory reaches u* in finite time and stays there.
double exact_trajectory(double u0, GameParams params, double t);

// Fixed-step RK4 on the smooth vector field of the current side of the
// threshold, with bisection onto the threshold when a step would cross it.
double integrate_numeric(double u0, GameParams params, double t, double dt);

double long_time_limit(double u0, GameParams params);

}  // namespace latgame::meanfield
