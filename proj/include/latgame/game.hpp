#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "latgame/field.hpp"

namespace latgame {

// Payoff a_ij received by a strategy-i player from a strategy-j neighbor.
struct PayoffMatrix {
  double a11 = 0, a12 = 0, a21 = 0, a22 = 0;
};

// The two numbers the dynamics depends on: a1 = a11 - a21, a2 = a22 - a12.
struct GameParams {
  double a1 = 0;
  double a2 = 0;

  GameParams() = default;
  GameParams(double a1_, double a2_);  // throws InvalidInput on non-finite values

  // a1 > a2 > 0: the regime in which the growth-map machinery applies.
  bool strictly_ordered_selfish() const noexcept { return a1 > a2 && a2 > 0; }
  bool both_selfish() const noexcept { return a1 > 0 && a2 > 0; }
};

GameParams derive_params(const PayoffMatrix& payoff);

enum class StrategyClass { Selfish, Altruistic, Neutral };

std::pair<StrategyClass, StrategyClass> classify(GameParams params) noexcept;
const char* to_string(StrategyClass c) noexcept;

struct NeighborCounts {
  int n1 = 0;
  int n2 = 0;
};

NeighborCounts count_neighbors(const StrategyField& eta, Site x) noexcept;

struct Payoffs {
  double phi1 = 0;
  double phi2 = 0;
};

Payoffs payoff_landscape(const StrategyField& eta, const PayoffMatrix& payoff, Site x) noexcept;

// phi1 - phi2 = a1*N1 - a2*N2; all that can be recovered from the reduced params.
double payoff_difference(const StrategyField& eta, GameParams params, Site x) noexcept;

// The update rule. Comparison of a1*N1 against a2*N2 is exact: ties leave
// the site unchanged. Never returns the current strategy.
inline std::optional<Strategy> flip_target(GameParams params, NeighborCounts counts, Strategy current) noexcept {
  const double gain1 = params.a1 * counts.n1;
  const double gain2 = params.a2 * counts.n2;
  if (current == Strategy::Two && gain1 > gain2)
    return Strategy::One;
  if (current == Strategy::One && gain1 < gain2)
    return Strategy::Two;
  return std::nullopt;
}

std::optional<Strategy> flip_target(const StrategyField& eta, GameParams params, Site x) noexcept;

bool is_absorbing(const StrategyField& eta, GameParams params);

// Product measure: each site independently strategy 1 with probability p.
StrategyField random_field(GeometryPtr geometry, double p, std::uint64_t seed);

}  // namespace latgame
