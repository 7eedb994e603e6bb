#include "latgame/game.hpp"

#include <cmath>

#include "latgame/error.hpp"
#include "latgame/kernels.hpp"
#include "latgame/rng.hpp"

namespace latgame {

GameParams::GameParams(double a1_, double a2_) : a1(a1_), a2(a2_) {
  if (!std::isfinite(a1) || !std::isfinite(a2))
    throw InvalidInput("game parameters must be finite");
}

GameParams derive_params(const PayoffMatrix& A) {
  if (!std::isfinite(A.a11) || !std::isfinite(A.a12) || !std::isfinite(A.a21) || !std::isfinite(A.a22))
    throw InvalidInput("payoff matrix entries must be finite");
  return GameParams(A.a11 - A.a21, A.a22 - A.a12);
}

namespace {
StrategyClass classify_one(double a) noexcept {
  if (a > 0)
    return StrategyClass::Selfish;
  if (a < 0)
    return StrategyClass::Altruistic;
  return StrategyClass::Neutral;
}
}  // namespace

std::pair<StrategyClass, StrategyClass> classify(GameParams params) noexcept {
  return {classify_one(params.a1), classify_one(params.a2)};
}

const char* to_string(StrategyClass c) noexcept {
  switch (c) {
    case StrategyClass::Selfish: return "selfish";
    case StrategyClass::Altruistic: return "altruistic";
    case StrategyClass::Neutral: return "neutral";
  }
  return "?";
}

NeighborCounts count_neighbors(const StrategyField& eta, Site x) noexcept {
  int n1 = 0;
  for (Site y : eta.geometry().neighbors(x))
    n1 += eta.test(y);
  return {n1, eta.geometry().degree() - n1};
}

Payoffs payoff_landscape(const StrategyField& eta, const PayoffMatrix& A, Site x) noexcept {
  const auto [n1, n2] = count_neighbors(eta, x);
  return {A.a11 * n1 + A.a12 * n2, A.a21 * n1 + A.a22 * n2};
}

double payoff_difference(const StrategyField& eta, GameParams params, Site x) noexcept {
  const auto [n1, n2] = count_neighbors(eta, x);
  return params.a1 * n1 - params.a2 * n2;
}

std::optional<Strategy> flip_target(const StrategyField& eta, GameParams params, Site x) noexcept {
  return flip_target(params, count_neighbors(eta, x), eta.strategy(x));
}

bool is_absorbing(const StrategyField& eta, GameParams params) {
  return kernels::parallel::count_active(eta, params) == 0;
}

StrategyField random_field(GeometryPtr geometry, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0))
    throw InvalidInput("density p must lie in [0, 1]");
  StrategyField eta(std::move(geometry));
  Rng rng(seed);
  const std::size_t n = eta.size();
  for (std::size_t x = 0; x < n; ++x)
    if (rng.uniform() < p)
      eta.set(static_cast<Site>(x));
  return eta;
}

}  // namespace latgame
