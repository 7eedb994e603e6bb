#include "latgame/meanfield.hpp"

#include <cmath>

#include "latgame/error.hpp"

namespace latgame::meanfield {

namespace {

// Sign of a1 u1 - a2 u2 = (a1 + a2)(u1 - u*). The factored form is used so
// that the rounded threshold a2 / (a1 + a2) is itself an exact tie; computing
// both products directly disagrees with it in the last bit for most params.
int side_of(double u1, GameParams params) noexcept {
  const double sum = params.a1 + params.a2;
  if (sum == 0) {
    const double lhs = params.a1 * u1;
    const double rhs = params.a2 * (1.0 - u1);
    return lhs > rhs ? 1 : (lhs < rhs ? -1 : 0);
  }
  const double threshold = params.a2 / sum;
  const int offset = u1 > threshold ? 1 : (u1 < threshold ? -1 : 0);
  return sum > 0 ? offset : -offset;
}

void check_state(double u) {
  if (!(u >= 0.0 && u <= 1.0))
    throw InvalidInput("mean-field frequency must lie in [0, 1]");
}

double branch_field(double u, int side) noexcept {
  return side > 0 ? 1.0 - u : (side < 0 ? -u : 0.0);
}

double rk4_step(double u, double h, int side) noexcept {
  const double k1 = branch_field(u, side);
  const double k2 = branch_field(u + 0.5 * h * k1, side);
  const double k3 = branch_field(u + 0.5 * h * k2, side);
  const double k4 = branch_field(u + h * k3, side);
  return u + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

const char* to_string(RegimeKind kind) noexcept {
  switch (kind) {
    case RegimeKind::Strategy1Wins: return "strategy1-wins";
    case RegimeKind::Strategy2Wins: return "strategy2-wins";
    case RegimeKind::Coexistence: return "coexistence";
    case RegimeKind::Bistable: return "bistable";
  }
  return "?";
}

Regime classify_regime(GameParams params) {
  if (params.a1 == 0 || params.a2 == 0)
    throw Unsupported("mean-field regimes are defined only for nonzero a1 and a2");
  const double threshold = params.a2 / (params.a1 + params.a2);
  if (params.a1 > 0 && params.a2 < 0)
    return {RegimeKind::Strategy1Wins, std::nullopt};
  if (params.a1 < 0 && params.a2 > 0)
    return {RegimeKind::Strategy2Wins, std::nullopt};
  if (params.a1 < 0)
    return {RegimeKind::Coexistence, threshold};
  return {RegimeKind::Bistable, threshold};
}

double drift(double u1, GameParams params) noexcept {
  return branch_field(u1, side_of(u1, params));
}

double exact_trajectory(double u0, GameParams params, double t) {
  check_state(u0);
  if (!(t >= 0))
    throw InvalidInput("time must be nonnegative");
  const int side = side_of(u0, params);
  if (side == 0)
    return u0;
  const double sum = params.a1 + params.a2;
  // With a1 + a2 < 0 the flow points into u* from both sides.
  const bool converging = sum < 0;
  const double threshold = converging ? params.a2 / sum : 0.0;
  if (side > 0) {
    if (converging && threshold > u0 && threshold < 1.0 && t >= std::log((1.0 - u0) / (1.0 - threshold)))
      return threshold;
    return 1.0 - (1.0 - u0) * std::exp(-t);
  }
  if (converging && threshold < u0 && threshold > 0.0 && t >= std::log(u0 / threshold))
    return threshold;
  return u0 * std::exp(-t);
}

double integrate_numeric(double u0, GameParams params, double t, double dt) {
  check_state(u0);
  if (!(dt > 0))
    throw InvalidInput("dt must be positive");
  if (!(t >= 0))
    throw InvalidInput("time must be nonnegative");
  const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(t / dt)));
  const double h = t / static_cast<double>(steps);

  double u = u0;
  int side = side_of(u, params);
  for (std::size_t i = 0; i < steps && side != 0; ++i) {
    const double next = rk4_step(u, h, side);
    if (side_of(next, params) == side) {
      u = next;
      continue;
    }
    // The step reaches the discontinuity: locate it and slide there.
    double lo = 0.0, hi = 1.0;
    for (int k = 0; k < 80; ++k) {
      const double mid = 0.5 * (lo + hi);
      if (side_of(rk4_step(u, mid * h, side), params) == side)
        lo = mid;
      else
        hi = mid;
    }
    u = rk4_step(u, hi * h, side);
    side = 0;
  }
  return u;
}

double long_time_limit(double u0, GameParams params) {
  check_state(u0);
  const Regime regime = classify_regime(params);
  switch (regime.kind) {
    case RegimeKind::Strategy1Wins: return 1.0;
    case RegimeKind::Strategy2Wins: return 0.0;
    case RegimeKind::Coexistence: return *regime.threshold;
    case RegimeKind::Bistable: {
      const int side = side_of(u0, params);
      return side > 0 ? 1.0 : (side < 0 ? 0.0 : u0);
    }
  }
  return u0;
}

}  // namespace latgame::meanfield
