#include <doctest.h>

#include <cmath>

#include "latgame/error.hpp"
#include "latgame/meanfield.hpp"

using namespace latgame;
using namespace latgame::meanfield;

namespace {

// One representative pair per regime.
const GameParams kRegimes[] = {GameParams(1, -1), GameParams(-1, 2), GameParams(-1, -3), GameParams(1.01, 1)};

// Closed form written out independently: growth branch, decay branch, and a
// finite-time arrival at the threshold when the flow points into it. The test
// grid avoids u* so the sign of g needs no tie handling.
double reference(double u0, GameParams p, double t) {
  const double g = p.a1 * u0 - p.a2 * (1 - u0);
  const double up = 1 - (1 - u0) * std::exp(-t);
  const double down = u0 * std::exp(-t);
  if (p.a1 < 0 && p.a2 < 0) {
    const double us = p.a2 / (p.a1 + p.a2);
    return g > 0 ? std::min(up, us) : std::max(down, us);
  }
  return g > 0 ? up : down;
}

}  // namespace

TEST_CASE("classify_regime") {
  CHECK(classify_regime(GameParams(1, -1)).kind == RegimeKind::Strategy1Wins);
  CHECK_FALSE(classify_regime(GameParams(1, -1)).threshold);
  CHECK(classify_regime(GameParams(-1, 1)).kind == RegimeKind::Strategy2Wins);
  const auto co = classify_regime(GameParams(-1, -3));
  CHECK(co.kind == RegimeKind::Coexistence);
  CHECK(*co.threshold == doctest::Approx(0.75));
  const auto bi = classify_regime(GameParams(1.01, 1));
  CHECK(bi.kind == RegimeKind::Bistable);
  CHECK(*bi.threshold == doctest::Approx(1 / 2.01));
  CHECK_THROWS_AS(classify_regime(GameParams(0, 1)), Unsupported);
  CHECK_THROWS_AS(classify_regime(GameParams(1, 0)), Unsupported);
}

TEST_CASE("drift") {
  CHECK(drift(0.5, GameParams(1, 1)) == 0);
  CHECK(drift(0.6, GameParams(1, 1)) == doctest::Approx(0.4));
  CHECK(drift(0.0, GameParams(1, -1)) == 1);
  CHECK(drift(0.3, GameParams(1, 1)) == doctest::Approx(-0.3));
  // the rounded threshold is an exact rest point
  for (const auto& p : kRegimes)
    if (const auto th = classify_regime(p).threshold)
      CHECK(drift(*th, p) == 0);
  // literal comparison of a1 u1 against a2 u2 away from the threshold
  for (const auto& p : kRegimes)
    for (int i = 0; i <= 100; ++i) {
      const double u = i / 100.0;
      if (const auto th = classify_regime(p).threshold; th && std::abs(u - *th) < 1e-12)
        continue;
      const double expected = p.a1 * u > p.a2 * (1 - u) ? 1 - u : -u;
      CHECK(drift(u, p) == expected);
    }
}

TEST_CASE("exact_trajectory examples") {
  CHECK(exact_trajectory(0, GameParams(1, -1), std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-14));
  for (double t : {0.0, 1.0, 10.0, 100.0})
    CHECK(exact_trajectory(0.5, GameParams(1, 1), t) == 0.5);
  CHECK(exact_trajectory(0.6, GameParams(1, 1), 1) == doctest::Approx(1 - 0.4 * std::exp(-1.0)));
  CHECK(exact_trajectory(0.6, GameParams(1, 1), 1) == doctest::Approx(0.852848).epsilon(1e-6));
}

TEST_CASE("exact_trajectory matches the independent closed form and stays in [0,1]") {
  for (const auto& p : kRegimes) {
    for (int i = 0; i <= 40; ++i) {
      const double u0 = i / 40.0;
      if (classify_regime(p).threshold && std::abs(u0 - *classify_regime(p).threshold) < 1e-9)
        continue;
      for (double t = 0; t <= 8; t += 0.25) {
        const double u = exact_trajectory(u0, p, t);
        CHECK(u >= 0);
        CHECK(u <= 1);
        CHECK(u == doctest::Approx(reference(u0, p, t)).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("integrate_numeric") {
  CHECK(std::abs(integrate_numeric(0, GameParams(1, -1), 1, 1e-3) - exact_trajectory(0, GameParams(1, -1), 1)) < 1e-8);
  const GameParams bi(1.01, 1);
  const double us = *classify_regime(bi).threshold;
  CHECK(std::abs(integrate_numeric(us, bi, 5, 1e-3) - us) < 1e-12);
  CHECK(integrate_numeric(0.1, GameParams(-1, -1), 30, 1e-2) == doctest::Approx(0.5).epsilon(1e-9));

  SUBCASE("agrees with the closed form on a 20x20 grid per regime") {
    for (const auto& p : kRegimes) {
      const auto reg = classify_regime(p);
      double worst = 0;
      for (int i = 0; i < 20; ++i) {
        const double u0 = (i + 0.5) / 20.0;
        if (reg.threshold && std::abs(u0 - *reg.threshold) < 1e-9)
          continue;
        for (int k = 0; k < 20; ++k) {
          const double t = 5.0 * k / 19.0;
          worst = std::max(worst, std::abs(integrate_numeric(u0, p, t, 1e-3) - exact_trajectory(u0, p, t)));
        }
      }
      CAPTURE(to_string(reg.kind));
      CHECK(worst < 1e-6);
    }
  }
}

TEST_CASE("long_time_limit") {
  for (double u0 : {0.0, 0.3, 1.0})
    CHECK(long_time_limit(u0, GameParams(1, -1)) == 1);
  for (double u0 : {0.0, 0.3, 1.0})
    CHECK(long_time_limit(u0, GameParams(-2, -2)) == 0.5);
  CHECK(long_time_limit(0.15, GameParams(1.01, 1)) == 0);
  CHECK(long_time_limit(0.60, GameParams(1.01, 1)) == 1);
  CHECK(long_time_limit(0.3, GameParams(-1, 1)) == 0);
  const double us = 1 / 2.01;
  CHECK(long_time_limit(us, GameParams(1.01, 1)) == exact_trajectory(us, GameParams(1.01, 1), 1e3));
  CHECK_THROWS_AS(long_time_limit(0.5, GameParams(0, -1)), Unsupported);

  // coherence with the trajectory at large times
  for (const auto& p : kRegimes)
    for (int i = 0; i <= 20; ++i) {
      const double u0 = i / 20.0;
      CHECK(exact_trajectory(u0, p, 60) == doctest::Approx(long_time_limit(u0, p)).epsilon(1e-12));
    }
}
