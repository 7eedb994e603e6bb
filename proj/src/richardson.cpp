#include "latgame/richardson.hpp"

#include <cmath>

#include "active_set.hpp"
#include "latgame/error.hpp"
#include "latgame/rng.hpp"

namespace latgame {

namespace {

bool borders_infection(const InfectionField& pi, Site x) noexcept {
  for (Site y : pi.geometry().neighbors(x))
    if (pi.test(y))
      return true;
  return false;
}

}  // namespace

InfectionField richardson_init(const StrategyField& eta0) {
  InfectionField pi(eta0.geometry_ptr());
  for (std::size_t i = 0; i < eta0.size(); ++i) {
    const auto x = static_cast<Site>(i);
    if (!eta0.test(x))
      continue;
    for (Site y : eta0.geometry().neighbors(x)) {
      if (eta0.test(y)) {
        pi.set(x);
        break;
      }
    }
  }
  return pi;
}

RichardsonReport simulate_richardson(InfectionField pi0, double t_max, std::uint64_t seed, double record_every) {
  if (!(t_max > 0) || !std::isfinite(t_max))
    throw InvalidInput("t_max must be positive and finite");

  InfectionField pi = std::move(pi0);
  const std::size_t n = pi.size();
  detail::ActiveSet frontier(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = static_cast<Site>(i);
    if (!pi.test(x) && borders_infection(pi, x))
      frontier.insert(x);
  }

  RichardsonReport report{InfectionField(pi.geometry_ptr()), {}, false, std::nullopt, 0, 0};
  std::size_t infected = pi.count();
  std::uint64_t next_row = 0;
  auto emit_before = [&](double t, bool inclusive) {
    if (record_every <= 0)
      return;
    while (true) {
      const double ts = static_cast<double>(next_row) * record_every;
      if (inclusive ? ts > t : !(ts < t))
        break;
      report.series.push_back({ts, static_cast<double>(infected) / static_cast<double>(n)});
      ++next_row;
    }
  };

  EventStream clock(seed);
  double end = t_max;
  if (frontier.empty()) {
    report.saturated = true;
    report.saturation_time = 0.0;
    end = 0.0;
  }
  while (!frontier.empty()) {
    const auto ev = clock.next(frontier.size());
    if (ev.time > t_max)
      break;
    emit_before(ev.time, false);
    const Site x = frontier[ev.index];
    ++report.events;
    pi.set(x);
    ++infected;
    frontier.erase(x);
    for (Site y : pi.geometry().neighbors(x))
      if (!pi.test(y))
        frontier.insert(y);
    if (frontier.empty()) {
      report.saturated = true;
      report.saturation_time = ev.time;
      end = ev.time;
    }
  }
  emit_before(end, true);
  const GrowthPoint last{end, static_cast<double>(infected) / static_cast<double>(n)};
  if (report.series.empty() || report.series.back().t != end)
    report.series.push_back(last);
  report.end_time = end;
  report.final = std::move(pi);
  return report;
}

DominationReport check_richardson_domination(StrategyField eta0, GameParams params, double t_max,
                                             std::uint64_t seed) {
  if (!(t_max > 0) || !std::isfinite(t_max))
    throw InvalidInput("t_max must be positive and finite");
  const int d = eta0.geometry().dim();
  if (!(params.a2 > 0 && params.a1 > (2 * d - 1) * params.a2))
    throw InvalidInput("domination requires a1 > (2d - 1) a2 > 0");

  InfectionField pi = richardson_init(eta0);
  StrategyField eta = std::move(eta0);
  const std::size_t n = eta.size();

  detail::ActiveSet active(n);
  detail::ActiveSet frontier(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = static_cast<Site>(i);
    if (flip_target(eta, params, x))
      active.insert(x);
    if (!pi.test(x) && borders_infection(pi, x))
      frontier.insert(x);
  }
  std::size_t ones = eta.count();

  DominationReport report{StrategyField(eta.geometry_ptr()), InfectionField(eta.geometry_ptr())};
  if (!pi.subset_of(eta))
    throw ContractViolation("initial infection is not contained in the strategy-1 set");
  if (active.empty()) {
    report.strategy_absorbed = true;
    report.strategy_absorption_time = 0.0;
  }
  if (ones == n)
    report.all_one_time = 0.0;

  EventStream clock(seed);
  double end = t_max;
  while (!(active.empty() && frontier.empty())) {
    const auto ev = clock.next(n);
    if (ev.time > t_max)
      break;
    const auto x = static_cast<Site>(ev.index);
    ++report.events;

    // Both updates read the configuration just before the ring.
    const bool infect = frontier.contains(x);
    if (active.contains(x)) {
      const Strategy to = other(eta.strategy(x));
      eta.set_strategy(x, to);
      ones = to == Strategy::One ? ones + 1 : ones - 1;
      active.assign(x, flip_target(eta, params, x).has_value());
      for (Site y : eta.geometry().neighbors(x))
        active.assign(y, flip_target(eta, params, y).has_value());
      if (active.empty()) {
        report.strategy_absorbed = true;
        report.strategy_absorption_time = ev.time;
      }
      if (ones == n && !report.all_one_time)
        report.all_one_time = ev.time;
    }
    if (infect) {
      pi.set(x);
      frontier.erase(x);
      for (Site y : pi.geometry().neighbors(x))
        if (!pi.test(y))
          frontier.insert(y);
    }

    ++report.checks;
    if (pi.test(x) && !eta.test(x)) {
      ++report.violations;
      if (!report.first_violation)
        report.first_violation = DominationViolation{ev.time, x};
    }
    if (active.empty() && frontier.empty())
      end = ev.time;
  }
  if (!pi.subset_of(eta) && report.violations == 0)
    throw ContractViolation("inclusion broken away from an updated site");
  report.end_time = end;
  report.final_strategy = std::move(eta);
  report.final_infection = std::move(pi);
  return report;
}

}  // namespace latgame
