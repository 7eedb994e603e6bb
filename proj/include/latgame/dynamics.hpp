#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "latgame/field.hpp"
#include "latgame/game.hpp"

namespace latgame {

struct SeriesPoint {
  double t = 0;
  double density1 = 0;
  std::uint64_t flips = 0;   // cumulative up to t
  std::uint64_t active = 0;  // sites whose flip condition holds at t
};

struct RunReport {
  StrategyField final;
  bool absorbed = false;
  std::optional<double> absorption_time;
  std::vector<SeriesPoint> series;
  std::uint64_t events_processed = 0;
  std::uint64_t flips = 0;
  double end_time = 0;  // absorption time if absorbed, else t_max
};

struct RunOptions {
  // Series sampled at t = 0, dt, 2dt, ... plus one row at end_time.
  // Zero or negative records only the first and last rows.
  double record_every = 0;

  // State handed to on_capture at each listed time (sorted or not) that is
  // not past t_max. After absorption the frozen final state is delivered.
  std::vector<double> capture_times;
  std::function<void(double, const StrategyField&)> on_capture;

  // Called after every strategy change.
  std::function<void(double, Site, Strategy)> on_flip;
  // Called for every clock ring, including no-op rings.
  std::function<void(double, Site)> on_event;
};

// Reference scheme: every site carries a clock; rings at stable sites are
// no-ops. Absorption is tracked through an incrementally maintained active set.
RunReport simulate(StrategyField eta0, GameParams params, double t_max, std::uint64_t seed,
                   const RunOptions& options = {});

// Only the active set A = {x : flip_target(x) exists} is scheduled. Same law as
// simulate(); events_processed counts only the (always effective) active rings.
RunReport simulate_active_set(StrategyField eta0, GameParams params, double t_max, std::uint64_t seed,
                              const RunOptions& options = {});

enum class Scheme { Naive, ActiveSet };

RunReport run(Scheme scheme, StrategyField eta0, GameParams params, double t_max, std::uint64_t seed,
              const RunOptions& options = {});

struct NestingViolation {
  double time;
  Site site;
  std::size_t inner;  // index of field that was a subset
  std::size_t outer;
};

struct CoupledReport {
  std::vector<RunReport> runs;
  // Ordered pairs (i, j), i != j, with field i a subset of field j initially.
  std::vector<std::pair<std::size_t, std::size_t>> nested_pairs;
  std::uint64_t events = 0;
  std::uint64_t nesting_checks = 0;
  std::uint64_t nesting_violations = 0;
  std::optional<NestingViolation> first_violation;
};

// All fields share one event stream: each ring at x is applied to every field
// with that field's own flip rule. Nesting of initially nested pairs is audited
// after every event. Stops at t_max or when every field is absorbed.
CoupledReport simulate_coupled(std::vector<StrategyField> fields, GameParams params, double t_max,
                               std::uint64_t seed, const RunOptions& options = {});

}  // namespace latgame
