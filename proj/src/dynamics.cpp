#include "latgame/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "active_set.hpp"
#include "latgame/error.hpp"
#include "latgame/rng.hpp"

namespace latgame {

namespace {

void check_horizon(double t_max) {
  if (!(t_max > 0) || !std::isfinite(t_max))
    throw InvalidInput("t_max must be positive and finite");
}

// One evolving configuration plus its active set and sampling state. The
// caller owns the clock; apply() is called once per ring.
class Trajectory {
 public:
  Trajectory(StrategyField eta0, GameParams params, const RunOptions& options)
      : field_(std::move(eta0)), params_(params), options_(options), active_(field_.size()) {
    for (std::size_t x = 0; x < field_.size(); ++x)
      if (flip_target(field_, params_, static_cast<Site>(x)))
        active_.insert(static_cast<Site>(x));
    ones_ = field_.count();
    captures_ = options_.capture_times;
    std::sort(captures_.begin(), captures_.end());
    if (active_.empty()) {
      absorbed_ = true;
      absorption_time_ = 0.0;
    }
  }

  bool absorbed() const noexcept { return absorbed_; }
  const detail::ActiveSet& active() const noexcept { return active_; }
  const StrategyField& field() const noexcept { return field_; }

  // Emits every sample and capture scheduled strictly before t.
  void advance_to(double t) {
    if (options_.record_every > 0) {
      const double limit = absorbed_ ? *absorption_time_ : t;
      while (true) {
        const double ts = static_cast<double>(next_row_) * options_.record_every;
        if (!(ts < t) || ts > limit)
          break;
        push_row(ts);
        ++next_row_;
      }
    } else if (next_row_ == 0) {
      push_row(0.0);
      next_row_ = 1;
    }
    while (next_capture_ < captures_.size() && captures_[next_capture_] < t) {
      if (options_.on_capture)
        options_.on_capture(captures_[next_capture_], field_);
      ++next_capture_;
    }
  }

  // Applies the update rule at x; returns whether x changed.
  bool apply(double t, Site x) {
    ++events_;
    if (!active_.contains(x))
      return false;
    const Strategy to = other(field_.strategy(x));
    field_.set_strategy(x, to);
    ++flips_;
    if (to == Strategy::One)
      ++ones_;
    else
      --ones_;
    refresh(x);
    for (Site y : field_.geometry().neighbors(x))
      refresh(y);
    if (options_.on_flip)
      options_.on_flip(t, x, to);
    if (active_.empty()) {
      absorbed_ = true;
      absorption_time_ = t;
    }
    return true;
  }

  RunReport finish(double t_max) {
    const double end = absorbed_ ? *absorption_time_ : t_max;
    advance_to(std::nextafter(end, INFINITY));
    // remaining captures up to the horizon see the frozen state
    while (next_capture_ < captures_.size() && captures_[next_capture_] <= t_max) {
      if (options_.on_capture)
        options_.on_capture(captures_[next_capture_], field_);
      ++next_capture_;
    }
    if (series_.empty() || series_.back().t != end)
      push_row(end);
    RunReport report{StrategyField(field_.geometry_ptr()), absorbed_, absorption_time_, std::move(series_),
                     events_, flips_, end};
    report.final = std::move(field_);
    return report;
  }

 private:
  void refresh(Site y) { active_.assign(y, flip_target(field_, params_, y).has_value()); }

  void push_row(double t) {
    series_.push_back({t, static_cast<double>(ones_) / static_cast<double>(field_.size()), flips_, active_.size()});
  }

  StrategyField field_;
  GameParams params_;
  const RunOptions& options_;
  detail::ActiveSet active_;
  std::size_t ones_ = 0;
  bool absorbed_ = false;
  std::optional<double> absorption_time_;
  std::vector<SeriesPoint> series_;
  std::vector<double> captures_;
  std::size_t next_capture_ = 0;
  std::uint64_t next_row_ = 0;
  std::uint64_t events_ = 0;
  std::uint64_t flips_ = 0;
};

}  // namespace

RunReport simulate(StrategyField eta0, GameParams params, double t_max, std::uint64_t seed,
                   const RunOptions& options) {
  check_horizon(t_max);
  Trajectory traj(std::move(eta0), params, options);
  EventStream clock(seed);
  const std::size_t n = traj.field().size();
  while (!traj.absorbed()) {
    const auto ev = clock.next(n);
    if (ev.time > t_max)
      break;
    traj.advance_to(ev.time);
    const auto x = static_cast<Site>(ev.index);
    if (options.on_event)
      options.on_event(ev.time, x);
    traj.apply(ev.time, x);
  }
  return traj.finish(t_max);
}

RunReport simulate_active_set(StrategyField eta0, GameParams params, double t_max, std::uint64_t seed,
                              const RunOptions& options) {
  check_horizon(t_max);
  Trajectory traj(std::move(eta0), params, options);
  EventStream clock(seed);
  while (!traj.absorbed()) {
    const auto ev = clock.next(traj.active().size());
    if (ev.time > t_max)
      break;
    traj.advance_to(ev.time);
    const Site x = traj.active()[ev.index];
    if (options.on_event)
      options.on_event(ev.time, x);
    traj.apply(ev.time, x);
  }
  return traj.finish(t_max);
}

RunReport run(Scheme scheme, StrategyField eta0, GameParams params, double t_max, std::uint64_t seed,
              const RunOptions& options) {
  return scheme == Scheme::Naive ? simulate(std::move(eta0), params, t_max, seed, options)
                                 : simulate_active_set(std::move(eta0), params, t_max, seed, options);
}

CoupledReport simulate_coupled(std::vector<StrategyField> fields, GameParams params, double t_max,
                               std::uint64_t seed, const RunOptions& options) {
  check_horizon(t_max);
  if (fields.empty())
    throw InvalidInput("coupled run needs at least one field");
  for (const auto& f : fields)
    if (!(f.geometry() == fields.front().geometry()))
      throw InvalidInput("coupled fields must share one geometry");

  CoupledReport report;
  for (std::size_t i = 0; i < fields.size(); ++i)
    for (std::size_t j = 0; j < fields.size(); ++j)
      if (i != j && fields[i].subset_of(fields[j]))
        report.nested_pairs.emplace_back(i, j);

  // Per-field callbacks would fire once per field; only series/captures are kept.
  RunOptions per_field;
  per_field.record_every = options.record_every;

  std::vector<Trajectory> trajs;
  trajs.reserve(fields.size());
  for (auto& f : fields)
    trajs.emplace_back(std::move(f), params, per_field);

  EventStream clock(seed);
  const std::size_t n = trajs.front().field().size();
  auto all_absorbed = [&] {
    return std::all_of(trajs.begin(), trajs.end(), [](const Trajectory& t) { return t.absorbed(); });
  };
  while (!all_absorbed()) {
    const auto ev = clock.next(n);
    if (ev.time > t_max)
      break;
    const auto x = static_cast<Site>(ev.index);
    ++report.events;
    if (options.on_event)
      options.on_event(ev.time, x);
    for (auto& traj : trajs) {
      traj.advance_to(ev.time);
      traj.apply(ev.time, x);
    }
    // Only x changed, so nesting can only break at x.
    for (auto [i, j] : report.nested_pairs) {
      ++report.nesting_checks;
      if (trajs[i].field().test(x) && !trajs[j].field().test(x)) {
        ++report.nesting_violations;
        if (!report.first_violation)
          report.first_violation = NestingViolation{ev.time, x, i, j};
      }
    }
  }
  for (auto& traj : trajs)
    report.runs.push_back(traj.finish(t_max));
  return report;
}

}  // namespace latgame
