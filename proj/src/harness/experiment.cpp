#include "latgame/harness/experiment.hpp"

#include <chrono>
#include <cstdio>
#include <exception>
#include <optional>

#include "latgame/bootstrap.hpp"
#include "latgame/error.hpp"
#include "latgame/harness/verify.hpp"
#include "latgame/meanfield.hpp"
#include "latgame/reductions.hpp"
#include "latgame/rng.hpp"

namespace latgame::harness {

namespace {

std::string replica_tag(std::size_t r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "r%04zu", r);
  return buf;
}

std::string optional_time(const std::optional<double>& t) { return t ? format_double(*t) : "none"; }

// Runs f(i) for i in [0, count) on up to `workers` threads and rethrows the
// first failure by replica index.
template <class F>
void for_each_replica(std::size_t count, int workers, F&& f) {
  std::vector<std::exception_ptr> errors(count);
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      f(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e)
      std::rethrow_exception(e);
}

GeometryPtr lattice_of(const ExperimentConfig& cfg, std::optional<StrategyField>& initial) {
  GeometryPtr g = Geometry::lattice(cfg.sides);
  if (cfg.initial) {
    initial = read_checkpoint(*cfg.initial);
    if (!(initial->geometry() == *g))
      throw InvalidInput("checkpoint '" + *cfg.initial + "' does not match the configured sides");
    g = initial->geometry_ptr();
  }
  return g;
}

std::vector<double> snapshot_times(const ExperimentConfig& cfg) {
  std::vector<double> times;
  if (!cfg.snapshot_every)
    return times;
  for (std::size_t k = 0;; ++k) {
    const double t = static_cast<double>(k) * *cfg.snapshot_every;
    if (t > cfg.t_max)
      break;
    times.push_back(t);
  }
  return times;
}

struct Capture {
  double t;
  StrategyField field;
};

void write_field(OutputDir& out, const std::string& stem, const StrategyField& f) {
  if (f.geometry().dim() == 2)
    out.write(stem + ".pgm", encode_snapshot(f));
  else
    out.write(stem + ".rle", encode_checkpoint(f));
}

void run_simulate(const ExperimentConfig& cfg, OutputDir& out, RunManifest& manifest) {
  std::optional<StrategyField> initial;
  const GeometryPtr g = lattice_of(cfg, initial);
  const auto count = static_cast<std::size_t>(cfg.seeds);
  const std::vector<double> times = snapshot_times(cfg);

  std::vector<std::optional<RunReport>> reports(count);
  std::vector<std::vector<Capture>> captures(count);
  for (std::size_t r = 0; r < count; ++r)
    manifest.replica_seeds.push_back(derive_seed(cfg.master_seed, r));

  for_each_replica(count, cfg.workers, [&](std::size_t r) {
    const std::uint64_t seed = manifest.replica_seeds[r];
    StrategyField eta0 = initial ? *initial : random_field(g, cfg.p, derive_seed(seed, 0));
    RunOptions options;
    options.record_every = cfg.record_every;
    options.capture_times = times;
    options.on_capture = [&captures, r](double t, const StrategyField& f) { captures[r].push_back({t, f}); };
    reports[r] = run(cfg.scheme, std::move(eta0), cfg.params, cfg.t_max, derive_seed(seed, 1), options);
  });

  std::vector<SeededSeries> all;
  for (std::size_t r = 0; r < count; ++r) {
    const RunReport& rep = *reports[r];
    const std::string tag = replica_tag(r);
    out.write("series_" + tag + ".csv", encode_density_csv(rep.series));
    all.push_back({manifest.replica_seeds[r], rep.series});
    for (const Capture& c : captures[r])
      write_field(out, "snapshot_" + tag + "_t" + format_double(c.t), c.field);
    out.write("final_" + tag + ".rle", encode_checkpoint(rep.final));

    const std::string key = "replica." + std::to_string(r) + ".";
    manifest.results.emplace_back(key + "absorbed", rep.absorbed ? "true" : "false");
    manifest.results.emplace_back(key + "absorption_time", optional_time(rep.absorption_time));
    manifest.results.emplace_back(key + "end_time", format_double(rep.end_time));
    manifest.results.emplace_back(key + "final_density1", format_double(rep.final.density()));
    manifest.results.emplace_back(key + "events", std::to_string(rep.events_processed));
    manifest.results.emplace_back(key + "flips", std::to_string(rep.flips));
  }
  out.write("series_all.csv", encode_aggregate_csv(all));
}

void run_figure1(const ExperimentConfig& cfg, OutputDir& out, RunManifest& manifest) {
  const GeometryPtr g = Geometry::lattice(cfg.sides);
  const std::vector<double> densities = cfg.densities.empty() ? std::vector<double>{0.15, 0.20} : cfg.densities;
  const auto count = static_cast<std::size_t>(cfg.seeds);
  const std::vector<double> times = {0.0, 5.0, 25.0};

  for (std::size_t r = 0; r < count; ++r)
    manifest.replica_seeds.push_back(derive_seed(cfg.master_seed, r));

  std::string summary = "density,replica,seed,outcome,absorbed,absorption_time,density_t0,density_t25,density_end\n";
  for (std::size_t di = 0; di < densities.size(); ++di) {
    const double p = densities[di];
    std::vector<std::optional<RunReport>> reports(count);
    std::vector<std::vector<Capture>> captures(count);
    for_each_replica(count, cfg.workers, [&](std::size_t r) {
      const std::uint64_t seed = derive_seed(manifest.replica_seeds[r], 100 + di);
      RunOptions options;
      options.record_every = cfg.record_every;
      options.capture_times = times;
      options.on_capture = [&captures, r](double t, const StrategyField& f) { captures[r].push_back({t, f}); };
      reports[r] = run(cfg.scheme, random_field(g, p, derive_seed(seed, 0)), cfg.params, cfg.t_max,
                       derive_seed(seed, 1), options);
    });

    const std::string ptag = "p" + format_double(p);
    std::size_t tally[4] = {0, 0, 0, 0};
    for (std::size_t r = 0; r < count; ++r) {
      const RunReport& rep = *reports[r];
      const std::string stem = "figure1_" + ptag + "_" + replica_tag(r);
      double d0 = 0, d25 = rep.final.density();
      for (const Capture& c : captures[r]) {
        out.write(stem + "_t" + format_double(c.t) + ".pgm", encode_snapshot(c.field));
        if (c.t == 0.0)
          d0 = c.field.density();
        if (c.t == 25.0)
          d25 = c.field.density();
      }
      out.write(stem + "_end.pgm", encode_snapshot(rep.final));
      out.write(stem + ".csv", encode_density_csv(rep.series));
      const Outcome outcome = classify_outcome(rep);
      ++tally[static_cast<int>(outcome)];
      summary += format_double(p) + "," + std::to_string(r) + "," + std::to_string(manifest.replica_seeds[r]) + "," +
                 to_string(outcome) + "," + (rep.absorbed ? "true" : "false") + "," +
                 optional_time(rep.absorption_time) + "," + format_double(d0) + "," + format_double(d25) + "," +
                 format_double(rep.final.density()) + "\n";
    }
    for (Outcome o : {Outcome::AbsorbedMixed, Outcome::AllOne, Outcome::AllTwo, Outcome::Undecided})
      manifest.results.emplace_back(ptag + "." + to_string(o), std::to_string(tally[static_cast<int>(o)]));
  }
  out.write("figure1_summary.csv", summary);
}

void run_meanfield(const ExperimentConfig& cfg, OutputDir& out, RunManifest& manifest) {
  const auto regime = meanfield::classify_regime(cfg.params);
  manifest.results.emplace_back("regime", meanfield::to_string(regime.kind));
  manifest.results.emplace_back("threshold", regime.threshold ? format_double(*regime.threshold) : "none");
  manifest.results.emplace_back("long_time_limit", format_double(meanfield::long_time_limit(cfg.p, cfg.params)));

  std::vector<double> times;
  if (cfg.record_every > 0) {
    for (std::size_t k = 0;; ++k) {
      const double t = static_cast<double>(k) * cfg.record_every;
      if (t > cfg.t_max)
        break;
      times.push_back(t);
    }
  } else {
    times.push_back(0.0);
  }
  if (times.back() != cfg.t_max)
    times.push_back(cfg.t_max);

  std::string csv = "t,exact,numeric,drift\n";
  for (double t : times) {
    const double exact = meanfield::exact_trajectory(cfg.p, cfg.params, t);
    const double numeric = meanfield::integrate_numeric(cfg.p, cfg.params, t, cfg.dt);
    csv += format_double(t) + "," + format_double(exact) + "," + format_double(numeric) + "," +
           format_double(meanfield::drift(exact, cfg.params)) + "\n";
  }
  out.write("meanfield.csv", csv);
}

void run_bootstrap(const ExperimentConfig& cfg, OutputDir& out, RunManifest& manifest) {
  const SweepResult sweep = sweep_critical_density(cfg.d, cfg.m, cfg.coarse_sides, cfg.q_values, cfg.seeds,
                                                   cfg.master_seed, cfg.workers);
  std::string csv = "side,q,seeds,full,fraction_full\n";
  for (const auto& c : sweep.cells)
    csv += std::to_string(c.side) + "," + format_double(c.q) + "," + std::to_string(c.seeds) + "," +
           std::to_string(c.full) + "," + format_double(c.fraction_full) + "\n";
  out.write("bootstrap_sweep.csv", csv);
  manifest.results.emplace_back("note", "finite torus; fraction_full is a finite-size trend, not a limit");
}

void run_reduce(const ExperimentConfig& cfg, OutputDir& out, RunManifest& manifest) {
  std::optional<StrategyField> initial;
  const GeometryPtr g = lattice_of(cfg, initial);
  const bool closure = cfg.params.strictly_ordered_selfish();
  if (!closure)
    manifest.results.emplace_back("closure", "skipped: requires a1 > a2 > 0");

  std::string summary = "replica,seed,density_initial,density_sparse,coarse_density,closure_depth,density_closure\n";
  for (std::size_t r = 0; r < static_cast<std::size_t>(cfg.seeds); ++r) {
    const std::uint64_t seed = derive_seed(cfg.master_seed, r);
    manifest.replica_seeds.push_back(seed);
    const StrategyField eta0 = initial ? *initial : random_field(g, cfg.p, derive_seed(seed, 0));
    const StrategyField sparse = sparse_reduce(eta0);
    const OccupancyField view = hypercubic_view(sparse);
    const std::string tag = replica_tag(r);
    write_field(out, "reduce_" + tag + "_initial", eta0);
    write_field(out, "reduce_" + tag + "_sparse", sparse);
    std::string depth = "none", dclosure = "none";
    if (closure) {
      const PhiClosure c = phi_closure_with_depth(sparse, cfg.params);
      write_field(out, "reduce_" + tag + "_closure", c.field);
      depth = std::to_string(c.depth);
      dclosure = format_double(c.field.density());
    }
    summary += std::to_string(r) + "," + std::to_string(seed) + "," + format_double(eta0.density()) + "," +
               format_double(sparse.density()) + "," + format_double(view.density()) + "," + depth + "," + dclosure +
               "\n";
  }
  out.write("reduce_summary.csv", summary);
}

void run_verify(const ExperimentConfig& cfg, OutputDir& out, RunManifest& manifest) {
  for (std::size_t r = 0; r < static_cast<std::size_t>(cfg.seeds); ++r)
    manifest.replica_seeds.push_back(derive_seed(cfg.master_seed, r));
  const VerifyReport report = verify_suite(cfg);
  std::string csv = "item,status,checks,violations,inconclusive,detail\n";
  for (const auto& item : report.items) {
    const std::string status = item.skipped ? "skipped" : (item.passed ? "pass" : "fail");
    const std::string detail = item.skipped ? item.reason : item.detail;
    csv += item.id + "," + status + "," + std::to_string(item.checks) + "," + std::to_string(item.violations) + "," +
           std::to_string(item.inconclusive) + ",\"" + detail + "\"\n";
    manifest.results.emplace_back(item.id + ".status", status);
    manifest.results.emplace_back(item.id + ".violations", std::to_string(item.violations));
    if (item.skipped)
      manifest.results.emplace_back(item.id + ".reason", item.reason);
  }
  out.write("verify_report.csv", csv);
  manifest.verification_failed = !report.passed();
  manifest.results.emplace_back("verification", report.passed() ? "pass" : "fail");
}

}  // namespace

const char* to_string(Outcome outcome) noexcept {
  switch (outcome) {
    case Outcome::AbsorbedMixed: return "absorbed-mixed";
    case Outcome::AllOne: return "all-1";
    case Outcome::AllTwo: return "all-2";
    case Outcome::Undecided: return "undecided";
  }
  return "?";
}

Outcome classify_outcome(const RunReport& report) noexcept {
  if (report.final.all())
    return Outcome::AllOne;
  if (report.absorbed)
    return report.final.none() ? Outcome::AllTwo : Outcome::AbsorbedMixed;
  return Outcome::Undecided;
}

RunManifest run_experiment(const ExperimentConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  OutputDir out(cfg.output_dir);
  RunManifest manifest;
  manifest.engine_version = kEngineVersion;
  manifest.config.emplace_back("mode", to_string(cfg.mode));
  for (const auto& [k, v] : cfg.entries)
    if (k != "mode")
      manifest.config.emplace_back(k, v);

  switch (cfg.mode) {
    case Mode::Simulate: run_simulate(cfg, out, manifest); break;
    case Mode::Figure1: run_figure1(cfg, out, manifest); break;
    case Mode::Meanfield: run_meanfield(cfg, out, manifest); break;
    case Mode::Bootstrap: run_bootstrap(cfg, out, manifest); break;
    case Mode::Reduce: run_reduce(cfg, out, manifest); break;
    case Mode::Verify: run_verify(cfg, out, manifest); break;
  }

  manifest.artifacts = out.artifacts();
  manifest.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_manifest(manifest, out.root());
  return manifest;
}

}  // namespace latgame::harness
