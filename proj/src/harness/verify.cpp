#include "latgame/harness/verify.hpp"

#include <cmath>
#include <exception>
#include <optional>

#include "latgame/bootstrap.hpp"
#include "latgame/error.hpp"
#include "latgame/harness/io.hpp"
#include "latgame/reductions.hpp"
#include "latgame/rng.hpp"

namespace latgame::harness {

namespace {

// Sparse-run states sampled for the phi-iterate check.
constexpr double kSampleTimes[] = {0.0, 0.5, 1.0, 2.0, 5.0, 10.0};
// Two-sided 99.9% normal quantile for the coarse-density band.
constexpr double kBandZ = 3.2905267314919255;

struct SeedOutcome {
  std::uint64_t l1_checks = 0, l1_violations = 0;
  std::uint64_t l2_checks = 0, l2_violations = 0;
  std::uint64_t l3_checks = 0, l3_violations = 0, l3_inconclusive = 0;
  std::uint64_t l4_checks = 0, l4_violations = 0, l4_inconclusive = 0;
  std::uint64_t l4m_checks = 0, l4m_violations = 0, l4m_inconclusive = 0;
  std::optional<Coord> l4_witness;
  std::uint64_t coarse_sites = 0, coarse_occupied = 0;
};

SeedOutcome run_seed(const ExperimentConfig& cfg, const GeometryPtr& geometry, std::uint64_t seed, bool attractive,
                     bool monotone) {
  SeedOutcome out;
  const GameParams params = cfg.params;
  const StrategyField eta0 = random_field(geometry, cfg.p, derive_seed(seed, 0));
  const StrategyField sparse0 = sparse_reduce(eta0);
  const OccupancyField zeta0 = hypercubic_view(sparse0);
  out.coarse_sites = zeta0.size();
  out.coarse_occupied = zeta0.count();

  if (attractive) {
    const CoupledReport coupled = simulate_coupled({sparse0, eta0}, params, cfg.t_max, derive_seed(seed, 1));
    out.l1_checks = coupled.nesting_checks;
    out.l1_violations = coupled.nesting_violations;
  }
  if (!monotone)
    return out;

  std::vector<StrategyField> samples;
  RunOptions options;
  options.record_every = 0;
  for (double s : kSampleTimes)
    if (s <= cfg.t_max)
      options.capture_times.push_back(s);
  options.on_capture = [&](double, const StrategyField& f) { samples.push_back(f); };
  options.on_flip = [&](double, Site, Strategy to) {
    ++out.l2_checks;
    if (to == Strategy::Two)
      ++out.l2_violations;
  };
  const RunReport sparse_run = run(cfg.scheme, sparse0, params, cfg.t_max, derive_seed(seed, 2), options);

  if (!sparse_run.absorbed) {
    out.l3_inconclusive = 1;
    out.l4_inconclusive = 1;
    out.l4m_inconclusive = 1;
    return out;
  }
  const StrategyField& limit = sparse_run.final;

  for (const StrategyField& s : samples) {
    StrategyField iterate = s;
    for (std::size_t n = 0; n <= iterate.size(); ++n) {
      ++out.l3_checks;
      if (!iterate.subset_of(limit))
        ++out.l3_violations;
      StrategyField next = phi(iterate, params);
      if (next == iterate)
        break;
      iterate = std::move(next);
    }
  }

  const OccupancyField xi_limit = bootstrap_limit(zeta0, geometry->dim());
  const OccupancyField zeta_limit = hypercubic_view(limit);
  out.l4_checks = xi_limit.size();
  for (std::size_t z = 0; z < xi_limit.size(); ++z) {
    if (xi_limit.test(static_cast<Site>(z)) && !zeta_limit.test(static_cast<Site>(z))) {
      ++out.l4_violations;
      if (!out.l4_witness)
        out.l4_witness = zeta0.geometry().coords(static_cast<Site>(z));
    }
  }

  const OccupancyField per_axis = per_axis_bootstrap_limit(zeta0);
  out.l4m_checks = per_axis.size();
  for (std::size_t z = 0; z < per_axis.size(); ++z)
    if (per_axis.test(static_cast<Site>(z)) && !zeta_limit.test(static_cast<Site>(z)))
      ++out.l4m_violations;
  return out;
}

void finish(VerifyItem& item) {
  item.passed = item.skipped || (item.violations == 0 && item.inconclusive == 0);
  if (!item.skipped && item.inconclusive > 0 && item.detail.empty())
    item.detail = std::to_string(item.inconclusive) + " seed(s) did not absorb by t_max";
}

}  // namespace

bool VerifyReport::passed() const noexcept {
  for (const auto& item : items)
    if (!item.passed)
      return false;
  return true;
}

const VerifyItem& VerifyReport::item(const std::string& id) const {
  for (const auto& it : items)
    if (it.id == id)
      return it;
  throw InvalidInput("no verification item '" + id + "'");
}

VerifyReport verify_suite(const ExperimentConfig& cfg) {
  const GeometryPtr geometry = Geometry::lattice(cfg.sides);
  const GameParams params = cfg.params;
  const bool attractive = params.both_selfish();
  const bool monotone = params.strictly_ordered_selfish();

  std::vector<SeedOutcome> outcomes(static_cast<std::size_t>(cfg.seeds));
  std::vector<std::exception_ptr> errors(outcomes.size());
  const auto n = static_cast<std::int64_t>(outcomes.size());
#pragma omp parallel for schedule(dynamic) num_threads(cfg.workers)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      outcomes[static_cast<std::size_t>(i)] =
          run_seed(cfg, geometry, derive_seed(cfg.master_seed, static_cast<std::uint64_t>(i)), attractive, monotone);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e)
      std::rethrow_exception(e);

  VerifyItem l1{"L1", "attractiveness of nested coupled runs"};
  VerifyItem l2{"L2", "sparse run never loses a strategy-1 site"};
  VerifyItem l3{"L3", "phi iterates of sampled sparse states stay inside the absorbing state"};
  VerifyItem l4{"L4", "bootstrap limit (m = d) inside final hypercubic view"};
  VerifyItem l4m{"L4m", "per-axis bootstrap limit inside final hypercubic view"};
  VerifyItem l5{"L5", "coarse initial density matches p^(2^d)"};

  if (!attractive) {
    l1.skipped = true;
    l1.reason = "requires a1 > 0 and a2 > 0";
  }
  if (!monotone) {
    for (VerifyItem* item : {&l2, &l3, &l4, &l4m}) {
      item->skipped = true;
      item->reason = "requires a1 > a2 > 0";
    }
  }

  std::uint64_t coarse_sites = 0, coarse_occupied = 0;
  for (const auto& o : outcomes) {
    l1.checks += o.l1_checks;
    l1.violations += o.l1_violations;
    l2.checks += o.l2_checks;
    l2.violations += o.l2_violations;
    l3.checks += o.l3_checks;
    l3.violations += o.l3_violations;
    l3.inconclusive += o.l3_inconclusive;
    l4.checks += o.l4_checks;
    l4.violations += o.l4_violations;
    l4.inconclusive += o.l4_inconclusive;
    l4m.checks += o.l4m_checks;
    l4m.violations += o.l4m_violations;
    l4m.inconclusive += o.l4m_inconclusive;
    if (o.l4_witness && l4.detail.empty()) {
      std::string at;
      for (int c : *o.l4_witness)
        at += (at.empty() ? "" : " ") + std::to_string(c);
      l4.detail = "first uncovered coarse site (" + at + ")";
    }
    coarse_sites += o.coarse_sites;
    coarse_occupied += o.coarse_occupied;
  }

  const double q = std::pow(cfg.p, std::pow(2.0, geometry->dim()));
  const double expected = q * static_cast<double>(coarse_sites);
  const double band = kBandZ * std::sqrt(expected * (1.0 - q));
  l5.checks = coarse_sites;
  l5.violations = std::abs(static_cast<double>(coarse_occupied) - expected) <= band ? 0 : 1;
  l5.detail = "occupied " + std::to_string(coarse_occupied) + " of " + std::to_string(coarse_sites) + ", expected " +
              format_double(expected) + " +/- " + format_double(band);

  VerifyReport report;
  for (VerifyItem* item : {&l1, &l2, &l3, &l4, &l4m, &l5}) {
    finish(*item);
    report.items.push_back(std::move(*item));
  }
  return report;
}

}  // namespace latgame::harness
