#include <doctest.h>

#include <cmath>
#include <vector>

#include "latgame/dynamics.hpp"
#include "latgame/error.hpp"
#include "latgame/reductions.hpp"
#include "latgame/richardson.hpp"
#include "latgame/rng.hpp"
#include "oracle.hpp"

using namespace latgame;

namespace {

constexpr Scheme kSchemes[] = {Scheme::Naive, Scheme::ActiveSet};

// Random union of aligned 2x2 blocks, built directly from coordinates.
StrategyField random_block_union(const GeometryPtr& g, double q, std::uint64_t seed) {
  Rng rng(seed);
  StrategyField eta(g);
  const auto& s = g->sides();
  for (int i = 0; i < s[0]; i += 2)
    for (int j = 0; j < s[1]; j += 2)
      if (rng.uniform() < q)
        for (int di : {0, 1})
          for (int dj : {0, 1})
            eta.set(g->site({i + di, j + dj}));
  return eta;
}

// Closure by direct iteration of the brute-force growth map.
std::vector<bool> oracle_closure(std::vector<bool> bits, const std::vector<int>& sides, GameParams p) {
  for (;;) {
    auto next = oracle::phi(bits, sides, p);
    if (next == bits)
      return bits;
    bits = std::move(next);
  }
}

void check_report_invariants(const RunReport& r, GameParams params) {
  REQUIRE_FALSE(r.series.empty());
  double last_t = -1;
  std::uint64_t last_flips = 0;
  for (const auto& pt : r.series) {
    CHECK(pt.t >= last_t);
    CHECK(pt.density1 >= 0.0);
    CHECK(pt.density1 <= 1.0);
    CHECK(pt.flips >= last_flips);
    last_t = pt.t;
    last_flips = pt.flips;
  }
  CHECK(r.series.back().t == r.end_time);
  CHECK(r.series.back().density1 == r.final.density());
  CHECK(r.series.back().flips == r.flips);
  if (r.absorbed) {
    CHECK(is_absorbing(r.final, params));
    CHECK(r.absorption_time.has_value());
    CHECK(r.series.back().active == 0);
  }
}

}  // namespace

TEST_CASE("event stream: identical seeds, strictly increasing times") {
  EventStream a(7), b(7), c(8);
  double prev = 0;
  bool differs = false;
  for (int i = 0; i < 10000; ++i) {
    const auto ea = a.next(100);
    const auto eb = b.next(100);
    const auto ec = c.next(100);
    CHECK(ea.time == eb.time);
    CHECK(ea.index == eb.index);
    CHECK(ea.time > prev);
    CHECK(ea.index < 100);
    differs = differs || ea.index != ec.index;
    prev = ea.time;
  }
  CHECK(differs);
}

TEST_CASE("event stream marginals are rate-one Poisson per site") {
  constexpr std::size_t n = 256;  // a 16x16 torus
  constexpr double T = 100;
  std::vector<double> counts(n, 0);
  EventStream s(20240611);
  for (;;) {
    const auto e = s.next(n);
    if (e.time > T)
      break;
    counts[e.index] += 1;
  }
  double mean = 0;
  for (double c : counts)
    mean += c;
  mean /= n;
  double var = 0;
  for (double c : counts)
    var += (c - mean) * (c - mean);
  var /= n - 1;
  const double se_mean = std::sqrt(T / n);
  // Poisson: Var(s^2) ~ (mu4 - sigma^4) / n = (T + 2T^2) / n
  const double se_var = std::sqrt((T + 2 * T * T) / n);
  CHECK(std::abs(mean - T) < 3 * se_mean);
  CHECK(std::abs(var - T) < 3 * se_var);

  // Independence across sites: correlation of neighboring-index counts is small.
  double cov = 0;
  for (std::size_t i = 0; i + 1 < n; ++i)
    cov += (counts[i] - mean) * (counts[i + 1] - mean);
  cov /= n - 2;
  CHECK(std::abs(cov / var) < 3 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("selfish against altruistic: strategy 1 takes over") {
  const auto g = Geometry::lattice({16, 16});
  for (auto scheme : kSchemes) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      bool flipped_to_two = false;
      RunOptions opt;
      opt.on_flip = [&](double, Site, Strategy s) { flipped_to_two = flipped_to_two || s == Strategy::Two; };
      const auto r = run(scheme, random_field(g, 0.3, seed), GameParams(1, -1), 1000, seed + 100, opt);
      CHECK(r.absorbed);
      CHECK(r.final.all());
      CHECK_FALSE(flipped_to_two);
      check_report_invariants(r, GameParams(1, -1));
    }
  }
}

TEST_CASE("altruistic pair: the first ring on an all-1 line flips that site") {
  const auto g = Geometry::lattice({6});
  std::optional<Site> first_ring, first_flip;
  std::optional<Strategy> first_target;
  RunOptions opt;
  opt.on_event = [&](double, Site x) {
    if (!first_ring)
      first_ring = x;
  };
  opt.on_flip = [&](double, Site x, Strategy s) {
    if (!first_flip) {
      first_flip = x;
      first_target = s;
    }
  };
  const auto r = simulate(StrategyField(g, Strategy::One), GameParams(-1, -1), 5, 3, opt);
  REQUIRE(first_ring);
  REQUIRE(first_flip);
  CHECK(*first_ring == *first_flip);
  CHECK(*first_target == Strategy::Two);
  CHECK(r.events_processed > 0);
}

TEST_CASE("absorbing start ends at time zero and stays put") {
  const auto g = Geometry::lattice({8, 8});
  const GameParams fig(1.01, 1);
  StrategyField block(g);
  for (int i : {2, 3})
    for (int j : {2, 3})
      block.set(g->site({i, j}));
  REQUIRE(oracle::absorbing(oracle::bits_of(block), g->sides(), fig));
  for (auto scheme : kSchemes) {
    const auto r = run(scheme, block, fig, 100, 1);
    CHECK(r.absorbed);
    CHECK(r.absorption_time == 0.0);
    CHECK(r.final == block);
    CHECK(r.flips == 0);
    CHECK(r.end_time == 0.0);
  }
  CHECK(simulate_active_set(block, fig, 100, 1).events_processed == 0);
  CHECK_THROWS_AS(simulate(block, fig, 0, 1), InvalidInput);
  CHECK_THROWS_AS(simulate_active_set(block, fig, -1, 1), InvalidInput);
}

TEST_CASE("absorbed final states are frozen under further dynamics") {
  const auto g = Geometry::lattice({12, 12});
  const GameParams params(1.01, 1);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto r = simulate_active_set(random_field(g, 0.2, seed), params, 1e4, seed);
    REQUIRE(r.absorbed);
    for (auto scheme : kSchemes) {
      const auto again = run(scheme, r.final, params, 50, seed + 1000);
      CHECK(again.final == r.final);
      CHECK(again.flips == 0);
    }
  }
}

TEST_CASE("single isolated 1 flips exactly once") {
  const auto g = Geometry::lattice({8, 8});
  StrategyField eta(g);
  eta.set(g->site({4, 4}));
  const auto r = simulate_active_set(eta, GameParams(1.01, 1), 100, 9);
  CHECK(r.absorbed);
  CHECK(r.flips == 1);
  CHECK(r.events_processed == 1);
  CHECK(r.final.none());
}

TEST_CASE("series grid and captures") {
  const auto g = Geometry::lattice({64, 64});
  const GameParams params(1.01, 1);  // still evolving at t = 10 on this lattice
  std::vector<double> seen;
  RunOptions opt;
  opt.record_every = 0.5;
  opt.capture_times = {3.0, 1.0, 20.0};
  opt.on_capture = [&](double t, const StrategyField& f) {
    seen.push_back(t);
    CHECK(f.size() == 4096);
  };
  const auto r = simulate(random_field(g, 0.3, 4), params, 10, 4, opt);
  REQUIRE_FALSE(r.absorbed);
  CHECK(seen == std::vector<double>{1.0, 3.0});
  REQUIRE(r.series.size() == 21);
  for (std::size_t k = 0; k < r.series.size(); ++k)
    CHECK(r.series[k].t == doctest::Approx(0.5 * static_cast<double>(k)));
  check_report_invariants(r, params);
}

TEST_CASE("runs are deterministic in the seed") {
  const auto g = Geometry::lattice({16, 16});
  for (auto scheme : kSchemes) {
    RunOptions opt;
    opt.record_every = 1;
    const auto a = run(scheme, random_field(g, 0.3, 1), GameParams(1.01, 1), 100, 77, opt);
    const auto b = run(scheme, random_field(g, 0.3, 1), GameParams(1.01, 1), 100, 77, opt);
    CHECK(a.final == b.final);
    CHECK(a.events_processed == b.events_processed);
    REQUIRE(a.series.size() == b.series.size());
    for (std::size_t k = 0; k < a.series.size(); ++k) {
      CHECK(a.series[k].t == b.series[k].t);
      CHECK(a.series[k].flips == b.series[k].flips);
    }
  }
}

TEST_CASE("active-set scheme matches the naive scheme in law") {
  // d=1, L=200, p=0.1, a=(2,1), 200 seeds: mean final density, two-sided 99%.
  const auto g = Geometry::lattice({200});
  const GameParams params(2, 1);
  constexpr int seeds = 200;
  auto stats = [&](Scheme scheme, std::uint64_t family) {
    double sum = 0, sum_sq = 0;
    for (int s = 0; s < seeds; ++s) {
      const auto eta0 = random_field(g, 0.1, derive_seed(family, static_cast<std::uint64_t>(s), 0));
      const auto r = run(scheme, eta0, params, 1e5, derive_seed(family, static_cast<std::uint64_t>(s), 1));
      REQUIRE(r.absorbed);
      const double d1 = r.final.density();
      sum += d1;
      sum_sq += d1 * d1;
    }
    const double mean = sum / seeds;
    const double var = (sum_sq - seeds * mean * mean) / (seeds - 1);
    return std::pair{mean, var};
  };
  const auto [m_naive, v_naive] = stats(Scheme::Naive, 11);
  const auto [m_active, v_active] = stats(Scheme::ActiveSet, 12);
  const double se = std::sqrt(v_naive / seeds + v_active / seeds);
  CHECK(std::abs(m_naive - m_active) <= 2.576 * se + 1e-12);
}

TEST_CASE("sparse runs grow monotonically and end at the closure") {
  const auto g = Geometry::lattice({16, 16});
  const GameParams params(1.01, 1);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto eta0 = random_block_union(g, 0.25, seed);
    const auto expected = oracle_closure(oracle::bits_of(eta0), g->sides(), params);
    for (auto scheme : kSchemes) {
      std::uint64_t losses = 0;
      RunOptions opt;
      opt.on_flip = [&](double, Site, Strategy s) { losses += s == Strategy::Two; };
      const auto r = run(scheme, eta0, params, 1e4, derive_seed(seed, 5), opt);
      CHECK(losses == 0);
      REQUIRE(r.absorbed);
      CHECK(oracle::bits_of(r.final) == expected);
    }
  }
}

TEST_CASE("coupled runs preserve nesting") {
  const GameParams fig(1.01, 1);
  SUBCASE("empty inside full") {
    const auto g = Geometry::lattice({8, 8});
    const auto rep = simulate_coupled({StrategyField(g), StrategyField(g, Strategy::One)}, fig, 50, 1);
    CHECK(rep.nested_pairs == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}});
    CHECK(rep.nesting_violations == 0);
    CHECK(rep.runs.size() == 2);
  }
  SUBCASE("sparse reduction inside its source, 50 seeds") {
    const auto g = Geometry::lattice({32, 32});
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto eta0 = random_field(g, 0.3, derive_seed(seed, 0));
      const auto rep = simulate_coupled({sparse_reduce(eta0), eta0}, fig, 50, derive_seed(seed, 1));
      CHECK(rep.nesting_violations == 0);
      CHECK(rep.nesting_checks == rep.events * rep.nested_pairs.size());
      CHECK(rep.events > 0);
    }
  }
  SUBCASE("non-nested pair still runs") {
    const auto g = Geometry::lattice({8, 8});
    StrategyField a(g), b(g);
    a.set(0);
    b.set(9);
    const auto rep = simulate_coupled({a, b}, fig, 10, 2);
    CHECK(rep.nested_pairs.empty());
    CHECK(rep.runs.size() == 2);
  }
  SUBCASE("the audit catches anti-monotone dynamics") {
    const auto g = Geometry::lattice({8, 8});
    const auto rep =
        simulate_coupled({StrategyField(g), StrategyField(g, Strategy::One)}, GameParams(-1, -1), 10, 3);
    CHECK(rep.nesting_violations > 0);
    REQUIRE(rep.first_violation);
    CHECK(rep.first_violation->inner == 0);
  }
  SUBCASE("a single coupled field follows the naive run") {
    const auto g = Geometry::lattice({16, 16});
    const auto eta0 = random_field(g, 0.3, 8);
    const auto rep = simulate_coupled({eta0}, fig, 200, 21);
    const auto solo = simulate(eta0, fig, 200, 21);
    CHECK(rep.runs[0].final == solo.final);
    CHECK(rep.runs[0].flips == solo.flips);
  }
  CHECK_THROWS_AS(simulate_coupled({}, fig, 1, 1), InvalidInput);
  CHECK_THROWS_AS(
      simulate_coupled({StrategyField(Geometry::lattice({4, 4})), StrategyField(Geometry::lattice({4, 6}))}, fig,
                       1, 1),
      InvalidInput);
}

TEST_CASE("richardson_init") {
  const auto g = Geometry::lattice({8, 8});
  StrategyField lone(g);
  lone.set(g->site({0, 0}));
  lone.set(g->site({2, 2}));
  lone.set(g->site({5, 5}));
  CHECK(richardson_init(lone).none());

  StrategyField pair(g);
  pair.set(g->site({3, 3}));
  pair.set(g->site({3, 4}));
  pair.set(g->site({6, 0}));
  const auto pi = richardson_init(pair);
  CHECK(pi.count() == 2);
  CHECK(pi.test(g->site({3, 3})));
  CHECK(pi.test(g->site({3, 4})));

  CHECK(richardson_init(StrategyField(g, Strategy::One)).all());
}

TEST_CASE("simulate_richardson") {
  const auto g = Geometry::lattice({16, 16});
  {
    const auto r = simulate_richardson(InfectionField(g), 100, 1);
    CHECK(r.final.none());
    CHECK(r.saturated);
    CHECK(r.events == 0);
  }
  {
    InfectionField full(g);
    full.fill(true);
    const auto r = simulate_richardson(full, 100, 1);
    CHECK(r.final.all());
    CHECK(r.events == 0);
  }
  SUBCASE("single seed on a ring covers it by 10 L") {
    constexpr int L = 200;
    const auto ring = Geometry::lattice({L});
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      InfectionField pi0(ring);
      pi0.set(static_cast<Site>(seed % L));
      const auto r = simulate_richardson(pi0, 10.0 * L, seed, 1.0);
      CHECK(r.final.all());
      CHECK(r.saturated);
      double last = 0;
      for (const auto& pt : r.series) {
        CHECK(pt.infected_fraction >= last);
        last = pt.infected_fraction;
      }
      // frontier has two sites at rate 1 each: about L/2 time units
      CHECK(*r.saturation_time < 10.0 * L);
    }
  }
}

TEST_CASE("richardson domination") {
  SUBCASE("d=1, a=(2,1), L=200, 50 seeds") {
    const auto g = Geometry::lattice({200});
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto eta0 = random_field(g, 0.1, derive_seed(seed, 0));
      const auto rep = check_richardson_domination(eta0, GameParams(2, 1), 1e4, derive_seed(seed, 1));
      CHECK(rep.violations == 0);
      CHECK(rep.checks > 0);
      if (richardson_init(eta0).count() > 0) {
        CHECK(rep.final_infection.all());
        CHECK(rep.final_strategy.all());
      }
    }
  }
  SUBCASE("empty infection is vacuous") {
    const auto g = Geometry::lattice({8, 8});
    StrategyField eta(g);
    eta.set(g->site({1, 1}));
    const auto rep = check_richardson_domination(eta, GameParams(4, 1), 100, 3);
    CHECK(rep.violations == 0);
    CHECK(rep.final_infection.none());
  }
  SUBCASE("d=2, a=(4,1), p=0.2, 20 seeds on 64x64") {
    const auto g = Geometry::lattice({64, 64});
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto rep = check_richardson_domination(random_field(g, 0.2, derive_seed(seed, 0)), GameParams(4, 1), 200,
                                                   derive_seed(seed, 1));
      CHECK(rep.violations == 0);
      REQUIRE(rep.all_one_time);
      CHECK(*rep.all_one_time <= 200);
    }
  }
  const auto g2 = Geometry::lattice({8, 8});
  CHECK_THROWS_AS(check_richardson_domination(StrategyField(g2), GameParams(1.01, 1), 10, 1), InvalidInput);
  CHECK_THROWS_AS(check_richardson_domination(StrategyField(g2), GameParams(4, 0), 10, 1), InvalidInput);
}
