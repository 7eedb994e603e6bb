// Serial reference kernels against their OpenMP counterparts, plus the two
// simulation schemes. Run with OMP_NUM_THREADS to vary the thread count.
//   latgame_bench [side] [repeats]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include "latgame/bootstrap.hpp"
#include "latgame/dynamics.hpp"
#include "latgame/kernels.hpp"
#include "latgame/reductions.hpp"
#include "latgame/rng.hpp"

using namespace latgame;

namespace {

double time_ms(int repeats, const std::function<void()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < repeats; ++i)
    body();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / repeats;
}

void row(const char* name, double serial_ms, double parallel_ms, bool same) {
  std::printf("%-18s serial %9.3f ms  omp %9.3f ms  speedup %5.2fx  %s\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms, same ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const int side = argc > 1 ? std::atoi(argv[1]) : 1024;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 5;
  std::printf("lattice %dx%d, %d threads, %d repeats\n", side, side, omp_get_max_threads(), repeats);

  const auto g = Geometry::cube(2, side);
  const GameParams params(1.01, 1.0);
  const StrategyField eta = random_field(g, 0.5, 7);
  int failures = 0;

  {
    StrategyField a(g), b(g);
    const double s = time_ms(repeats, [&] { kernels::serial::phi(eta, params, a); });
    const double p = time_ms(repeats, [&] { kernels::parallel::phi(eta, params, b); });
    row("phi", s, p, a == b);
    failures += !(a == b);
  }
  {
    std::size_t a = 0, b = 0;
    const double s = time_ms(repeats, [&] { a = kernels::serial::count_active(eta, params); });
    const double p = time_ms(repeats, [&] { b = kernels::parallel::count_active(eta, params); });
    row("count_active", s, p, a == b);
    failures += a != b;
  }
  {
    const auto cg = coarse_geometry(*g);
    OccupancyField a(cg), b(cg);
    const double s = time_ms(repeats, [&] { kernels::serial::hypercubic_view(eta, a); });
    const double p = time_ms(repeats, [&] { kernels::parallel::hypercubic_view(eta, b); });
    row("hypercubic_view", s, p, a == b);
    failures += !(a == b);

    StrategyField fa(g), fb(g);
    const double s2 = time_ms(repeats, [&] { kernels::serial::expand_hypercubes(a, fa); });
    const double p2 = time_ms(repeats, [&] { kernels::parallel::expand_hypercubes(a, fb); });
    row("expand_hypercubes", s2, p2, fa == fb);
    failures += !(fa == fb);
  }
  {
    const auto cg = std::make_shared<const Geometry>(std::vector<int>{side, side});
    OccupancyField xi(cg);
    Rng rng(11);
    for (std::size_t z = 0; z < xi.size(); ++z)
      if (rng.uniform() < 0.05)
        xi.set(static_cast<Site>(z));
    OccupancyField a(cg), b(cg);
    const double s = time_ms(repeats, [&] { kernels::serial::bootstrap_step(xi, 2, a); });
    const double p = time_ms(repeats, [&] { kernels::parallel::bootstrap_step(xi, 2, b); });
    row("bootstrap_step", s, p, a == b);
    failures += !(a == b);
  }
  {
    const auto small = Geometry::cube(2, std::min(side, 128));
    const StrategyField start = random_field(small, 0.2, 3);
    RunReport naive{StrategyField(small)}, active{StrategyField(small)};
    const double s = time_ms(1, [&] { naive = simulate(start, params, 50.0, 5); });
    const double p = time_ms(1, [&] { active = simulate_active_set(start, params, 50.0, 5); });
    std::printf("%-18s naive  %9.3f ms  active %8.3f ms  speedup %5.2fx  events %llu vs %llu\n", "simulate", s, p,
                s / p, static_cast<unsigned long long>(naive.events_processed),
                static_cast<unsigned long long>(active.events_processed));
  }
  return failures == 0 ? 0 : 1;
}
