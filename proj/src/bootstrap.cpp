#include "latgame/bootstrap.hpp"

#include <omp.h>

#include <cmath>
#include <string>

#include "latgame/error.hpp"
#include "latgame/kernels.hpp"
#include "latgame/rng.hpp"

namespace latgame {

namespace {
void check_threshold(const Geometry& g, int m) {
  if (m < 1 || m > g.degree())
    throw InvalidInput("bootstrap threshold m=" + std::to_string(m) + " outside [1, 2d]");
}
}  // namespace

OccupancyField bootstrap_step(const OccupancyField& xi, int m) {
  check_threshold(xi.geometry(), m);
  OccupancyField out(xi.geometry_ptr());
  kernels::parallel::bootstrap_step(xi, m, out);
  return out;
}

BootstrapLimit bootstrap_limit_with_steps(OccupancyField xi0, int m) {
  check_threshold(xi0.geometry(), m);
  OccupancyField next(xi0.geometry_ptr());
  std::size_t steps = 0;
  while (true) {
    kernels::parallel::bootstrap_step(xi0, m, next);
    if (next == xi0)
      break;
    std::swap(xi0, next);
    ++steps;
  }
  return {std::move(xi0), steps};
}

OccupancyField bootstrap_limit(OccupancyField xi0, int m) {
  return bootstrap_limit_with_steps(std::move(xi0), m).field;
}

OccupancyField per_axis_bootstrap_step(const OccupancyField& xi) {
  const Geometry& g = xi.geometry();
  const auto d = static_cast<std::size_t>(g.dim());
  OccupancyField out = xi;
  for (std::size_t i = 0; i < xi.size(); ++i) {
    const auto z = static_cast<Site>(i);
    if (xi.test(z))
      continue;
    const auto nb = g.neighbors(z);
    bool every_axis = true;
    for (std::size_t j = 0; j < d && every_axis; ++j)
      every_axis = xi.test(nb[2 * j]) || xi.test(nb[2 * j + 1]);
    if (every_axis)
      out.set(z);
  }
  return out;
}

OccupancyField per_axis_bootstrap_limit(OccupancyField xi0) {
  for (;;) {
    OccupancyField next = per_axis_bootstrap_step(xi0);
    if (next == xi0)
      return xi0;
    xi0 = std::move(next);
  }
}

bool is_fully_occupied(const BitField& xi) noexcept { return xi.all(); }

const SweepCell& SweepResult::at(int side, double q) const {
  for (const auto& c : cells)
    if (c.side == side && c.q == q)
      return c;
  throw InvalidInput("no sweep cell for side " + std::to_string(side));
}

SweepResult sweep_critical_density(int dim, int m, std::span<const int> sides, std::span<const double> qs,
                                   int seeds, std::uint64_t master_seed, int workers) {
  if (sides.empty() || qs.empty())
    throw InvalidInput("sweep needs at least one side and one density");
  if (seeds < 1)
    throw InvalidInput("sweep needs at least one seed");
  if (dim < 1)
    throw InvalidInput("dimension must be at least 1");
  if (m < 1 || m > 2 * dim)
    throw InvalidInput("bootstrap threshold m=" + std::to_string(m) + " outside [1, 2d]");
  for (double q : qs)
    if (!(q >= 0 && q <= 1))
      throw InvalidInput("densities must lie in [0, 1]");

  std::vector<GeometryPtr> geometries;
  for (int L : sides)
    geometries.push_back(std::make_shared<const Geometry>(std::vector<int>(static_cast<std::size_t>(dim), L)));

  // full[(side_index * seeds + seed) * |q| + qi]
  const std::size_t nq = qs.size();
  std::vector<char> full(sides.size() * static_cast<std::size_t>(seeds) * nq, 0);
  const auto tasks = static_cast<std::int64_t>(sides.size() * static_cast<std::size_t>(seeds));
  const int threads = workers > 0 ? workers : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::int64_t task = 0; task < tasks; ++task) {
    const auto li = static_cast<std::size_t>(task) / static_cast<std::size_t>(seeds);
    const auto si = static_cast<std::size_t>(task) % static_cast<std::size_t>(seeds);
    const GeometryPtr& g = geometries[li];
    Rng rng(derive_seed(master_seed, li, si));
    std::vector<double> u(g->site_count());
    for (auto& v : u)
      v = rng.uniform();
    for (std::size_t qi = 0; qi < nq; ++qi) {
      OccupancyField xi(g);
      for (std::size_t z = 0; z < u.size(); ++z)
        if (u[z] < qs[qi])
          xi.set(static_cast<Site>(z));
      const OccupancyField limit = bootstrap_limit(std::move(xi), m);
      full[static_cast<std::size_t>(task) * nq + qi] = is_fully_occupied(limit);
    }
  }

  SweepResult result;
  result.dim = dim;
  result.m = m;
  for (std::size_t li = 0; li < sides.size(); ++li) {
    for (std::size_t qi = 0; qi < nq; ++qi) {
      int count = 0;
      for (std::size_t si = 0; si < static_cast<std::size_t>(seeds); ++si)
        count += full[(li * static_cast<std::size_t>(seeds) + si) * nq + qi];
      result.cells.push_back({sides[li], qs[qi], seeds, count, static_cast<double>(count) / seeds});
    }
  }
  return result;
}

}  // namespace latgame
