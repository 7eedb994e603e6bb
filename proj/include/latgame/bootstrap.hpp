#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "latgame/field.hpp"

namespace latgame {

// Synchronous rule: occupied stays occupied, an empty site becomes occupied
// iff at least m of its 2d neighbors are occupied. 1 <= m <= 2d.
OccupancyField bootstrap_step(const OccupancyField& xi, int m);

struct BootstrapLimit {
  OccupancyField field;
  std::size_t steps = 0;  // steps that changed something
};

BootstrapLimit bootstrap_limit_with_steps(OccupancyField xi0, int m);
OccupancyField bootstrap_limit(OccupancyField xi0, int m);

// Per-axis (modified) rule: an empty site becomes occupied iff along every
// axis at least one of its two neighbors is occupied. Occupies a subset of
// what bootstrap_step(xi, d) occupies.
OccupancyField per_axis_bootstrap_step(const OccupancyField& xi);
OccupancyField per_axis_bootstrap_limit(OccupancyField xi0);

bool is_fully_occupied(const BitField& xi) noexcept;

struct SweepCell {
  int side = 0;
  double q = 0;
  int seeds = 0;
  int full = 0;
  double fraction_full = 0;
};

struct SweepResult {
  int dim = 0;
  int m = 0;
  std::vector<SweepCell> cells;  // side-major, then q in input order

  const SweepCell& at(int side, double q) const;
};

// For each side L and seed, one field of uniforms U_z is drawn and reused for
// every q (site occupied iff U_z < q), so fraction_full is monotone in q seed
// by seed. Replicas run in parallel over at most `workers` threads (0: default).
SweepResult sweep_critical_density(int dim, int m, std::span<const int> sides, std::span<const double> qs,
                                   int seeds, std::uint64_t master_seed, int workers = 0);

}  // namespace latgame
