#pragma once

#include <cstddef>
#include <vector>

#include "latgame/field.hpp"
#include "latgame/game.hpp"

namespace latgame {

// Union of all hypercubes H_z = 2z + {0,1}^d that are entirely strategy 1.
StrategyField sparse_reduce(const StrategyField& eta);

// Growth map: x is in the image iff a1 N1 > a2 N2, or x is in eta and
// a1 N1 = a2 N2. Evaluated synchronously from the frozen input.
StrategyField phi(const StrategyField& eta, GameParams params);

StrategyField phi_iterate(StrategyField eta, GameParams params, std::size_t n);

struct PhiClosure {
  StrategyField field;
  std::size_t depth = 0;  // smallest n with phi^(n+1) = phi^n
};

// Least fixed point of phi above eta, by iteration. Meant for a1 > a2 > 0 and
// eta a union of hypercubes; any shrinking step throws ContractViolation.
PhiClosure phi_closure_with_depth(const StrategyField& eta, GameParams params);
StrategyField phi_closure(const StrategyField& eta, GameParams params);

// zeta(z) = 1 iff H_z is entirely strategy 1.
OccupancyField hypercubic_view(const StrategyField& eta);

// Inverse direction: the union of H_z over occupied z. geometry must be the
// fine lattice whose coarse lattice carries `coarse`.
StrategyField expand_hypercubes(const OccupancyField& coarse, GeometryPtr fine);

struct CornerStage {
  std::size_t n = 0;
  std::vector<Coord> filled;  // offsets in {0,1}^d of H_z covered by phi^n
  bool layer_included = false;  // {offset : sum < n} subset of phi^n
  bool exact = false;           // H_z intersected with phi^n is exactly that layer
};

struct CornerCertificate {
  int dim = 0;
  Coord target;  // coarse index z
  std::vector<CornerStage> stages;  // n = 0 .. d+1
  bool passed = false;  // every n = 1..d+1 has layer_included
  bool exact = false;   // every stage is exact as well
};

// Starts from the union of H_(z - e_j), j = 1..d, on a torus of side 8 and
// follows H_z through phi^n. Requires a1 > a2 > 0 and d in {1, 2, 3}.
CornerCertificate corner_fill_certificate(int dim, GameParams params);

}  // namespace latgame
