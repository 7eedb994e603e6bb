#pragma once

#include <cstddef>

#include "latgame/field.hpp"
#include "latgame/game.hpp"

// Whole-field kernels. Each exists twice: a serial reference written
// site-by-site for readability, and an OpenMP version that parallelizes over
// 64-bit output words so that no two threads ever write the same word.
// Outputs are bit-identical between the two for any thread count.
namespace latgame::kernels {

namespace serial {
void phi(const StrategyField& in, GameParams params, StrategyField& out);
std::size_t count_active(const StrategyField& eta, GameParams params);
void bootstrap_step(const OccupancyField& in, int m, OccupancyField& out);
void hypercubic_view(const StrategyField& fine, OccupancyField& coarse);
void expand_hypercubes(const OccupancyField& coarse, StrategyField& fine);
}  // namespace serial

namespace parallel {
void phi(const StrategyField& in, GameParams params, StrategyField& out);
std::size_t count_active(const StrategyField& eta, GameParams params);
void bootstrap_step(const OccupancyField& in, int m, OccupancyField& out);
void hypercubic_view(const StrategyField& fine, OccupancyField& coarse);
void expand_hypercubes(const OccupancyField& coarse, StrategyField& fine);
}  // namespace parallel

}  // namespace latgame::kernels
