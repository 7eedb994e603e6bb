#include <doctest.h>

#include "latgame/bootstrap.hpp"
#include "latgame/kernels.hpp"
#include "latgame/rng.hpp"

using namespace latgame;
namespace ks = latgame::kernels::serial;
namespace kp = latgame::kernels::parallel;

// Sides chosen to exercise partial last words and words spanning rows.
TEST_CASE("serial and parallel kernels are bit-identical") {
  Rng rng(2718);
  for (auto sides : {std::vector<int>{4}, std::vector<int>{130}, std::vector<int>{6, 10}, std::vector<int>{64, 64},
                     std::vector<int>{18, 22}, std::vector<int>{4, 6, 8}, std::vector<int>{4, 4, 4, 4}}) {
    const auto g = Geometry::lattice(sides);
    const auto cg = coarse_geometry(*g);
    CAPTURE(g->site_count());
    for (int trial = 0; trial < 25; ++trial) {
      const GameParams p(rng.uniform() * 4 - 2, static_cast<double>(rng.below(3)));
      const auto eta = random_field(g, rng.uniform(), rng.next_u64());

      StrategyField a(g), b(g);
      ks::phi(eta, p, a);
      kp::phi(eta, p, b);
      CHECK(a == b);
      CHECK(ks::count_active(eta, p) == kp::count_active(eta, p));

      OccupancyField za(cg), zb(cg);
      ks::hypercubic_view(eta, za);
      kp::hypercubic_view(eta, zb);
      CHECK(za == zb);

      StrategyField ea(g), eb(g);
      ks::expand_hypercubes(za, ea);
      kp::expand_hypercubes(za, eb);
      CHECK(ea == eb);

      const auto xi = OccupancyField::from_bits(random_field(g, rng.uniform(), rng.next_u64()));
      for (int m = 1; m <= g->degree(); ++m) {
        OccupancyField ba(g), bb(g);
        ks::bootstrap_step(xi, m, ba);
        kp::bootstrap_step(xi, m, bb);
        CHECK(ba == bb);
      }
    }
  }
}

TEST_CASE("kernel outputs keep padding bits clear") {
  const auto g = Geometry::lattice({10});
  const auto eta = StrategyField(g, Strategy::One);
  StrategyField out(g);
  kp::phi(eta, GameParams(1, 1), out);
  CHECK(out.all());
  CHECK((out.words()[0] >> 10) == 0);
}
