#include "latgame/reductions.hpp"

#include <string>

#include "latgame/error.hpp"
#include "latgame/kernels.hpp"

namespace latgame {

StrategyField sparse_reduce(const StrategyField& eta) {
  return expand_hypercubes(hypercubic_view(eta), eta.geometry_ptr());
}

StrategyField phi(const StrategyField& eta, GameParams params) {
  StrategyField out(eta.geometry_ptr());
  kernels::parallel::phi(eta, params, out);
  return out;
}

StrategyField phi_iterate(StrategyField eta, GameParams params, std::size_t n) {
  if (n == 0)
    return eta;
  StrategyField next(eta.geometry_ptr());
  for (std::size_t i = 0; i < n; ++i) {
    kernels::parallel::phi(eta, params, next);
    std::swap(eta, next);
  }
  return eta;
}

PhiClosure phi_closure_with_depth(const StrategyField& eta, GameParams params) {
  StrategyField current = eta;
  StrategyField next(eta.geometry_ptr());
  const std::size_t bound = eta.size();
  for (std::size_t depth = 0; depth <= bound; ++depth) {
    kernels::parallel::phi(current, params, next);
    if (next == current)
      return {std::move(current), depth};
    if (auto lost = current.first_not_in(next))
      throw ContractViolation("phi iteration shrank at site " + std::to_string(*lost) + " (step " +
                              std::to_string(depth + 1) + "); input is not a monotone starting point");
    std::swap(current, next);
  }
  throw ContractViolation("phi iteration exceeded the site count without reaching a fixed point");
}

StrategyField phi_closure(const StrategyField& eta, GameParams params) {
  return phi_closure_with_depth(eta, params).field;
}

OccupancyField hypercubic_view(const StrategyField& eta) {
  OccupancyField coarse(coarse_geometry(eta.geometry()));
  kernels::parallel::hypercubic_view(eta, coarse);
  return coarse;
}

StrategyField expand_hypercubes(const OccupancyField& coarse, GeometryPtr fine) {
  StrategyField out(std::move(fine));
  kernels::parallel::expand_hypercubes(coarse, out);
  return out;
}

CornerCertificate corner_fill_certificate(int dim, GameParams params) {
  if (dim < 1 || dim > 3)
    throw InvalidInput("corner certificate is defined for d in {1, 2, 3}");
  if (!params.strictly_ordered_selfish())
    throw InvalidInput("corner certificate requires a1 > a2 > 0");

  constexpr int kSide = 8;
  auto fine = Geometry::cube(dim, kSide);
  OccupancyField blocks(coarse_geometry(*fine));
  const Coord z(static_cast<std::size_t>(dim), 2);
  for (int j = 0; j < dim; ++j) {
    Coord w = z;
    --w[static_cast<std::size_t>(j)];
    blocks.set(blocks.geometry().site(w));
  }
  StrategyField eta = expand_hypercubes(blocks, fine);

  CornerCertificate cert;
  cert.dim = dim;
  cert.target = z;
  cert.passed = true;
  cert.exact = true;

  const std::size_t corners = std::size_t{1} << dim;
  StrategyField current = eta;
  for (std::size_t n = 0; n <= static_cast<std::size_t>(dim) + 1; ++n) {
    if (n > 0)
      current = phi(current, params);
    CornerStage stage;
    stage.n = n;
    stage.layer_included = true;
    stage.exact = true;
    for (std::size_t mask = 0; mask < corners; ++mask) {
      Coord offset(static_cast<std::size_t>(dim));
      Coord site(static_cast<std::size_t>(dim));
      std::size_t weight = 0;
      for (int j = 0; j < dim; ++j) {
        offset[j] = (mask >> j) & 1;
        site[j] = 2 * z[j] + offset[j];
        weight += static_cast<std::size_t>(offset[j]);
      }
      const bool in_layer = weight < n;
      const bool filled = current.test(fine->site(site));
      if (filled)
        stage.filled.push_back(offset);
      if (in_layer && !filled)
        stage.layer_included = false;
      if (in_layer != filled)
        stage.exact = false;
    }
    if (n > 0 && !stage.layer_included)
      cert.passed = false;
    if (!stage.exact)
      cert.exact = false;
    cert.stages.push_back(std::move(stage));
  }
  return cert;
}

}  // namespace latgame
