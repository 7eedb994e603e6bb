#include "latgame/kernels.hpp"

#include <algorithm>

#include <cstdint>
#include <vector>

#include "latgame/error.hpp"

namespace latgame::kernels {

namespace {

std::vector<std::size_t> strides_of(const std::vector<int>& sides) {
  std::vector<std::size_t> s(sides.size(), 1);
  for (int j = static_cast<int>(sides.size()) - 2; j >= 0; --j)
    s[j] = s[j + 1] * static_cast<std::size_t>(sides[j + 1]);
  return s;
}

// Index arithmetic between a fine even lattice and its coarse lattice.
struct BlockMap {
  std::vector<std::size_t> fine_strides;
  std::vector<std::size_t> coarse_strides;
  std::vector<std::size_t> offsets;  // fine index deltas of {0,1}^d

  BlockMap(const Geometry& fine, const Geometry& coarse) {
    const auto d = static_cast<std::size_t>(fine.dim());
    if (coarse.dim() != fine.dim())
      throw InvalidInput("coarse and fine dimensions differ");
    for (std::size_t j = 0; j < d; ++j)
      if (coarse.sides()[j] * 2 != fine.sides()[j])
        throw InvalidInput("coarse lattice does not match the fine lattice");
    fine_strides = strides_of(fine.sides());
    coarse_strides = strides_of(coarse.sides());
    offsets.resize(std::size_t{1} << d);
    for (std::size_t mask = 0; mask < offsets.size(); ++mask) {
      std::size_t delta = 0;
      for (std::size_t j = 0; j < d; ++j)
        if (mask & (std::size_t{1} << j))
          delta += fine_strides[j];
      offsets[mask] = delta;
    }
  }

  std::size_t base_of(std::size_t z) const {
    std::size_t base = 0;
    for (std::size_t j = 0; j < coarse_strides.size(); ++j) {
      const std::size_t c = z / coarse_strides[j];
      z %= coarse_strides[j];
      base += 2 * c * fine_strides[j];
    }
    return base;
  }

  std::size_t block_of(std::size_t x) const {
    std::size_t z = 0;
    for (std::size_t j = 0; j < fine_strides.size(); ++j) {
      const std::size_t c = x / fine_strides[j];
      x %= fine_strides[j];
      z += (c / 2) * coarse_strides[j];
    }
    return z;
  }
};

void require_same(const Geometry& a, const Geometry& b) {
  if (!(a == b))
    throw InvalidInput("input and output fields live on different geometries");
}

inline int ones_around(const StrategyField& eta, Site x) noexcept {
  int n1 = 0;
  for (Site y : eta.geometry().neighbors(x))
    n1 += eta.test(y);
  return n1;
}

inline bool phi_member(const StrategyField& in, GameParams params, Site x) noexcept {
  const int n1 = ones_around(in, x);
  const int n2 = in.geometry().degree() - n1;
  const double gain1 = params.a1 * n1;
  const double gain2 = params.a2 * n2;
  return gain1 > gain2 || (in.test(x) && gain1 == gain2);
}

inline bool is_active(const StrategyField& eta, GameParams params, Site x) noexcept {
  const int n1 = ones_around(eta, x);
  return flip_target(params, {n1, eta.geometry().degree() - n1}, eta.strategy(x)).has_value();
}

inline bool bootstrap_member(const OccupancyField& in, int m, Site z) noexcept {
  if (in.test(z))
    return true;
  int occupied = 0;
  for (Site w : in.geometry().neighbors(z))
    occupied += in.test(w);
  return occupied >= m;
}

// Evaluates `bit(x)` for every site and writes whole output words, one word
// per loop iteration.
template <class Bit>
void fill_words_parallel(BitField& out, Bit bit) {
  const std::size_t n = out.size();
  auto words = out.words();
  const auto nwords = static_cast<std::int64_t>(words.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t w = 0; w < nwords; ++w) {
    const std::size_t begin = static_cast<std::size_t>(w) * 64;
    const std::size_t end = std::min(begin + 64, n);
    std::uint64_t word = 0;
    for (std::size_t x = begin; x < end; ++x)
      if (bit(static_cast<Site>(x)))
        word |= 1ULL << (x - begin);
    words[static_cast<std::size_t>(w)] = word;
  }
}

}  // namespace

namespace serial {

void phi(const StrategyField& in, GameParams params, StrategyField& out) {
  require_same(in.geometry(), out.geometry());
  for (std::size_t x = 0; x < in.size(); ++x)
    out.set(static_cast<Site>(x), phi_member(in, params, static_cast<Site>(x)));
}

std::size_t count_active(const StrategyField& eta, GameParams params) {
  std::size_t n = 0;
  for (std::size_t x = 0; x < eta.size(); ++x)
    n += is_active(eta, params, static_cast<Site>(x));
  return n;
}

void bootstrap_step(const OccupancyField& in, int m, OccupancyField& out) {
  require_same(in.geometry(), out.geometry());
  for (std::size_t z = 0; z < in.size(); ++z)
    out.set(static_cast<Site>(z), bootstrap_member(in, m, static_cast<Site>(z)));
}

void hypercubic_view(const StrategyField& fine, OccupancyField& coarse) {
  const BlockMap map(fine.geometry(), coarse.geometry());
  for (std::size_t z = 0; z < coarse.size(); ++z) {
    const std::size_t base = map.base_of(z);
    bool full = true;
    for (std::size_t off : map.offsets)
      full = full && fine.test(static_cast<Site>(base + off));
    coarse.set(static_cast<Site>(z), full);
  }
}

void expand_hypercubes(const OccupancyField& coarse, StrategyField& fine) {
  const BlockMap map(fine.geometry(), coarse.geometry());
  fine.fill(false);
  for (std::size_t z = 0; z < coarse.size(); ++z) {
    if (!coarse.test(static_cast<Site>(z)))
      continue;
    const std::size_t base = map.base_of(z);
    for (std::size_t off : map.offsets)
      fine.set(static_cast<Site>(base + off));
  }
}

}  // namespace serial

namespace parallel {

void phi(const StrategyField& in, GameParams params, StrategyField& out) {
  require_same(in.geometry(), out.geometry());
  fill_words_parallel(out, [&](Site x) { return phi_member(in, params, x); });
}

std::size_t count_active(const StrategyField& eta, GameParams params) {
  const auto n = static_cast<std::int64_t>(eta.size());
  std::size_t total = 0;
#pragma omp parallel for schedule(static) reduction(+ : total)
  for (std::int64_t x = 0; x < n; ++x)
    total += is_active(eta, params, static_cast<Site>(x));
  return total;
}

void bootstrap_step(const OccupancyField& in, int m, OccupancyField& out) {
  require_same(in.geometry(), out.geometry());
  fill_words_parallel(out, [&](Site z) { return bootstrap_member(in, m, z); });
}

void hypercubic_view(const StrategyField& fine, OccupancyField& coarse) {
  const BlockMap map(fine.geometry(), coarse.geometry());
  fill_words_parallel(coarse, [&](Site z) {
    const std::size_t base = map.base_of(z);
    for (std::size_t off : map.offsets)
      if (!fine.test(static_cast<Site>(base + off)))
        return false;
    return true;
  });
}

void expand_hypercubes(const OccupancyField& coarse, StrategyField& fine) {
  const BlockMap map(fine.geometry(), coarse.geometry());
  fill_words_parallel(fine, [&](Site x) { return coarse.test(static_cast<Site>(map.block_of(x))); });
}

}  // namespace parallel

}  // namespace latgame::kernels
