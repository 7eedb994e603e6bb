#include "latgame/rng.hpp"

#include <cmath>

namespace latgame {

__extension__ using u128 = unsigned __int128;

std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return mix_seed(mix_seed(master) ^ (index * 0xd1b54a32d192ed03ULL + 1));
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) noexcept {
  return derive_seed(derive_seed(master, a), b);
}

std::uint64_t Rng::below(std::uint64_t n) noexcept {
  u128 m = static_cast<u128>(engine_()) * n;
  std::uint64_t low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      m = static_cast<u128>(engine_()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double Rng::exponential(double rate) noexcept { return -std::log(uniform_open()) / rate; }

EventStream::Event EventStream::next(std::size_t eligible) noexcept {
  double t = time_ + rng_.exponential(static_cast<double>(eligible));
  if (!(t > time_))
    t = std::nextafter(time_, INFINITY);
  time_ = t;
  return {t, static_cast<std::size_t>(rng_.below(eligible))};
}

}  // namespace latgame
