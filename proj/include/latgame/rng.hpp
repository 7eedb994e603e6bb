#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace latgame {

// splitmix64 finalizer; used to derive independent child seeds.
std::uint64_t mix_seed(std::uint64_t x) noexcept;
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) noexcept;

// mt19937_64 with distribution transforms done here rather than through
// <random> distributions, whose algorithms differ between standard libraries.
// Streams are therefore bit-identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix_seed(seed)) {}

  std::uint64_t next_u64() noexcept { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // Uniform on the open interval (0, 1).
  double uniform_open() noexcept { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }
  // Uniform integer in [0, n); n > 0. Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t n) noexcept;
  double exponential(double rate) noexcept;

 private:
  std::mt19937_64 engine_;
};

// Superposition of independent rate-one Poisson clocks, one per eligible
// site: the next ring comes after an Exp(n) gap at a uniformly chosen site.
class EventStream {
 public:
  explicit EventStream(std::uint64_t seed) : rng_(seed) {}

  struct Event {
    double time;
    std::size_t index;  // position in the caller's eligible set
  };

  // eligible > 0. Times are strictly increasing.
  Event next(std::size_t eligible) noexcept;
  double time() const noexcept { return time_; }

 private:
  Rng rng_;
  double time_ = 0.0;
};

}  // namespace latgame
