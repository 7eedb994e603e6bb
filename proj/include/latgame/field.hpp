#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "latgame/geometry.hpp"

namespace latgame {

// One bit per site, packed into 64-bit words. Padding bits past site_count()
// are always zero, so word-level comparisons are exact.
class BitField {
 public:
  explicit BitField(GeometryPtr geometry);

  const Geometry& geometry() const noexcept { return *geometry_; }
  const GeometryPtr& geometry_ptr() const noexcept { return geometry_; }
  std::size_t size() const noexcept { return geometry_->site_count(); }

  bool test(Site x) const noexcept { return (words_[x >> 6] >> (x & 63)) & 1ULL; }
  void set(Site x, bool value = true) noexcept {
    const std::uint64_t mask = 1ULL << (x & 63);
    if (value)
      words_[x >> 6] |= mask;
    else
      words_[x >> 6] &= ~mask;
  }
  void flip(Site x) noexcept { words_[x >> 6] ^= 1ULL << (x & 63); }
  void fill(bool value) noexcept;

  std::size_t count() const noexcept;
  double density() const noexcept { return static_cast<double>(count()) / static_cast<double>(size()); }
  bool none() const noexcept { return count() == 0; }
  bool all() const noexcept { return count() == size(); }

  // Set relations; both operands must live on equal geometries.
  bool subset_of(const BitField& other) const;
  std::optional<Site> first_not_in(const BitField& other) const;

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::span<std::uint64_t> words() noexcept { return words_; }
  void clear_padding() noexcept;

  friend bool operator==(const BitField& a, const BitField& b) {
    return *a.geometry_ == *b.geometry_ && a.words_ == b.words_;
  }

 protected:
  void require_same_geometry(const BitField& other) const;

 private:
  GeometryPtr geometry_;
  std::vector<std::uint64_t> words_;
};

enum class Strategy : std::uint8_t { One = 1, Two = 2 };

inline Strategy other(Strategy s) noexcept { return s == Strategy::One ? Strategy::Two : Strategy::One; }

// The configuration eta, stored as its strategy-1 set.
class StrategyField : public BitField {
 public:
  explicit StrategyField(GeometryPtr geometry, Strategy fill_with = Strategy::Two);

  static StrategyField from_bits(const BitField& ones);

  Strategy strategy(Site x) const noexcept { return test(x) ? Strategy::One : Strategy::Two; }
  void set_strategy(Site x, Strategy s) noexcept { set(x, s == Strategy::One); }
};

// Boolean field on a coarse lattice: the bootstrap state xi and the hypercubic view zeta.
class OccupancyField : public BitField {
 public:
  using BitField::BitField;
  static OccupancyField from_bits(const BitField& bits);
};

// Infected set of the Richardson growth model.
class InfectionField : public BitField {
 public:
  using BitField::BitField;
};

}  // namespace latgame
