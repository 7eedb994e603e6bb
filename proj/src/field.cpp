#include "latgame/field.hpp"

#include <bit>

#include "latgame/error.hpp"

namespace latgame {

BitField::BitField(GeometryPtr geometry) : geometry_(std::move(geometry)) {
  if (!geometry_)
    throw InvalidInput("field needs a geometry");
  words_.assign((geometry_->site_count() + 63) / 64, 0);
}

void BitField::fill(bool value) noexcept {
  for (auto& w : words_)
    w = value ? ~0ULL : 0ULL;
  clear_padding();
}

void BitField::clear_padding() noexcept {
  const std::size_t tail = size() % 64;
  if (tail != 0)
    words_.back() &= (1ULL << tail) - 1;
}

std::size_t BitField::count() const noexcept {
  std::size_t n = 0;
  for (auto w : words_)
    n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

void BitField::require_same_geometry(const BitField& other) const {
  if (!(*geometry_ == *other.geometry_))
    throw InvalidInput("fields live on different geometries");
}

bool BitField::subset_of(const BitField& other) const {
  require_same_geometry(other);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i])
      return false;
  return true;
}

std::optional<Site> BitField::first_not_in(const BitField& other) const {
  require_same_geometry(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    const std::uint64_t extra = words_[i] & ~other.words_[i];
    if (extra)
      return static_cast<Site>(i * 64 + static_cast<std::size_t>(std::countr_zero(extra)));
  }
  return std::nullopt;
}

StrategyField::StrategyField(GeometryPtr geometry, Strategy fill_with) : BitField(std::move(geometry)) {
  if (fill_with == Strategy::One)
    fill(true);
}

StrategyField StrategyField::from_bits(const BitField& ones) {
  StrategyField f(ones.geometry_ptr());
  std::copy(ones.words().begin(), ones.words().end(), f.words().begin());
  return f;
}

OccupancyField OccupancyField::from_bits(const BitField& bits) {
  OccupancyField f(bits.geometry_ptr());
  std::copy(bits.words().begin(), bits.words().end(), f.words().begin());
  return f;
}

}  // namespace latgame
