#include "latgame/geometry.hpp"

#include <limits>
#include <string>

#include "latgame/error.hpp"

namespace latgame {

Geometry::Geometry(std::vector<int> sides) : sides_(std::move(sides)) {
  if (sides_.empty())
    throw InvalidInput("geometry needs at least one dimension");
  std::size_t count = 1;
  for (int s : sides_) {
    if (s < 2)
      throw InvalidInput("side length " + std::to_string(s) + " is below 2");
    count *= static_cast<std::size_t>(s);
    if (count > std::numeric_limits<Site>::max())
      throw InvalidInput("lattice too large for 32-bit site indices");
  }
  site_count_ = count;

  const int d = dim();
  strides_.assign(d, 1);
  for (int j = d - 2; j >= 0; --j)
    strides_[j] = strides_[j + 1] * static_cast<std::size_t>(sides_[j + 1]);

  neighbor_table_.resize(site_count_ * degree());
  Coord c(d, 0);
  for (std::size_t x = 0; x < site_count_; ++x) {
    Site* row = neighbor_table_.data() + x * degree();
    for (int j = 0; j < d; ++j) {
      const std::size_t s = static_cast<std::size_t>(sides_[j]);
      const std::size_t cj = static_cast<std::size_t>(c[j]);
      const std::size_t down = (cj + s - 1) % s;
      const std::size_t up = (cj + 1) % s;
      row[2 * j] = static_cast<Site>(x - cj * strides_[j] + down * strides_[j]);
      row[2 * j + 1] = static_cast<Site>(x - cj * strides_[j] + up * strides_[j]);
    }
    // odometer increment, last coordinate fastest
    for (int j = d - 1; j >= 0; --j) {
      if (++c[j] < sides_[j])
        break;
      c[j] = 0;
    }
  }
}

GeometryPtr Geometry::lattice(std::vector<int> sides) {
  for (int s : sides) {
    if (s < 4 || s % 2 != 0)
      throw InvalidInput("lattice side " + std::to_string(s) + " must be even and at least 4");
  }
  return std::make_shared<const Geometry>(std::move(sides));
}

GeometryPtr Geometry::cube(int dim, int side) {
  if (dim < 1)
    throw InvalidInput("dimension must be at least 1");
  return lattice(std::vector<int>(static_cast<std::size_t>(dim), side));
}

Site Geometry::site(std::span<const int> coords) const {
  if (coords.size() != sides_.size())
    throw InvalidInput("coordinate has " + std::to_string(coords.size()) + " components, lattice has " +
                       std::to_string(sides_.size()));
  std::size_t index = 0;
  for (std::size_t j = 0; j < coords.size(); ++j) {
    int v = coords[j] % sides_[j];
    if (v < 0)
      v += sides_[j];
    index += static_cast<std::size_t>(v) * strides_[j];
  }
  return static_cast<Site>(index);
}

Coord Geometry::coords(Site x) const {
  Coord c(sides_.size());
  std::size_t rest = x;
  for (std::size_t j = 0; j < sides_.size(); ++j) {
    c[j] = static_cast<int>(rest / strides_[j]);
    rest %= strides_[j];
  }
  return c;
}

bool Geometry::is_even_lattice() const noexcept {
  for (int s : sides_)
    if (s < 4 || s % 2 != 0)
      return false;
  return true;
}

GeometryPtr coarse_geometry(const Geometry& fine) {
  if (!fine.is_even_lattice())
    throw InvalidInput("coarse lattice needs even fine sides of at least 4");
  std::vector<int> coarse;
  coarse.reserve(fine.sides().size());
  for (int s : fine.sides())
    coarse.push_back(s / 2);
  return std::make_shared<const Geometry>(std::move(coarse));
}

}  // namespace latgame
