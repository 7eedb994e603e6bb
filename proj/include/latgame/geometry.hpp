#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace latgame {

using Site = std::uint32_t;
using Coord = std::vector<int>;

// Periodic d-dimensional box. Sites are linearized row-major: the last
// coordinate varies fastest. The neighbor table lists, for each site and each
// axis j in order, x - e_j then x + e_j.
class Geometry {
 public:
  // Generic torus; every side must be at least 2. Used directly for coarse
  // lattices, whose sides may be odd.
  explicit Geometry(std::vector<int> sides);

  // The fine lattice: sides even and at least 4, so the 2^d hypercubes tile it.
  static std::shared_ptr<const Geometry> lattice(std::vector<int> sides);
  static std::shared_ptr<const Geometry> cube(int dim, int side);

  int dim() const noexcept { return static_cast<int>(sides_.size()); }
  int degree() const noexcept { return 2 * dim(); }
  const std::vector<int>& sides() const noexcept { return sides_; }
  std::size_t site_count() const noexcept { return site_count_; }

  // Wraps each coordinate into range, so any integer vector is accepted.
  Site site(std::span<const int> coords) const;
  Site site(std::initializer_list<int> coords) const {
    return site(std::span<const int>(coords.begin(), coords.size()));
  }
  Coord coords(Site x) const;

  std::span<const Site> neighbors(Site x) const noexcept {
    return {neighbor_table_.data() + static_cast<std::size_t>(x) * degree(),
            static_cast<std::size_t>(degree())};
  }

  bool is_even_lattice() const noexcept;

  friend bool operator==(const Geometry& a, const Geometry& b) noexcept {
    return a.sides_ == b.sides_;
  }

 private:
  std::vector<int> sides_;
  std::vector<std::size_t> strides_;
  std::size_t site_count_ = 0;
  std::vector<Site> neighbor_table_;
};

using GeometryPtr = std::shared_ptr<const Geometry>;

// Coarse lattice indexing the hypercubes H_z = 2z + {0,1}^d of an even lattice.
GeometryPtr coarse_geometry(const Geometry& fine);

}  // namespace latgame
