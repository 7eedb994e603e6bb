#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "latgame/geometry.hpp"

namespace latgame::detail {

// Dense set of sites with O(1) insert, erase, membership and uniform indexing.
class ActiveSet {
 public:
  explicit ActiveSet(std::size_t universe) : slot_(universe, kAbsent) {}

  bool contains(Site x) const noexcept { return slot_[x] != kAbsent; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  Site operator[](std::size_t i) const noexcept { return members_[i]; }

  void insert(Site x) {
    if (contains(x))
      return;
    slot_[x] = static_cast<std::uint32_t>(members_.size());
    members_.push_back(x);
  }

  void erase(Site x) noexcept {
    const std::uint32_t i = slot_[x];
    if (i == kAbsent)
      return;
    const Site last = members_.back();
    members_[i] = last;
    slot_[last] = i;
    members_.pop_back();
    slot_[x] = kAbsent;
  }

  void assign(Site x, bool present) {
    if (present)
      insert(x);
    else
      erase(x);
  }

 private:
  static constexpr std::uint32_t kAbsent = std::numeric_limits<std::uint32_t>::max();
  std::vector<Site> members_;
  std::vector<std::uint32_t> slot_;
};

}  // namespace latgame::detail
