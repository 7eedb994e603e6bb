#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "latgame/harness/config.hpp"

namespace latgame::harness {

struct VerifyItem {
  std::string id;    // L1, L2, L3, L4, L4m, L5
  std::string name;
  bool skipped = false;
  std::string reason;
  std::uint64_t checks = 0;
  std::uint64_t violations = 0;
  std::uint64_t inconclusive = 0;  // seeds whose run did not absorb by t_max
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyItem> items;

  bool passed() const noexcept;
  const VerifyItem& item(const std::string& id) const;
};

// L1 nested coupled runs stay nested; L2 the sparse run never loses a
// strategy-1 site; L3 phi^n of sampled sparse states stays inside the
// absorbing state; L4 bootstrap limit (m = d) of the initial hypercubic view
// is inside the final hypercubic view; L4m the same with the per-axis rule;
// L5 coarse initial density matches p^(2^d) within a 99.9% binomial band.
// Skipped items do not fail the report.
//
// For d >= 2, L4 can report genuine violations: two occupied hypercubes on
// opposite sides of H_z satisfy the m = d rule, yet every site of H_z then has
// a single strategy-1 neighbor and never converts. L4m requires one occupied
// neighbor per axis, which is what the corner-growth argument actually uses.
VerifyReport verify_suite(const ExperimentConfig& config);

}  // namespace latgame::harness
