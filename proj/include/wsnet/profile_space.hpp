#pragma once

#include <cstddef>
#include <vector>

#include "wsnet/scenario.hpp"

namespace wsnet {

// Enumeration refuses instances with more profiles than this; combinatorial
// blowups should fail loudly rather than hang CI.
struct EnumerationGuard {
  std::size_t max_profiles = 1'000'000;
};

// Mixed-radix counter over the per-AP feasible sets. Profile i has AP 0 as the
// most significant digit and channels in ascending order within each digit, so
// iteration order is lexicographic. This canonical order is what makes
// probability vectors from different modules comparable index-by-index.
class ProfileSpace {
 public:
  explicit ProfileSpace(const Scenario& scenario,
                        EnumerationGuard guard = EnumerationGuard{});

  std::size_t size() const { return size_; }
  ChannelProfile at(std::size_t index) const;
  // Index of a valid profile in enumeration order.
  std::size_t index_of(const ChannelProfile& profile) const;

 private:
  const Scenario* scenario_;
  std::size_t size_;
  std::vector<std::size_t> stride_;  // stride_[n]: profiles per step of digit n
};

}  // namespace wsnet
