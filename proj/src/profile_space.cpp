#include "wsnet/profile_space.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace wsnet {

ProfileSpace::ProfileSpace(const Scenario& scenario, EnumerationGuard guard)
    : scenario_(&scenario) {
  const double total = scenario.profile_space_size();
  if (total > static_cast<double>(guard.max_profiles)) {
    std::ostringstream os;
    os << "profile space too large to enumerate: |Theta| = " << total
       << " exceeds cap " << guard.max_profiles;
    throw std::invalid_argument(os.str());
  }
  size_ = static_cast<std::size_t>(total);

  const int n_aps = scenario.ap_count();
  stride_.assign(static_cast<std::size_t>(n_aps), 1);
  for (int n = n_aps - 2; n >= 0; --n)
    stride_[static_cast<std::size_t>(n)] =
        stride_[static_cast<std::size_t>(n + 1)] *
        scenario.ap(n + 1).feasible_channels.size();
}

ChannelProfile ProfileSpace::at(std::size_t index) const {
  if (index >= size_)
    throw std::invalid_argument("ProfileSpace::at: index out of range");
  ChannelProfile profile;
  profile.channels.resize(stride_.size());
  for (std::size_t n = 0; n < stride_.size(); ++n) {
    const auto& feasible = scenario_->ap(static_cast<int>(n)).feasible_channels;
    profile.channels[n] = feasible[index / stride_[n]];
    index %= stride_[n];
  }
  return profile;
}

std::size_t ProfileSpace::index_of(const ChannelProfile& profile) const {
  validate_profile(*scenario_, profile);
  std::size_t index = 0;
  for (std::size_t n = 0; n < stride_.size(); ++n) {
    const auto& feasible = scenario_->ap(static_cast<int>(n)).feasible_channels;
    const auto it =
        std::lower_bound(feasible.begin(), feasible.end(), profile.channels[n]);
    index += static_cast<std::size_t>(it - feasible.begin()) * stride_[n];
  }
  return index;
}

}  // namespace wsnet
