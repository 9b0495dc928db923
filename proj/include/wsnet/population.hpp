#pragma once

#include <vector>

#include "wsnet/contention.hpp"
#include "wsnet/scenario.hpp"
#include "wsnet/throughput.hpp"

namespace wsnet {

// One secondary user. Gains are per-AP (H >= 1); mobility_cost is the Mbps
// penalty per meter moved. distance_override, when present, replaces the
// AP-position distances for this user's moves and may be asymmetric; it is
// indexed [destination][origin].
struct UserConfig {
  std::vector<double> gains;                           // one per AP
  double mobility_cost_mbps_per_m = 0.0;               // delta_k
  std::vector<std::vector<double>> distance_override;  // optional, N x N
};

// Secondary users plus their current locations (the associated APs) and the
// contention model they share. Immutable after construction.
class UserPopulation {
 public:
  UserPopulation(std::vector<UserConfig> users, std::vector<int> initial_aps,
                 int lambda_max, int ap_count);

  int user_count() const { return static_cast<int>(users_.size()); }
  const std::vector<UserConfig>& users() const { return users_; }
  const UserConfig& user(int k) const { return users_[static_cast<std::size_t>(k)]; }
  // s: current AP per user, 0-based AP indices.
  const std::vector<int>& state() const { return state_; }
  const ContentionModel& contention() const { return contention_; }

  double gain(int k, int ap) const {
    return users_[static_cast<std::size_t>(k)].gains[static_cast<std::size_t>(ap)];
  }

  // Distance charged for user k moving to `dest` from `origin`, in meters.
  double move_distance(const Scenario& scenario, int k, int dest,
                       int origin) const;

 private:
  std::vector<UserConfig> users_;
  std::vector<int> state_;
  ContentionModel contention_;
};

// Average data rate of user k when associated with AP b, in bps:
//   H[k][b] * U_b(profile) * g(x_b),
// where x_b counts user k itself plus every other user whose entry in
// `association` is b.
double user_rate(const Scenario& scenario, const ChannelProfile& eq_profile,
                 const UserPopulation& population, int k, int b,
                 const std::vector<int>& association);

// Convenience overload using the population's own state as the association.
double user_rate(const Scenario& scenario, const ChannelProfile& eq_profile,
                 const UserPopulation& population, int k, int b);

}  // namespace wsnet
