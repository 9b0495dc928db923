#include "wsnet/population.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wsnet {

namespace {

[[noreturn]] void fail(const std::string& msg) {
  throw std::invalid_argument(msg);
}

void validate_user(const UserConfig& user, int k, int ap_count) {
  std::ostringstream prefix;
  prefix << "users[" << k << "].";
  const std::string p = prefix.str();
  if (user.gains.size() != static_cast<std::size_t>(ap_count))
    fail(p + "gains: one entry per AP required");
  for (double h : user.gains)
    if (!(h >= 1.0)) fail(p + "gains: must be >= 1");
  if (!(user.mobility_cost_mbps_per_m >= 0.0))
    fail(p + "mobility_cost: must be >= 0");
  if (!user.distance_override.empty()) {
    if (user.distance_override.size() != static_cast<std::size_t>(ap_count))
      fail(p + "distance_override: must be N x N");
    for (const auto& row : user.distance_override)
      if (row.size() != static_cast<std::size_t>(ap_count))
        fail(p + "distance_override: must be N x N");
    for (int n = 0; n < ap_count; ++n) {
      if (user.distance_override[static_cast<std::size_t>(n)]
                                [static_cast<std::size_t>(n)] != 0.0)
        fail(p + "distance_override: diagonal must be 0");
      for (int m = 0; m < ap_count; ++m)
        if (!(user.distance_override[static_cast<std::size_t>(n)]
                                    [static_cast<std::size_t>(m)] >= 0.0))
          fail(p + "distance_override: entries must be >= 0");
    }
  }
}

}  // namespace

UserPopulation::UserPopulation(std::vector<UserConfig> users,
                               std::vector<int> initial_aps, int lambda_max,
                               int ap_count)
    : users_(std::move(users)),
      state_(std::move(initial_aps)),
      contention_(lambda_max,
                  std::max(64, static_cast<int>(users_.size()) + 1)) {
  if (ap_count < 1) fail("population: ap_count must be >= 1");
  if (state_.size() != users_.size())
    fail("population: one initial AP per user required");
  for (std::size_t k = 0; k < users_.size(); ++k) {
    validate_user(users_[k], static_cast<int>(k), ap_count);
    if (state_[k] < 0 || state_[k] >= ap_count) {
      std::ostringstream os;
      os << "users[" << k << "].initial_ap: AP index out of range";
      fail(os.str());
    }
  }
}

double UserPopulation::move_distance(const Scenario& scenario, int k, int dest,
                                     int origin) const {
  if (dest == origin) return 0.0;
  const UserConfig& user = users_[static_cast<std::size_t>(k)];
  if (!user.distance_override.empty())
    return user.distance_override[static_cast<std::size_t>(dest)]
                                 [static_cast<std::size_t>(origin)];
  return euclidean(scenario.ap(dest).position, scenario.ap(origin).position);
}

double user_rate(const Scenario& scenario, const ChannelProfile& eq_profile,
                 const UserPopulation& population, int k, int b,
                 const std::vector<int>& association) {
  if (b < 0 || b >= scenario.ap_count())
    throw std::invalid_argument("user_rate: AP index out of range");
  int contenders = 1;  // user k itself, counted at b
  for (std::size_t i = 0; i < association.size(); ++i)
    if (static_cast<int>(i) != k && association[i] == b) ++contenders;
  return population.gain(k, b) * throughput(scenario, eq_profile, b) *
         population.contention().success(contenders);
}

double user_rate(const Scenario& scenario, const ChannelProfile& eq_profile,
                 const UserPopulation& population, int k, int b) {
  return user_rate(scenario, eq_profile, population, k, b, population.state());
}

}  // namespace wsnet
