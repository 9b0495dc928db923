#pragma once

#include <cmath>
#include <vector>

#include "wsnet/population.hpp"
#include "wsnet/rng.hpp"
#include "wsnet/scenario.hpp"

namespace wsnet::test {

// Single AP on `channels`, noise identical across them unless per-channel
// values are given.
inline Scenario single_ap(double bandwidth_hz, double power_mw,
                          double radius_m, std::vector<int> channels,
                          std::vector<double> noise_mw, int channel_count) {
  ApConfig ap;
  ap.position = {0.0, 0.0};
  ap.power_mw = power_mw;
  ap.coverage_radius_m = radius_m;
  ap.feasible_channels = std::move(channels);
  ap.noise_mw = std::move(noise_mw);
  return Scenario(channel_count, bandwidth_hz, 4.0, {std::move(ap)});
}

inline ApConfig make_ap(double x, double y, double power_mw, double radius_m,
                        std::vector<int> channels, double noise_mw) {
  ApConfig ap;
  ap.position = {x, y};
  ap.power_mw = power_mw;
  ap.coverage_radius_m = radius_m;
  ap.feasible_channels = std::move(channels);
  ap.noise_mw.assign(ap.feasible_channels.size(), noise_mw);
  return ap;
}

// Small random instance with O(1..20)-scale utilities (unit bandwidth), the
// workhorse for the exhaustive property tests. Noise varies per channel so
// the min/max noise bounds are exercised.
inline Scenario random_scenario(Rng& rng, int n_aps, int n_channels,
                                double side = 50.0) {
  std::vector<ApConfig> aps;
  const double radius = 1.0;
  std::vector<Vec2> positions;
  while (static_cast<int>(positions.size()) < n_aps) {
    Vec2 p{rng.uniform_real(0.0, side), rng.uniform_real(0.0, side)};
    bool ok = true;
    for (const Vec2& q : positions)
      if (euclidean(p, q) < radius) ok = false;
    if (ok) positions.push_back(p);
  }
  for (int n = 0; n < n_aps; ++n) {
    ApConfig ap;
    ap.position = positions[static_cast<std::size_t>(n)];
    ap.power_mw = rng.uniform_real(5.0, 50.0);
    ap.coverage_radius_m = radius;
    for (int ch = 1; ch <= n_channels; ++ch)
      if (rng.uniform() < 0.7) ap.feasible_channels.push_back(ch);
    if (ap.feasible_channels.empty())
      ap.feasible_channels.push_back(
          1 + static_cast<int>(rng.uniform_index(
                  static_cast<std::size_t>(n_channels))));
    for (std::size_t c = 0; c < ap.feasible_channels.size(); ++c)
      ap.noise_mw.push_back(rng.uniform_real(0.5, 2.0));
    aps.push_back(std::move(ap));
  }
  return Scenario(n_channels, 1.0, 3.0, std::move(aps));
}

// Random population for association tests: gains in [1, 1.5], deltas in
// [0, delta_max], initial APs uniform.
inline UserPopulation random_population(Rng& rng, int n_users, int n_aps,
                                        double delta_max = 0.2,
                                        int lambda_max = 10) {
  std::vector<UserConfig> users;
  std::vector<int> initial;
  for (int k = 0; k < n_users; ++k) {
    UserConfig user;
    for (int n = 0; n < n_aps; ++n)
      user.gains.push_back(rng.uniform_real(1.0, 1.5));
    user.mobility_cost_mbps_per_m = rng.uniform_real(0.0, delta_max);
    users.push_back(std::move(user));
    initial.push_back(static_cast<int>(
        rng.uniform_index(static_cast<std::size_t>(n_aps))));
  }
  return UserPopulation(std::move(users), std::move(initial), lambda_max,
                        n_aps);
}

}  // namespace wsnet::test
