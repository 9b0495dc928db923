#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace wsnet {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

double euclidean(const Vec2& a, const Vec2& b);

// One white-space access point: location, transmission power, coverage radius
// and the vacant TV channels granted by the geo-location database. Noise
// entries (background plus incumbent interference, in mW) are aligned with
// feasible_channels.
struct ApConfig {
  Vec2 position;                       // meters
  double power_mw = 0.0;               // P_n
  double coverage_radius_m = 0.0;      // d_n, distance to the boundary user
  std::vector<int> feasible_channels;  // sorted ascending, ids in 1..M
  std::vector<double> noise_mw;        // one entry per feasible channel
};

// Channel choice per AP. Entries are channel ids (1-based), one per AP in
// scenario order.
struct ChannelProfile {
  std::vector<int> channels;

  int operator[](std::size_t n) const { return channels[n]; }
  int& operator[](std::size_t n) { return channels[n]; }
  std::size_t size() const { return channels.size(); }
  bool operator==(const ChannelProfile&) const = default;
};

// Immutable description of the radio environment: channels, APs and the
// pairwise distance table. Constructor validates all invariants and throws
// std::invalid_argument with a field-addressed message on violation.
//
// The inter-AP distance d_in is center-to-center Euclidean by default, which
// keeps the table symmetric (the interference potential requires d_ij = d_ji).
// A scenario may override the table explicitly with any symmetric matrix.
class Scenario {
 public:
  Scenario(int channel_count, double bandwidth_hz, double path_loss_exponent,
           std::vector<ApConfig> aps,
           std::vector<std::vector<double>> distance_override = {});

  int channel_count() const { return channel_count_; }
  double bandwidth_hz() const { return bandwidth_hz_; }
  double path_loss_exponent() const { return theta_; }
  int ap_count() const { return static_cast<int>(aps_.size()); }
  const ApConfig& ap(int n) const { return aps_[static_cast<std::size_t>(n)]; }
  const std::vector<ApConfig>& aps() const { return aps_; }
  bool has_distance_override() const { return has_override_; }

  double distance(int i, int j) const {
    return dist_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }

  bool feasible(int n, int channel) const;
  double noise_mw(int n, int channel) const;  // throws if channel infeasible for n
  double max_noise_mw(int n) const;
  double min_noise_mw(int n) const;

  // P_n / d_n^theta: received power at AP n's own boundary user.
  double signal_mw(int n) const { return signal_[static_cast<std::size_t>(n)]; }
  // P_i / d_in^theta: interference AP i inflicts on AP n (i != n).
  double cross_gain_mw(int i, int n) const {
    return cross_gain_[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)];
  }

  // |Theta| = prod |M_n|, as a double since it overflows integers quickly.
  double profile_space_size() const;

 private:
  int channel_count_;
  double bandwidth_hz_;
  double theta_;
  std::vector<ApConfig> aps_;
  bool has_override_ = false;
  std::vector<std::vector<double>> dist_;
  std::vector<std::vector<double>> cross_gain_;
  std::vector<double> signal_;
};

// Throws std::invalid_argument unless every entry of `profile` lies in the
// owning AP's feasible set.
void validate_profile(const Scenario& scenario, const ChannelProfile& profile);

}  // namespace wsnet
