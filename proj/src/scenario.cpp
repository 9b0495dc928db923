#include "wsnet/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wsnet {

namespace {

[[noreturn]] void fail(const std::string& msg) {
  throw std::invalid_argument(msg);
}

std::string ap_field(int n, const char* field) {
  std::ostringstream os;
  os << "aps[" << n << "]." << field;
  return os.str();
}

}  // namespace

double euclidean(const Vec2& a, const Vec2& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

Scenario::Scenario(int channel_count, double bandwidth_hz,
                   double path_loss_exponent, std::vector<ApConfig> aps,
                   std::vector<std::vector<double>> distance_override)
    : channel_count_(channel_count),
      bandwidth_hz_(bandwidth_hz),
      theta_(path_loss_exponent),
      aps_(std::move(aps)) {
  if (channel_count_ < 1) fail("channel_count: must be >= 1");
  if (!(bandwidth_hz_ > 0.0)) fail("bandwidth: must be > 0");
  if (!(theta_ > 0.0)) fail("path_loss_exponent: must be > 0");
  if (aps_.empty()) fail("aps: at least one AP required");

  const std::size_t n_aps = aps_.size();
  for (std::size_t n = 0; n < n_aps; ++n) {
    const ApConfig& ap = aps_[n];
    const int ni = static_cast<int>(n);
    if (!(ap.power_mw > 0.0)) fail(ap_field(ni, "power: must be > 0"));
    if (!(ap.coverage_radius_m > 0.0))
      fail(ap_field(ni, "coverage_radius: must be > 0"));
    if (ap.feasible_channels.empty())
      fail(ap_field(ni, "feasible_channels: must be non-empty"));
    if (!std::is_sorted(ap.feasible_channels.begin(), ap.feasible_channels.end()))
      fail(ap_field(ni, "feasible_channels: must be sorted ascending"));
    if (std::adjacent_find(ap.feasible_channels.begin(),
                           ap.feasible_channels.end()) !=
        ap.feasible_channels.end())
      fail(ap_field(ni, "feasible_channels: duplicate channel id"));
    for (int ch : ap.feasible_channels)
      if (ch < 1 || ch > channel_count_)
        fail(ap_field(ni, "feasible_channels: channel id out of 1..M"));
    if (ap.noise_mw.size() != ap.feasible_channels.size())
      fail(ap_field(ni, "noise: one entry per feasible channel required"));
    for (double w : ap.noise_mw)
      if (!(w >= 0.0) || !std::isfinite(w))
        fail(ap_field(ni, "noise: must be finite and >= 0"));
  }

  // Distance table: explicit override or center-to-center Euclidean.
  if (!distance_override.empty()) {
    has_override_ = true;
    if (distance_override.size() != n_aps)
      fail("distance_override: must be N x N");
    for (std::size_t i = 0; i < n_aps; ++i)
      if (distance_override[i].size() != n_aps)
        fail("distance_override: must be N x N");
    for (std::size_t i = 0; i < n_aps; ++i) {
      if (distance_override[i][i] != 0.0)
        fail("distance_override: diagonal must be 0");
      for (std::size_t j = i + 1; j < n_aps; ++j) {
        if (distance_override[i][j] != distance_override[j][i])
          fail("distance_override: table must be symmetric");
        if (!(distance_override[i][j] > 0.0))
          fail("distance_override: off-diagonal entries must be > 0");
      }
    }
    dist_ = std::move(distance_override);
  } else {
    dist_.assign(n_aps, std::vector<double>(n_aps, 0.0));
    for (std::size_t i = 0; i < n_aps; ++i)
      for (std::size_t j = i + 1; j < n_aps; ++j)
        dist_[i][j] = dist_[j][i] = euclidean(aps_[i].position, aps_[j].position);
  }

  // Near-field guard: the 1/d^theta law blows up when APs sit inside each
  // other's coverage area.
  for (std::size_t i = 0; i < n_aps; ++i)
    for (std::size_t j = i + 1; j < n_aps; ++j) {
      const double min_d =
          std::max(aps_[i].coverage_radius_m, aps_[j].coverage_radius_m);
      if (dist_[i][j] < min_d) {
        std::ostringstream os;
        os << "aps: distance between APs " << i << " and " << j << " ("
           << dist_[i][j] << " m) is below the larger coverage radius ("
           << min_d << " m)";
        fail(os.str());
      }
    }

  signal_.resize(n_aps);
  cross_gain_.assign(n_aps, std::vector<double>(n_aps, 0.0));
  for (std::size_t i = 0; i < n_aps; ++i) {
    signal_[i] = aps_[i].power_mw / std::pow(aps_[i].coverage_radius_m, theta_);
    for (std::size_t j = 0; j < n_aps; ++j)
      if (i != j)
        cross_gain_[i][j] = aps_[i].power_mw / std::pow(dist_[i][j], theta_);
  }
}

bool Scenario::feasible(int n, int channel) const {
  const auto& fs = aps_[static_cast<std::size_t>(n)].feasible_channels;
  return std::binary_search(fs.begin(), fs.end(), channel);
}

double Scenario::noise_mw(int n, int channel) const {
  const ApConfig& ap = aps_[static_cast<std::size_t>(n)];
  const auto it = std::lower_bound(ap.feasible_channels.begin(),
                                   ap.feasible_channels.end(), channel);
  if (it == ap.feasible_channels.end() || *it != channel) {
    std::ostringstream os;
    os << "noise lookup: channel " << channel << " not feasible for AP " << n;
    fail(os.str());
  }
  return ap.noise_mw[static_cast<std::size_t>(it - ap.feasible_channels.begin())];
}

double Scenario::max_noise_mw(int n) const {
  const auto& w = aps_[static_cast<std::size_t>(n)].noise_mw;
  return *std::max_element(w.begin(), w.end());
}

double Scenario::min_noise_mw(int n) const {
  const auto& w = aps_[static_cast<std::size_t>(n)].noise_mw;
  return *std::min_element(w.begin(), w.end());
}

double Scenario::profile_space_size() const {
  double size = 1.0;
  for (const ApConfig& ap : aps_)
    size *= static_cast<double>(ap.feasible_channels.size());
  return size;
}

void validate_profile(const Scenario& scenario, const ChannelProfile& profile) {
  if (profile.size() != static_cast<std::size_t>(scenario.ap_count()))
    fail("profile: one channel per AP required");
  for (int n = 0; n < scenario.ap_count(); ++n)
    if (!scenario.feasible(n, profile[static_cast<std::size_t>(n)])) {
      std::ostringstream os;
      os << "profile[" << n << "]: channel " << profile[static_cast<std::size_t>(n)]
         << " not in AP " << n << "'s feasible set";
      fail(os.str());
    }
}

}  // namespace wsnet
