#include "wsnet/throughput.hpp"

#include <cmath>
#include <stdexcept>

namespace wsnet {

namespace {

double interference_on_channel(const Scenario& scenario,
                               const ChannelProfile& profile, int n,
                               int channel) {
  double sum = 0.0;
  for (int i = 0; i < scenario.ap_count(); ++i)
    if (i != n && profile[static_cast<std::size_t>(i)] == channel)
      sum += scenario.cross_gain_mw(i, n);
  return sum;
}

double rate_bps(const Scenario& scenario, int n, int channel,
                double interference_mw) {
  const double denom = scenario.noise_mw(n, channel) + interference_mw;
  if (!(denom > 0.0))
    throw std::invalid_argument(
        "throughput: zero noise with no interferers gives an unbounded rate");
  const double sinr = scenario.signal_mw(n) / denom;
  return scenario.bandwidth_hz() * std::log2(1.0 + sinr);
}

}  // namespace

double co_channel_interference_mw(const Scenario& scenario,
                                  const ChannelProfile& profile, int n) {
  return interference_on_channel(scenario, profile, n,
                                 profile[static_cast<std::size_t>(n)]);
}

double throughput(const Scenario& scenario, const ChannelProfile& profile,
                  int n) {
  const int channel = profile[static_cast<std::size_t>(n)];
  return rate_bps(scenario, n, channel,
                  interference_on_channel(scenario, profile, n, channel));
}

double throughput_with(const Scenario& scenario, const ChannelProfile& profile,
                       int n, int channel) {
  return rate_bps(scenario, n, channel,
                  interference_on_channel(scenario, profile, n, channel));
}

double system_throughput(const Scenario& scenario,
                         const ChannelProfile& profile) {
  double sum = 0.0;
  for (int n = 0; n < scenario.ap_count(); ++n)
    sum += throughput(scenario, profile, n);
  return sum;
}

double potential_phi(const Scenario& scenario, const ChannelProfile& profile) {
  double pairwise = 0.0;
  for (int i = 0; i < scenario.ap_count(); ++i)
    for (int j = 0; j < scenario.ap_count(); ++j)
      if (i != j && profile[static_cast<std::size_t>(i)] ==
                        profile[static_cast<std::size_t>(j)])
        pairwise += scenario.ap(i).power_mw * scenario.cross_gain_mw(j, i);
  double noise_term = 0.0;
  for (int i = 0; i < scenario.ap_count(); ++i)
    noise_term += scenario.ap(i).power_mw *
                  scenario.noise_mw(i, profile[static_cast<std::size_t>(i)]);
  return -pairwise - 2.0 * noise_term;
}

}  // namespace wsnet
