#pragma once

#include "wsnet/scenario.hpp"

namespace wsnet {

// Accumulated co-channel interference at AP n's boundary user, in mW:
// sum over i != n with a_i = a_n of P_i / d_in^theta.
double co_channel_interference_mw(const Scenario& scenario,
                                  const ChannelProfile& profile, int n);

// Worst-case downlink throughput of AP n under the physical interference
// model, in bps:
//   B * log2(1 + (P_n/d_n^theta) / (noise + co-channel interference)).
double throughput(const Scenario& scenario, const ChannelProfile& profile,
                  int n);

// Same, but with AP n's channel replaced by `channel` (the rest of the
// profile fixed). Used by unilateral-deviation scans.
double throughput_with(const Scenario& scenario, const ChannelProfile& profile,
                       int n, int channel);

// System-wide throughput: sum of per-AP throughputs, in bps.
double system_throughput(const Scenario& scenario,
                         const ChannelProfile& profile);

// Interference potential of the channel selection game (mW^2 scale):
//   Phi(a) = - sum_i sum_{j != i} (P_i P_j / d_ij^theta) 1{a_i = a_j}
//            - 2 sum_i P_i * noise_i(a_i).
// For any unilateral deviation, sign(delta Phi) equals sign(delta U_n).
double potential_phi(const Scenario& scenario, const ChannelProfile& profile);

}  // namespace wsnet
