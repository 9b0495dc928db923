#pragma once

#include <vector>

#include "wsnet/profile_space.hpp"
#include "wsnet/scenario.hpp"

namespace wsnet {

// Channel in M_n maximizing AP n's own throughput with the rest of the
// profile fixed. Ties break toward the smallest channel id, so the result is
// deterministic.
int best_response(const Scenario& scenario, const ChannelProfile& profile,
                  int n);

// True iff no AP has a unilateral deviation improving its throughput beyond
// the kImprovementEps relative threshold.
bool verify_ne(const Scenario& scenario, const ChannelProfile& profile);

struct BestResponseStage {
  int stage;  // 1-based sweep index
  ChannelProfile profile;  // state after the sweep
  double phi;
  std::vector<double> ap_throughputs;
  int changes;  // accepted channel switches during the sweep

  bool operator==(const BestResponseStage&) const = default;
};

struct BestResponseRun {
  ChannelProfile initial_profile;
  std::vector<BestResponseStage> trace;
  ChannelProfile final_profile;
  bool converged = false;
  // Full sweeps until a sweep changed nothing (that quiet sweep included).
  int stages_to_converge = 0;
  // Accepted per-AP channel switches; reported alongside sweeps since
  // "iteration" is ambiguous between the two conventions.
  int update_count = 0;
};

// Round-robin best response from the all-smallest-channels profile: each AP
// in id order switches to its best response when that strictly improves its
// throughput. The potential game structure guarantees termination; the cap
// (|Theta| sweeps, clamped to [64, 1e6]) only trips on an implementation bug,
// and then throws std::runtime_error.
BestResponseRun run_noncooperative(const Scenario& scenario);

struct PoaReport {
  double worst_ne_throughput = 0.0;
  double best_ne_throughput = 0.0;
  double optimal_throughput = 0.0;
  double poa = 0.0;          // worst NE / optimum, in (0, 1]
  double lower_bound = 0.0;  // closed-form PoA floor
  std::size_t ne_count = 0;
};

// Per-AP throughput floor at any Nash equilibrium:
//   B log2(1 + (P_n/d_n^theta) / (max-noise_n + total-interference_n / |M_n|)).
double ne_ap_throughput_lower_bound(const Scenario& scenario, int n);

// Closed-form lower bound for the price of anarchy (bandwidth cancels).
double poa_lower_bound(const Scenario& scenario);

// Enumerates all Nash equilibria over the profile space and reports the
// worst/best equilibrium value against the optimum. Throws std::runtime_error
// if no equilibrium is found (impossible for this game; signals a bug) or if
// the computed PoA falls below the closed-form bound.
PoaReport price_of_anarchy(const Scenario& scenario,
                           EnumerationGuard guard = EnumerationGuard{});

}  // namespace wsnet
