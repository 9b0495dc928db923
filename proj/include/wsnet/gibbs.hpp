#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wsnet/profile_space.hpp"
#include "wsnet/rng.hpp"
#include "wsnet/scenario.hpp"

namespace wsnet {

// gamma is the inverse temperature applied to the system throughput in
// whatever unit the scenario's bandwidth implies; larger gamma concentrates
// the stationary distribution on the optimal profile at the price of slower
// mixing.
struct GibbsConfig {
  double gamma = 1.0;
  std::int64_t iterations = 1000;
  std::uint64_t seed = 0;
  std::optional<ChannelProfile> initial_profile;  // default: uniform per AP
};

struct GibbsTraceEntry {
  std::int64_t iteration;  // 1-based
  int updated_ap;
  ChannelProfile profile;  // state after the update
  std::vector<double> ap_throughputs;
  double system_throughput;

  bool operator==(const GibbsTraceEntry&) const = default;
};

struct GibbsRun {
  ChannelProfile initial_profile;
  std::vector<GibbsTraceEntry> trace;
  ChannelProfile final_profile;
  double time_average_system_throughput = 0.0;
  // Best profile visited along the run; the natural output when the chain is
  // used as an optimizer.
  ChannelProfile best_profile;
  double best_system_throughput = 0.0;
};

// One asynchronous update of AP n: draws a channel from M_n with probability
// proportional to exp(gamma * system_throughput(candidate, rest)). Exponents
// are max-shifted before exponentiating so large gamma cannot overflow.
ChannelProfile gibbs_step(const Scenario& scenario,
                          const ChannelProfile& profile, int n, double gamma,
                          Rng& rng);

// Incremental form of the cooperative channel selection chain, for long runs
// where storing a trace is wasteful. Each step picks an AP uniformly at
// random and applies gibbs_step.
class CoopChain {
 public:
  CoopChain(const Scenario& scenario, const GibbsConfig& config);

  const ChannelProfile& profile() const { return profile_; }
  // Advances one iteration; returns the AP that updated.
  int step();

 private:
  const Scenario* scenario_;
  double gamma_;
  Rng rng_;
  ChannelProfile profile_;
};

// Runs the chain for config.iterations steps recording the full trace,
// running time-average and best-visited profile.
GibbsRun run_cooperative(const Scenario& scenario, const GibbsConfig& config);

// Boltzmann distribution over the enumerated profile space (ProfileSpace
// order): q*_a = exp(gamma * S(a)) / sum_a' exp(gamma * S(a')).
std::vector<double> stationary_distribution(
    const Scenario& scenario, double gamma,
    EnumerationGuard guard = EnumerationGuard{});

struct OptimalityGap {
  double expected_throughput;  // S_bar under the stationary distribution
  double optimal_throughput;   // S* over the enumerated space
  double bound;                // ln|Theta| / gamma
};

// Exact gap accounting: 0 <= S* - S_bar <= ln|Theta|/gamma.
// Requires gamma > 0 (the bound is undefined at 0).
OptimalityGap optimality_gap_bound(const Scenario& scenario, double gamma,
                                   EnumerationGuard guard = EnumerationGuard{});

}  // namespace wsnet
