#pragma once

#include <cstdint>
#include <vector>

#include "wsnet/profile_space.hpp"
#include "wsnet/scenario.hpp"

namespace wsnet {
// Brute-force reference implementations, used only by tests and --verify.
// Deliberately written without calling the algorithm modules so that a
// disagreement between an oracle and the main path means something.
namespace oracle {

struct OptimumResult {
  ChannelProfile profile;  // lexicographically smallest among ties
  double system_throughput;
};

// Exact argmax of system throughput over the full profile space.
OptimumResult brute_force_optimum(const Scenario& scenario,
                                  EnumerationGuard guard = EnumerationGuard{});

// Every profile from which no AP can strictly improve unilaterally, in
// enumeration order. Non-empty for every valid scenario.
std::vector<ChannelProfile> enumerate_ne(
    const Scenario& scenario, EnumerationGuard guard = EnumerationGuard{});

struct ChainAnalysis {
  // Row-stochastic transition matrix over ProfileSpace order: uniform AP
  // choice times the softmax channel draw; transitions only between profiles
  // differing in at most one AP.
  std::vector<std::vector<double>> transition;
  std::vector<double> stationary;
};

// Builds the exact transition matrix of the cooperative selection chain and
// solves for its stationary vector (LU with partial pivoting plus iterative
// refinement, renormalized). Throws std::runtime_error if the residual
// ||pi T - pi||_inf stays above 1e-12, which would signal a modeling bug.
ChainAnalysis exact_chain_analysis(const Scenario& scenario, double gamma,
                                   EnumerationGuard guard = EnumerationGuard{});

// Simulates the two-step backoff protocol directly: x contenders draw uniform
// mini-slots in 1..lambda_max and the tagged contender wins iff its draw is
// strictly below everyone else's. Returns the tagged win frequency.
double monte_carlo_backoff(int lambda_max, int contenders, std::int64_t trials,
                           std::uint64_t seed);

}  // namespace oracle
}  // namespace wsnet
