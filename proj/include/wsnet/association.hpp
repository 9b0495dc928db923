#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wsnet/population.hpp"
#include "wsnet/scenario.hpp"

namespace wsnet {

// Joint strategy/state of the AP association game. strategy is the users'
// chosen APs (b), location the APs they currently sit at (s); occupancy[n]
// counts the users whose strategy is n and always sums to the user count.
struct AssociationState {
  std::vector<int> strategy;
  std::vector<int> location;
  std::vector<int> occupancy;

  bool operator==(const AssociationState&) const = default;
};

// State with b = s = the population's current locations.
AssociationState make_association_state(const Scenario& scenario,
                                        const UserPopulation& population);

// User k's payoff for choosing candidate_ap while everyone else keeps their
// strategy, in Mbps:
//   H[k][b] * U_b(a*) * g(x_b under the candidate joint strategy)
//   - delta_k * distance(candidate_ap, current location).
double payoff(const Scenario& scenario, const ChannelProfile& eq_profile,
              const UserPopulation& population, const AssociationState& state,
              int k, int candidate_ap);

// Potential of the association game for strategy vector b (state-independent;
// the mobility cost term cancels out of unilateral comparisons):
//   sum_k ln U_{b_k} + sum_n sum_{i=0}^{x_n} ln g(i) + sum_k ln H[k][b_k],
// with throughputs in Mbps and ln g(0) = 0 by the g(0) = 1 convention.
double state_potential(const Scenario& scenario,
                       const ChannelProfile& eq_profile,
                       const UserPopulation& population,
                       const std::vector<int>& strategy);

// Best AP for user k given everyone else's strategy. Ties break toward
// staying at the current location, then toward the smallest AP index.
int user_best_response(const Scenario& scenario,
                       const ChannelProfile& eq_profile,
                       const UserPopulation& population,
                       const AssociationState& state, int k);

// True iff b = s (the state is recurrent under the transition map) and no
// user improves beyond the strictness threshold by deviating unilaterally.
bool verify_state_based_ne(const Scenario& scenario,
                           const ChannelProfile& eq_profile,
                           const UserPopulation& population,
                           const std::vector<int>& b, const std::vector<int>& s);

struct ChurnAddition {
  UserConfig config;
  int initial_ap = -1;  // -1: drawn uniformly at random on entry
};

// Applied once the update-event counter reaches at_event. Removed users are
// addressed by their stable 1-based ids (initial users are 1..K, additions
// continue from K+1).
struct ChurnEvent {
  std::int64_t at_event = 0;
  std::vector<int> remove_user_ids;
  std::vector<ChurnAddition> add;
};

struct AssocConfig {
  double mean_timer = 1.0;  // eta, mean of the exponential update countdown
  std::int64_t horizon = 10000;  // max update events
  std::uint64_t seed = 0;
  std::vector<ChurnEvent> churn;
};

struct AssocEventRecord {
  std::int64_t event;  // 1-based update event index
  double time;
  int user_id;
  int chosen_ap;
  bool changed;
  double payoff_mbps;      // the updater's payoff
  double total_rate_mbps;  // sum of all users' contended rates after the event
  double psi_before;       // potential just before the update, same population
  double psi;              // potential after
  // Active users after the event, ids aligned with the vectors. Location
  // always equals strategy here (the state follows the strategy at every
  // update), and with zero moving cost each payoff is the user's pure rate.
  std::vector<int> user_ids;
  std::vector<int> strategy;
  std::vector<int> location;
  std::vector<double> payoffs_mbps;

  bool operator==(const AssocEventRecord&) const = default;
};

struct ChurnRecord {
  std::int64_t applied_after_event;
  std::vector<int> removed_ids;
  std::vector<int> added_ids;

  bool operator==(const ChurnRecord&) const = default;
};

struct AssocRun {
  std::vector<int> initial_user_ids;
  std::vector<int> initial_strategy;
  double initial_psi = 0.0;
  std::vector<AssocEventRecord> trace;
  std::vector<ChurnRecord> churn_applied;
  // Last event at which some user changed strategy.
  std::int64_t last_change_event = 0;
  // Event at which equilibrium was detected: every active user has fired
  // since the last change without changing. Unset if the horizon ran out.
  std::optional<std::int64_t> converged_at;
  std::vector<int> final_user_ids;
  std::vector<int> final_strategy;
  // Working population at the end of the run (reflects churn; state = final
  // strategy), for equilibrium verification.
  std::optional<UserPopulation> final_population;

  bool operator==(const AssocRun&) const = default;
};

// Discrete-event simulation of asynchronous best-response association: each
// user holds an exponential(mean_timer) countdown; on expiry it switches to
// its best response if that strictly improves its payoff, and the state
// follows the strategy. Runs until the horizon, or until equilibrium is
// detected with no churn left to apply.
AssocRun run_association(const Scenario& scenario,
                         const ChannelProfile& eq_profile,
                         const UserPopulation& population,
                         const AssocConfig& config);

// Inverts the no-grab probability from channel-idle observations: returns the
// occupancy x in 0..x_max whose 1 - x g(x) lies closest to the sample mean
// (ties to the smaller x).
int estimate_load(int lambda_max, const std::vector<int>& idle_observations,
                  int x_max = 64);

}  // namespace wsnet
