#include "wsnet/association.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "wsnet/numeric.hpp"
#include "wsnet/rng.hpp"
#include "wsnet/throughput.hpp"

namespace wsnet {

namespace {

constexpr double kBpsPerMbps = 1e6;

double ap_throughput_mbps(const Scenario& scenario,
                          const ChannelProfile& eq_profile, int n) {
  return throughput(scenario, eq_profile, n) / kBpsPerMbps;
}

}  // namespace

AssociationState make_association_state(const Scenario& scenario,
                                        const UserPopulation& population) {
  AssociationState state;
  state.strategy = population.state();
  state.location = population.state();
  state.occupancy.assign(static_cast<std::size_t>(scenario.ap_count()), 0);
  for (int ap : state.strategy)
    ++state.occupancy[static_cast<std::size_t>(ap)];
  return state;
}

double payoff(const Scenario& scenario, const ChannelProfile& eq_profile,
              const UserPopulation& population, const AssociationState& state,
              int k, int candidate_ap) {
  if (candidate_ap < 0 || candidate_ap >= scenario.ap_count())
    throw std::invalid_argument("payoff: AP index out of range");
  const int current = state.strategy[static_cast<std::size_t>(k)];
  // Occupancy of the candidate AP under (candidate, b_-k): user k always
  // counts itself there.
  int contenders = state.occupancy[static_cast<std::size_t>(candidate_ap)];
  if (candidate_ap != current) ++contenders;
  const double rate = population.gain(k, candidate_ap) *
                      ap_throughput_mbps(scenario, eq_profile, candidate_ap) *
                      population.contention().success(contenders);
  const int location = state.location[static_cast<std::size_t>(k)];
  const double cost =
      population.user(k).mobility_cost_mbps_per_m *
      population.move_distance(scenario, k, candidate_ap, location);
  return rate - cost;
}

double state_potential(const Scenario& scenario,
                       const ChannelProfile& eq_profile,
                       const UserPopulation& population,
                       const std::vector<int>& strategy) {
  std::vector<int> occupancy(static_cast<std::size_t>(scenario.ap_count()), 0);
  double sum = 0.0;
  for (std::size_t k = 0; k < strategy.size(); ++k) {
    const int b = strategy[k];
    if (b < 0 || b >= scenario.ap_count())
      throw std::invalid_argument("state_potential: AP index out of range");
    ++occupancy[static_cast<std::size_t>(b)];
    sum += std::log(ap_throughput_mbps(scenario, eq_profile, b));
    sum += std::log(population.gain(static_cast<int>(k), b));
  }
  const ContentionModel& g = population.contention();
  for (int n = 0; n < scenario.ap_count(); ++n)
    for (int i = 2; i <= occupancy[static_cast<std::size_t>(n)]; ++i)
      sum += std::log(g.success(i));  // ln g(0) = ln g(1) = 0
  return sum;
}

int user_best_response(const Scenario& scenario,
                       const ChannelProfile& eq_profile,
                       const UserPopulation& population,
                       const AssociationState& state, int k) {
  const int stay = state.location[static_cast<std::size_t>(k)];
  int best_ap = stay;
  double best_value = payoff(scenario, eq_profile, population, state, k, stay);
  for (int n = 0; n < scenario.ap_count(); ++n) {
    if (n == stay) continue;
    const double value = payoff(scenario, eq_profile, population, state, k, n);
    if (improves(value, best_value)) {
      best_value = value;
      best_ap = n;
    }
  }
  return best_ap;
}

bool verify_state_based_ne(const Scenario& scenario,
                           const ChannelProfile& eq_profile,
                           const UserPopulation& population,
                           const std::vector<int>& b,
                           const std::vector<int>& s) {
  if (b.size() != s.size() ||
      b.size() != static_cast<std::size_t>(population.user_count()))
    throw std::invalid_argument(
        "verify_state_based_ne: vector sizes must match the population");
  if (b != s) return false;  // state not recurrent under F(b, s) = b
  AssociationState state;
  state.strategy = b;
  state.location = s;
  state.occupancy.assign(static_cast<std::size_t>(scenario.ap_count()), 0);
  for (int ap : b) ++state.occupancy[static_cast<std::size_t>(ap)];
  for (int k = 0; k < population.user_count(); ++k) {
    const double current = payoff(scenario, eq_profile, population, state, k,
                                  b[static_cast<std::size_t>(k)]);
    for (int n = 0; n < scenario.ap_count(); ++n) {
      if (n == b[static_cast<std::size_t>(k)]) continue;
      if (improves(payoff(scenario, eq_profile, population, state, k, n),
                   current))
        return false;
    }
  }
  return true;
}

namespace {

struct PendingTimer {
  double time;
  int user_id;
  bool operator>(const PendingTimer& other) const {
    if (time != other.time) return time > other.time;
    return user_id > other.user_id;  // deterministic order on (impossible) ties
  }
};

// Working copy of the population that run_association mutates across churn;
// the input UserPopulation itself stays untouched.
struct ActiveUsers {
  std::vector<int> ids;
  std::vector<UserConfig> configs;
  std::vector<int> strategy;
  std::vector<int> location;

  int index_of(int id) const {
    for (std::size_t k = 0; k < ids.size(); ++k)
      if (ids[k] == id) return static_cast<int>(k);
    return -1;
  }
};

}  // namespace

AssocRun run_association(const Scenario& scenario,
                         const ChannelProfile& eq_profile,
                         const UserPopulation& population,
                         const AssocConfig& config) {
  if (!(config.mean_timer > 0.0))
    throw std::invalid_argument("AssocConfig: mean_timer must be > 0");
  if (config.horizon < 1)
    throw std::invalid_argument("AssocConfig: horizon must be >= 1");
  for (std::size_t c = 1; c < config.churn.size(); ++c)
    if (config.churn[c].at_event <= config.churn[c - 1].at_event)
      throw std::invalid_argument(
          "AssocConfig: churn events must have strictly increasing indices");
  validate_profile(scenario, eq_profile);

  const int n_aps = scenario.ap_count();
  const int lambda_max = population.contention().lambda_max();
  Rng rng(config.seed);

  ActiveUsers active;
  for (int k = 0; k < population.user_count(); ++k) {
    active.ids.push_back(k + 1);
    active.configs.push_back(population.user(k));
    active.strategy.push_back(population.state()[static_cast<std::size_t>(k)]);
    active.location.push_back(population.state()[static_cast<std::size_t>(k)]);
  }
  int next_id = population.user_count() + 1;

  std::vector<int> occupancy(static_cast<std::size_t>(n_aps), 0);
  for (int ap : active.strategy) ++occupancy[static_cast<std::size_t>(ap)];

  std::priority_queue<PendingTimer, std::vector<PendingTimer>,
                      std::greater<PendingTimer>>
      queue;
  for (int id : active.ids)
    queue.push({rng.exponential(config.mean_timer), id});

  // User ids that have fired since the last accepted change (or churn).
  std::vector<int> fired_ids;
  auto all_fired = [&] {
    for (int id : active.ids)
      if (std::find(fired_ids.begin(), fired_ids.end(), id) == fired_ids.end())
        return false;
    return true;
  };

  auto rebuild_population = [&] {
    return UserPopulation(active.configs, active.strategy, lambda_max, n_aps);
  };
  UserPopulation working = rebuild_population();

  AssocRun run;
  std::int64_t event_count = 0;
  double now = 0.0;
  std::size_t churn_cursor = 0;

  auto apply_churn = [&](const ChurnEvent& churn) {
    ChurnRecord record;
    record.applied_after_event = event_count;
    for (int id : churn.remove_user_ids) {
      const int k = active.index_of(id);
      if (k < 0) {
        std::ostringstream os;
        os << "churn: user id " << id << " not active at event "
           << churn.at_event;
        throw std::invalid_argument(os.str());
      }
      --occupancy[static_cast<std::size_t>(
          active.strategy[static_cast<std::size_t>(k)])];
      active.ids.erase(active.ids.begin() + k);
      active.configs.erase(active.configs.begin() + k);
      active.strategy.erase(active.strategy.begin() + k);
      active.location.erase(active.location.begin() + k);
      record.removed_ids.push_back(id);
    }
    for (const ChurnAddition& addition : churn.add) {
      const int ap = addition.initial_ap >= 0
                         ? addition.initial_ap
                         : static_cast<int>(rng.uniform_index(
                               static_cast<std::size_t>(n_aps)));
      if (ap >= n_aps)
        throw std::invalid_argument("churn: initial AP index out of range");
      const int id = next_id++;
      active.ids.push_back(id);
      active.configs.push_back(addition.config);
      active.strategy.push_back(ap);
      active.location.push_back(ap);
      ++occupancy[static_cast<std::size_t>(ap)];
      queue.push({now + rng.exponential(config.mean_timer), id});
      record.added_ids.push_back(id);
    }
    working = rebuild_population();  // revalidates the churned configs
    fired_ids.clear();               // occupancies moved; require a fresh pass
    int total = 0;
    for (int x : occupancy) total += x;
    if (total != static_cast<int>(active.ids.size()))
      throw std::runtime_error(
          "run_association: occupancy count diverged from the user count "
          "after churn; signals a bug");
    run.churn_applied.push_back(std::move(record));
  };

  run.initial_strategy = active.strategy;
  run.initial_user_ids = active.ids;
  run.initial_psi =
      state_potential(scenario, eq_profile, working, active.strategy);

  while (event_count < config.horizon) {
    while (churn_cursor < config.churn.size() &&
           config.churn[churn_cursor].at_event <= event_count)
      apply_churn(config.churn[churn_cursor++]);

    if (active.ids.empty()) {
      if (churn_cursor < config.churn.size()) {
        // No events can tick with nobody active; collapse to the next churn.
        apply_churn(config.churn[churn_cursor++]);
        continue;
      }
      run.converged_at = event_count;
      break;
    }
    if (queue.empty()) break;  // unreachable: every active user has a timer

    const PendingTimer timer = queue.top();
    queue.pop();
    const int k = active.index_of(timer.user_id);
    if (k < 0) continue;  // stale timer of a removed user

    ++event_count;
    now = timer.time;

    AssociationState state{active.strategy, active.location, occupancy};
    const double psi_before =
        state_potential(scenario, eq_profile, working, active.strategy);
    const int current = active.strategy[static_cast<std::size_t>(k)];
    const int candidate =
        user_best_response(scenario, eq_profile, working, state, k);
    bool changed = false;
    if (candidate != current &&
        improves(payoff(scenario, eq_profile, working, state, k, candidate),
                 payoff(scenario, eq_profile, working, state, k, current))) {
      --occupancy[static_cast<std::size_t>(current)];
      ++occupancy[static_cast<std::size_t>(candidate)];
      active.strategy[static_cast<std::size_t>(k)] = candidate;
      active.location[static_cast<std::size_t>(k)] = candidate;  // s follows b
      working = rebuild_population();
      changed = true;
      fired_ids.clear();
      run.last_change_event = event_count;
    }
    fired_ids.push_back(timer.user_id);

    AssocEventRecord record;
    record.event = event_count;
    record.time = now;
    record.user_id = timer.user_id;
    record.chosen_ap = active.strategy[static_cast<std::size_t>(k)];
    record.changed = changed;
    record.total_rate_mbps = 0.0;
    {
      AssociationState after{active.strategy, active.location, occupancy};
      for (std::size_t u = 0; u < active.strategy.size(); ++u) {
        record.payoffs_mbps.push_back(
            payoff(scenario, eq_profile, working, after, static_cast<int>(u),
                   active.strategy[u]));
        record.total_rate_mbps += record.payoffs_mbps.back();
      }
    }
    record.payoff_mbps = record.payoffs_mbps[static_cast<std::size_t>(k)];
    record.psi_before = psi_before;
    record.psi =
        state_potential(scenario, eq_profile, working, active.strategy);
    record.user_ids = active.ids;
    record.strategy = active.strategy;
    record.location = active.location;
    run.trace.push_back(std::move(record));

    queue.push({now + rng.exponential(config.mean_timer), timer.user_id});

    if (all_fired() && churn_cursor >= config.churn.size()) {
      run.converged_at = event_count;
      break;
    }
  }

  run.final_user_ids = active.ids;
  run.final_strategy = active.strategy;
  run.final_population = std::move(working);
  return run;
}

int estimate_load(int lambda_max, const std::vector<int>& idle_observations,
                  int x_max) {
  if (idle_observations.empty())
    throw std::invalid_argument("estimate_load: empty observation sequence");
  if (x_max < 1)
    throw std::invalid_argument("estimate_load: x_max must be >= 1");
  double sum = 0.0;
  for (int idle : idle_observations) {
    if (idle != 0 && idle != 1)
      throw std::invalid_argument("estimate_load: observations must be 0 or 1");
    sum += idle;
  }
  const double mean = sum / static_cast<double>(idle_observations.size());

  std::vector<double> gbar(static_cast<std::size_t>(x_max) + 1);
  for (int x = 0; x <= x_max; ++x)
    gbar[static_cast<std::size_t>(x)] = no_grab_probability(lambda_max, x);
  for (int x = 2; x <= x_max; ++x)
    if (!(gbar[static_cast<std::size_t>(x)] >
          gbar[static_cast<std::size_t>(x - 1)])) {
      std::cerr << "wsnet: estimate_load: no-grab probability is not strictly "
                   "increasing at x = "
                << x << "; falling back to nearest match\n";
      break;
    }

  int best_x = 0;
  double best_err = std::abs(gbar[0] - mean);
  for (int x = 1; x <= x_max; ++x) {
    const double err = std::abs(gbar[static_cast<std::size_t>(x)] - mean);
    if (err < best_err) {  // strict: ties keep the smaller x
      best_err = err;
      best_x = x;
    }
  }
  return best_x;
}

}  // namespace wsnet
