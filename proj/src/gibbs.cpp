#include "wsnet/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "wsnet/throughput.hpp"

namespace wsnet {

namespace {

ChannelProfile draw_initial_profile(const Scenario& scenario, Rng& rng) {
  ChannelProfile profile;
  profile.channels.resize(static_cast<std::size_t>(scenario.ap_count()));
  for (int n = 0; n < scenario.ap_count(); ++n) {
    const auto& feasible = scenario.ap(n).feasible_channels;
    profile.channels[static_cast<std::size_t>(n)] =
        feasible[rng.uniform_index(feasible.size())];
  }
  return profile;
}

}  // namespace

ChannelProfile gibbs_step(const Scenario& scenario,
                          const ChannelProfile& profile, int n, double gamma,
                          Rng& rng) {
  const auto& feasible = scenario.ap(n).feasible_channels;
  ChannelProfile candidate = profile;
  std::vector<double> exponents(feasible.size());
  for (std::size_t c = 0; c < feasible.size(); ++c) {
    candidate[static_cast<std::size_t>(n)] = feasible[c];
    exponents[c] = gamma * system_throughput(scenario, candidate);
  }
  const double shift = *std::max_element(exponents.begin(), exponents.end());
  std::vector<double> weights(feasible.size());
  for (std::size_t c = 0; c < feasible.size(); ++c)
    weights[c] = std::exp(exponents[c] - shift);
  candidate[static_cast<std::size_t>(n)] = feasible[rng.pick_weighted(weights)];
  return candidate;
}

CoopChain::CoopChain(const Scenario& scenario, const GibbsConfig& config)
    : scenario_(&scenario), gamma_(config.gamma), rng_(config.seed) {
  if (config.gamma < 0.0)
    throw std::invalid_argument("GibbsConfig: gamma must be >= 0");
  if (config.iterations < 1)
    throw std::invalid_argument("GibbsConfig: iterations must be >= 1");
  if (config.initial_profile) {
    validate_profile(scenario, *config.initial_profile);
    profile_ = *config.initial_profile;
  } else {
    profile_ = draw_initial_profile(scenario, rng_);
  }
}

int CoopChain::step() {
  const int n = static_cast<int>(
      rng_.uniform_index(static_cast<std::size_t>(scenario_->ap_count())));
  profile_ = gibbs_step(*scenario_, profile_, n, gamma_, rng_);
  return n;
}

GibbsRun run_cooperative(const Scenario& scenario, const GibbsConfig& config) {
  CoopChain chain(scenario, config);
  GibbsRun run;
  run.initial_profile = chain.profile();
  run.trace.reserve(static_cast<std::size_t>(config.iterations));
  run.best_profile = chain.profile();
  run.best_system_throughput = system_throughput(scenario, chain.profile());

  double sum_system = 0.0;
  for (std::int64_t t = 1; t <= config.iterations; ++t) {
    const int updated = chain.step();
    GibbsTraceEntry entry;
    entry.iteration = t;
    entry.updated_ap = updated;
    entry.profile = chain.profile();
    entry.ap_throughputs.resize(static_cast<std::size_t>(scenario.ap_count()));
    for (int n = 0; n < scenario.ap_count(); ++n)
      entry.ap_throughputs[static_cast<std::size_t>(n)] =
          throughput(scenario, entry.profile, n);
    entry.system_throughput = 0.0;
    for (double u : entry.ap_throughputs) entry.system_throughput += u;
    sum_system += entry.system_throughput;
    if (entry.system_throughput > run.best_system_throughput) {
      run.best_system_throughput = entry.system_throughput;
      run.best_profile = entry.profile;
    }
    run.trace.push_back(std::move(entry));
  }
  run.final_profile = chain.profile();
  run.time_average_system_throughput =
      sum_system / static_cast<double>(config.iterations);
  return run;
}

std::vector<double> stationary_distribution(const Scenario& scenario,
                                            double gamma,
                                            EnumerationGuard guard) {
  if (gamma < 0.0)
    throw std::invalid_argument("stationary_distribution: gamma must be >= 0");
  const ProfileSpace space(scenario, guard);
  std::vector<double> exponents(space.size());
  for (std::size_t i = 0; i < space.size(); ++i)
    exponents[i] = gamma * system_throughput(scenario, space.at(i));
  const double shift = *std::max_element(exponents.begin(), exponents.end());
  std::vector<double> q(space.size());
  double total = 0.0;
  for (std::size_t i = 0; i < space.size(); ++i) {
    q[i] = std::exp(exponents[i] - shift);
    total += q[i];
  }
  for (double& v : q) v /= total;
  return q;
}

OptimalityGap optimality_gap_bound(const Scenario& scenario, double gamma,
                                   EnumerationGuard guard) {
  if (!(gamma > 0.0))
    throw std::invalid_argument(
        "optimality_gap_bound: gamma must be > 0 (bound undefined at 0)");
  const ProfileSpace space(scenario, guard);
  const std::vector<double> q = stationary_distribution(scenario, gamma, guard);
  OptimalityGap gap{};
  gap.optimal_throughput = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < space.size(); ++i) {
    const double s = system_throughput(scenario, space.at(i));
    gap.expected_throughput += q[i] * s;
    gap.optimal_throughput = std::max(gap.optimal_throughput, s);
  }
  gap.bound = std::log(static_cast<double>(space.size())) / gamma;
  return gap;
}

}  // namespace wsnet
