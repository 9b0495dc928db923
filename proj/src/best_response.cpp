#include "wsnet/best_response.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "wsnet/numeric.hpp"
#include "wsnet/throughput.hpp"

namespace wsnet {

int best_response(const Scenario& scenario, const ChannelProfile& profile,
                  int n) {
  const auto& feasible = scenario.ap(n).feasible_channels;
  int best_channel = feasible.front();
  double best_value = throughput_with(scenario, profile, n, best_channel);
  for (std::size_t c = 1; c < feasible.size(); ++c) {
    const double value = throughput_with(scenario, profile, n, feasible[c]);
    if (value > best_value) {  // strict: earlier (smaller) channel wins ties
      best_value = value;
      best_channel = feasible[c];
    }
  }
  return best_channel;
}

bool verify_ne(const Scenario& scenario, const ChannelProfile& profile) {
  validate_profile(scenario, profile);
  for (int n = 0; n < scenario.ap_count(); ++n) {
    const double current = throughput(scenario, profile, n);
    for (int channel : scenario.ap(n).feasible_channels) {
      if (channel == profile[static_cast<std::size_t>(n)]) continue;
      if (improves(throughput_with(scenario, profile, n, channel), current))
        return false;
    }
  }
  return true;
}

BestResponseRun run_noncooperative(const Scenario& scenario) {
  BestResponseRun run;
  run.initial_profile.channels.resize(
      static_cast<std::size_t>(scenario.ap_count()));
  for (int n = 0; n < scenario.ap_count(); ++n)
    run.initial_profile.channels[static_cast<std::size_t>(n)] =
        scenario.ap(n).feasible_channels.front();

  const double theta_size = scenario.profile_space_size();
  const int max_sweeps =
      static_cast<int>(std::clamp(theta_size, 64.0, 1e6)) + 2;

  ChannelProfile profile = run.initial_profile;
  for (int stage = 1; stage <= max_sweeps; ++stage) {
    int changes = 0;
    for (int n = 0; n < scenario.ap_count(); ++n) {
      const int candidate = best_response(scenario, profile, n);
      if (candidate == profile[static_cast<std::size_t>(n)]) continue;
      const double current = throughput(scenario, profile, n);
      if (improves(throughput_with(scenario, profile, n, candidate), current)) {
        profile[static_cast<std::size_t>(n)] = candidate;
        ++changes;
        ++run.update_count;
      }
    }

    BestResponseStage entry;
    entry.stage = stage;
    entry.profile = profile;
    entry.phi = potential_phi(scenario, profile);
    entry.ap_throughputs.resize(static_cast<std::size_t>(scenario.ap_count()));
    for (int n = 0; n < scenario.ap_count(); ++n)
      entry.ap_throughputs[static_cast<std::size_t>(n)] =
          throughput(scenario, profile, n);
    entry.changes = changes;
    run.trace.push_back(std::move(entry));

    if (changes == 0) {
      run.converged = true;
      run.stages_to_converge = stage;
      break;
    }
  }
  if (!run.converged)
    throw std::runtime_error(
        "run_noncooperative: sweep cap exceeded; finite improvement property "
        "violated, which signals a bug");
  run.final_profile = profile;
  return run;
}

double ne_ap_throughput_lower_bound(const Scenario& scenario, int n) {
  double total_interference = 0.0;
  for (int i = 0; i < scenario.ap_count(); ++i)
    if (i != n) total_interference += scenario.cross_gain_mw(i, n);
  const double denom =
      scenario.max_noise_mw(n) +
      total_interference /
          static_cast<double>(scenario.ap(n).feasible_channels.size());
  return scenario.bandwidth_hz() *
         std::log2(1.0 + scenario.signal_mw(n) / denom);
}

double poa_lower_bound(const Scenario& scenario) {
  double numerator = 0.0;
  double denominator = 0.0;
  for (int n = 0; n < scenario.ap_count(); ++n) {
    numerator +=
        ne_ap_throughput_lower_bound(scenario, n) / scenario.bandwidth_hz();
    denominator +=
        std::log2(1.0 + scenario.signal_mw(n) / scenario.min_noise_mw(n));
  }
  return numerator / denominator;
}

PoaReport price_of_anarchy(const Scenario& scenario, EnumerationGuard guard) {
  const ProfileSpace space(scenario, guard);
  PoaReport report;
  report.optimal_throughput = -1.0;
  double worst_ne = std::numeric_limits<double>::infinity();
  double best_ne = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < space.size(); ++i) {
    const ChannelProfile profile = space.at(i);
    const double value = system_throughput(scenario, profile);
    report.optimal_throughput = std::max(report.optimal_throughput, value);
    if (verify_ne(scenario, profile)) {
      ++report.ne_count;
      worst_ne = std::min(worst_ne, value);
      best_ne = std::max(best_ne, value);
    }
  }
  if (report.ne_count == 0)
    throw std::runtime_error(
        "price_of_anarchy: no Nash equilibrium found; impossible for this "
        "game, signals a bug");
  report.worst_ne_throughput = worst_ne;
  report.best_ne_throughput = best_ne;
  report.poa = worst_ne / report.optimal_throughput;
  report.lower_bound = poa_lower_bound(scenario);
  if (report.poa < report.lower_bound - 1e-9 * std::abs(report.lower_bound))
    throw std::runtime_error(
        "price_of_anarchy: computed PoA fell below its closed-form lower "
        "bound");
  return report;
}

}  // namespace wsnet
