#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "wsnet/association.hpp"
#include "wsnet/population.hpp"
#include "wsnet/scenario.hpp"

namespace wsnet {

// A fully loaded experiment description: the radio environment, the secondary
// users (possibly none) and any scheduled churn.
struct ScenarioBundle {
  Scenario scenario;
  UserPopulation population;
  std::vector<ChurnEvent> churn;
};

// Parses and validates a scenario JSON document. Power values are converted
// to mW when the units block declares dBm. Throws std::invalid_argument with
// a field-addressed message on any parse or invariant failure.
ScenarioBundle parse_scenario(const nlohmann::json& doc);
ScenarioBundle load_scenario(const std::string& path);

// Canonical JSON form (powers in mW). load of a saved bundle reproduces
// identical domain objects.
nlohmann::json bundle_to_json(const ScenarioBundle& bundle);
void save_scenario(const std::string& path, const ScenarioBundle& bundle);

struct GenConfig {
  int n_aps = 8;
  int n_channels = 4;
  int vacant_per_ap = 3;
  double area_side_m = 500.0;
  std::uint64_t seed = 0;
  double power_min_mw = 200.0;
  double power_max_mw = 500.0;
  double noise_mw = 1e-10;  // -100 dBm
  double bandwidth_hz = 6e6;
  double path_loss_exponent = 4.0;
  double coverage_radius_m = 20.0;
  int lambda_max = 10;
  // Secondary users (0 = AP-tier scenario only).
  int n_users = 0;
  double delta_min = 0.0;
  double delta_max = 0.0;
  std::vector<double> gain_choices = {1.0};
};

// Seeded random scenario: AP positions uniform in the square (rejection keeps
// every pair at least the coverage radius apart), feasible sets drawn as
// uniform vacant_per_ap-subsets, powers uniform in the configured range.
// Throws std::runtime_error when placement keeps failing (area too crowded).
nlohmann::json generate_scenario(const GenConfig& config);

}  // namespace wsnet
