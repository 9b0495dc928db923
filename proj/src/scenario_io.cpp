#include "wsnet/scenario_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "wsnet/rng.hpp"

namespace wsnet {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw std::invalid_argument(path + ": " + msg);
}

const json& require(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key))
    fail(path + "." + key, "missing required field");
  return obj.at(key);
}

double require_number(const json& obj, const char* key,
                      const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_number()) fail(path + "." + key, "must be a number");
  return v.get<double>();
}

int require_int(const json& obj, const char* key, const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_number_integer()) fail(path + "." + key, "must be an integer");
  return v.get<int>();
}

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

std::vector<std::vector<double>> parse_matrix(const json& v, std::size_t n,
                                              const std::string& path) {
  if (!v.is_array() || v.size() != n) fail(path, "must be an N x N array");
  std::vector<std::vector<double>> matrix(n);
  for (std::size_t i = 0; i < n; ++i) {
    const json& row = v.at(i);
    if (!row.is_array() || row.size() != n) fail(path, "must be an N x N array");
    matrix[i].resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (!row.at(j).is_number()) fail(path, "entries must be numbers");
      matrix[i][j] = row.at(j).get<double>();
    }
  }
  return matrix;
}

UserConfig parse_user(const json& u, int n_aps, bool power_dbm,
                      const std::string& path) {
  (void)power_dbm;
  UserConfig user;
  const json& gains = require(u, "gains", path);
  if (gains.is_number()) {
    user.gains.assign(static_cast<std::size_t>(n_aps), gains.get<double>());
  } else if (gains.is_array()) {
    if (gains.size() != static_cast<std::size_t>(n_aps))
      fail(path + ".gains", "one gain per AP required");
    for (const json& g : gains) {
      if (!g.is_number()) fail(path + ".gains", "entries must be numbers");
      user.gains.push_back(g.get<double>());
    }
  } else {
    fail(path + ".gains", "must be a number or an array");
  }
  user.mobility_cost_mbps_per_m = require_number(u, "mobility_cost", path);
  if (u.contains("distance_override"))
    user.distance_override =
        parse_matrix(u.at("distance_override"), static_cast<std::size_t>(n_aps),
                     path + ".distance_override");
  return user;
}

int parse_initial_ap(const json& u, int n_aps, const std::string& path) {
  const int ap = require_int(u, "initial_ap", path);
  if (ap < 1 || ap > n_aps)
    fail(path + ".initial_ap", "AP id out of 1..N");
  return ap - 1;
}

json user_to_json(const UserConfig& user, int initial_ap_zero_based) {
  json u;
  u["gains"] = user.gains;
  u["mobility_cost"] = user.mobility_cost_mbps_per_m;
  u["initial_ap"] = initial_ap_zero_based + 1;
  if (!user.distance_override.empty())
    u["distance_override"] = user.distance_override;
  return u;
}

}  // namespace

ScenarioBundle parse_scenario(const json& doc) {
  if (!doc.is_object()) fail("$", "scenario document must be a JSON object");
  const int version = require_int(doc, "schema_version", "$");
  if (version != 1) fail("$.schema_version", "unsupported schema version");

  bool power_dbm = false;
  {
    const json& units = require(doc, "units", "$");
    const json& power = require(units, "power", "$.units");
    if (!power.is_string() || (power != "mW" && power != "dBm"))
      fail("$.units.power", "must be \"mW\" or \"dBm\"");
    power_dbm = power == "dBm";
    const json& distance = require(units, "distance", "$.units");
    if (!distance.is_string() || distance != "m")
      fail("$.units.distance", "must be \"m\"");
    const json& bandwidth = require(units, "bandwidth", "$.units");
    if (!bandwidth.is_string() || bandwidth != "Hz")
      fail("$.units.bandwidth", "must be \"Hz\"");
  }

  const int channel_count = require_int(doc, "channel_count", "$");
  const double bandwidth = require_number(doc, "bandwidth", "$");
  const double theta = require_number(doc, "path_loss_exponent", "$");

  const json& aps_json = require(doc, "aps", "$");
  if (!aps_json.is_array() || aps_json.empty())
    fail("$.aps", "must be a non-empty array");
  std::vector<ApConfig> aps;
  for (std::size_t n = 0; n < aps_json.size(); ++n) {
    std::ostringstream pfx;
    pfx << "$.aps[" << n << "]";
    const std::string path = pfx.str();
    const json& a = aps_json.at(n);
    ApConfig ap;
    const json& pos = require(a, "position", path);
    if (!pos.is_array() || pos.size() != 2 || !pos.at(0).is_number() ||
        !pos.at(1).is_number())
      fail(path + ".position", "must be [x, y] in meters");
    ap.position = {pos.at(0).get<double>(), pos.at(1).get<double>()};
    ap.power_mw = require_number(a, "power", path);
    if (power_dbm) ap.power_mw = dbm_to_mw(ap.power_mw);
    ap.coverage_radius_m = require_number(a, "coverage_radius", path);
    const json& feasible = require(a, "feasible_channels", path);
    if (!feasible.is_array() || feasible.empty())
      fail(path + ".feasible_channels", "must be a non-empty array");
    for (const json& ch : feasible) {
      if (!ch.is_number_integer())
        fail(path + ".feasible_channels", "entries must be integers");
      ap.feasible_channels.push_back(ch.get<int>());
    }
    if (!std::is_sorted(ap.feasible_channels.begin(),
                        ap.feasible_channels.end()))
      fail(path + ".feasible_channels", "must be sorted ascending");
    const json& noise = require(a, "noise", path);
    if (noise.is_number()) {
      ap.noise_mw.assign(ap.feasible_channels.size(), noise.get<double>());
    } else if (noise.is_object()) {
      for (int ch : ap.feasible_channels) {
        const std::string key = std::to_string(ch);
        if (!noise.contains(key))
          fail(path + ".noise", "missing entry for channel " + key);
        if (!noise.at(key).is_number())
          fail(path + ".noise", "entries must be numbers");
        ap.noise_mw.push_back(noise.at(key).get<double>());
      }
      if (noise.size() != ap.feasible_channels.size())
        fail(path + ".noise", "entries must match the feasible set");
    } else {
      fail(path + ".noise", "must be a number or a per-channel object");
    }
    if (power_dbm)
      for (double& w : ap.noise_mw) w = dbm_to_mw(w);
    aps.push_back(std::move(ap));
  }

  std::vector<std::vector<double>> distance_override;
  if (doc.contains("distance_override"))
    distance_override = parse_matrix(doc.at("distance_override"), aps.size(),
                                     "$.distance_override");

  int lambda_max = 10;
  if (doc.contains("contention"))
    lambda_max = require_int(doc.at("contention"), "lambda_max", "$.contention");

  const int n_aps = static_cast<int>(aps.size());
  std::vector<UserConfig> users;
  std::vector<int> initial_aps;
  if (doc.contains("users")) {
    const json& users_json = doc.at("users");
    if (!users_json.is_array()) fail("$.users", "must be an array");
    for (std::size_t k = 0; k < users_json.size(); ++k) {
      std::ostringstream pfx;
      pfx << "$.users[" << k << "]";
      users.push_back(parse_user(users_json.at(k), n_aps, power_dbm, pfx.str()));
      initial_aps.push_back(parse_initial_ap(users_json.at(k), n_aps, pfx.str()));
    }
  }

  std::vector<ChurnEvent> churn;
  if (doc.contains("churn")) {
    const json& churn_json = doc.at("churn");
    if (!churn_json.is_array()) fail("$.churn", "must be an array");
    for (std::size_t c = 0; c < churn_json.size(); ++c) {
      std::ostringstream pfx;
      pfx << "$.churn[" << c << "]";
      const std::string path = pfx.str();
      const json& e = churn_json.at(c);
      ChurnEvent event;
      event.at_event = require_int(e, "at_event", path);
      if (e.contains("remove")) {
        if (!e.at("remove").is_array()) fail(path + ".remove", "must be an array");
        for (const json& id : e.at("remove")) {
          if (!id.is_number_integer())
            fail(path + ".remove", "entries must be user ids");
          event.remove_user_ids.push_back(id.get<int>());
        }
      }
      if (e.contains("add")) {
        if (!e.at("add").is_array()) fail(path + ".add", "must be an array");
        for (std::size_t k = 0; k < e.at("add").size(); ++k) {
          std::ostringstream apfx;
          apfx << path << ".add[" << k << "]";
          const json& u = e.at("add").at(k);
          ChurnAddition addition;
          addition.config = parse_user(u, n_aps, power_dbm, apfx.str());
          addition.initial_ap =
              u.contains("initial_ap") ? parse_initial_ap(u, n_aps, apfx.str())
                                       : -1;
          event.add.push_back(std::move(addition));
        }
      }
      churn.push_back(std::move(event));
    }
  }

  try {
    return ScenarioBundle{
        Scenario(channel_count, bandwidth, theta, std::move(aps),
                 std::move(distance_override)),
        UserPopulation(std::move(users), std::move(initial_aps), lambda_max,
                       n_aps),
        std::move(churn)};
  } catch (const std::invalid_argument& e) {
    fail("$", e.what());
  }
}

ScenarioBundle load_scenario(const std::string& path) {
  std::ifstream file(path);
  if (!file)
    throw std::invalid_argument("cannot open scenario file: " + path);
  json doc;
  try {
    doc = json::parse(file);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("scenario file " + path + ": " + e.what());
  }
  return parse_scenario(doc);
}

json bundle_to_json(const ScenarioBundle& bundle) {
  const Scenario& s = bundle.scenario;
  json doc;
  doc["schema_version"] = 1;
  doc["units"] = {{"power", "mW"}, {"distance", "m"}, {"bandwidth", "Hz"}};
  doc["channel_count"] = s.channel_count();
  doc["bandwidth"] = s.bandwidth_hz();
  doc["path_loss_exponent"] = s.path_loss_exponent();
  json aps = json::array();
  for (int n = 0; n < s.ap_count(); ++n) {
    const ApConfig& ap = s.ap(n);
    json a;
    a["position"] = {ap.position.x, ap.position.y};
    a["power"] = ap.power_mw;
    a["coverage_radius"] = ap.coverage_radius_m;
    a["feasible_channels"] = ap.feasible_channels;
    json noise;
    for (std::size_t c = 0; c < ap.feasible_channels.size(); ++c)
      noise[std::to_string(ap.feasible_channels[c])] = ap.noise_mw[c];
    a["noise"] = noise;
    aps.push_back(std::move(a));
  }
  doc["aps"] = std::move(aps);
  if (s.has_distance_override()) {
    std::vector<std::vector<double>> table(
        static_cast<std::size_t>(s.ap_count()),
        std::vector<double>(static_cast<std::size_t>(s.ap_count()), 0.0));
    for (int i = 0; i < s.ap_count(); ++i)
      for (int j = 0; j < s.ap_count(); ++j)
        table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            s.distance(i, j);
    doc["distance_override"] = table;
  }
  doc["contention"] = {{"lambda_max", bundle.population.contention().lambda_max()}};
  if (bundle.population.user_count() > 0) {
    json users = json::array();
    for (int k = 0; k < bundle.population.user_count(); ++k)
      users.push_back(user_to_json(bundle.population.user(k),
                                   bundle.population.state()[static_cast<std::size_t>(k)]));
    doc["users"] = std::move(users);
  }
  if (!bundle.churn.empty()) {
    json churn = json::array();
    for (const ChurnEvent& event : bundle.churn) {
      json e;
      e["at_event"] = event.at_event;
      if (!event.remove_user_ids.empty()) e["remove"] = event.remove_user_ids;
      if (!event.add.empty()) {
        json add = json::array();
        for (const ChurnAddition& addition : event.add) {
          json u = user_to_json(addition.config,
                                addition.initial_ap >= 0 ? addition.initial_ap : 0);
          if (addition.initial_ap < 0) u.erase("initial_ap");
          add.push_back(std::move(u));
        }
        e["add"] = std::move(add);
      }
      churn.push_back(std::move(e));
    }
    doc["churn"] = std::move(churn);
  }
  return doc;
}

void save_scenario(const std::string& path, const ScenarioBundle& bundle) {
  std::ofstream file(path, std::ios::binary);
  if (!file)
    throw std::runtime_error("cannot open scenario file for writing: " + path);
  file << bundle_to_json(bundle).dump(2) << '\n';
}

json generate_scenario(const GenConfig& config) {
  if (config.n_aps < 1 || config.n_channels < 1)
    throw std::invalid_argument("generate_scenario: need at least one AP and channel");
  if (config.vacant_per_ap < 1 || config.vacant_per_ap > config.n_channels)
    throw std::invalid_argument(
        "generate_scenario: vacant_per_ap must be in 1..n_channels");
  if (!(config.power_min_mw > 0.0) || config.power_max_mw < config.power_min_mw)
    throw std::invalid_argument("generate_scenario: bad power range");
  if (config.delta_max < config.delta_min || config.delta_min < 0.0)
    throw std::invalid_argument("generate_scenario: bad delta range");
  if (config.gain_choices.empty())
    throw std::invalid_argument("generate_scenario: gain_choices must be non-empty");
  for (double h : config.gain_choices)
    if (!(h >= 1.0))
      throw std::invalid_argument("generate_scenario: gains must be >= 1");

  Rng rng(config.seed);

  // Positions: rejection sampling against the near-field guard.
  std::vector<Vec2> positions;
  constexpr int kMaxAttempts = 100000;
  int attempts = 0;
  while (static_cast<int>(positions.size()) < config.n_aps) {
    if (++attempts > kMaxAttempts)
      throw std::runtime_error(
          "generate_scenario: could not place APs with the minimum spacing; "
          "area too crowded");
    Vec2 p{rng.uniform_real(0.0, config.area_side_m),
           rng.uniform_real(0.0, config.area_side_m)};
    bool ok = true;
    for (const Vec2& q : positions)
      if (euclidean(p, q) < config.coverage_radius_m) {
        ok = false;
        break;
      }
    if (ok) positions.push_back(p);
  }

  json aps = json::array();
  for (int n = 0; n < config.n_aps; ++n) {
    // Uniform vacant_per_ap-subset of 1..M via partial Fisher-Yates.
    std::vector<int> channels(static_cast<std::size_t>(config.n_channels));
    std::iota(channels.begin(), channels.end(), 1);
    for (int c = 0; c < config.vacant_per_ap; ++c) {
      const std::size_t pick =
          c + rng.uniform_index(channels.size() - static_cast<std::size_t>(c));
      std::swap(channels[static_cast<std::size_t>(c)], channels[pick]);
    }
    channels.resize(static_cast<std::size_t>(config.vacant_per_ap));
    std::sort(channels.begin(), channels.end());

    json a;
    a["position"] = {positions[static_cast<std::size_t>(n)].x,
                     positions[static_cast<std::size_t>(n)].y};
    a["power"] = rng.uniform_real(config.power_min_mw, config.power_max_mw);
    a["coverage_radius"] = config.coverage_radius_m;
    a["feasible_channels"] = channels;
    a["noise"] = config.noise_mw;
    aps.push_back(std::move(a));
  }

  json doc;
  doc["schema_version"] = 1;
  doc["units"] = {{"power", "mW"}, {"distance", "m"}, {"bandwidth", "Hz"}};
  doc["channel_count"] = config.n_channels;
  doc["bandwidth"] = config.bandwidth_hz;
  doc["path_loss_exponent"] = config.path_loss_exponent;
  doc["aps"] = std::move(aps);
  doc["contention"] = {{"lambda_max", config.lambda_max}};

  if (config.n_users > 0) {
    json users = json::array();
    for (int k = 0; k < config.n_users; ++k) {
      json u;
      std::vector<double> gains;
      for (int n = 0; n < config.n_aps; ++n)
        gains.push_back(
            config.gain_choices[rng.uniform_index(config.gain_choices.size())]);
      u["gains"] = gains;
      u["mobility_cost"] = rng.uniform_real(config.delta_min, config.delta_max);
      u["initial_ap"] =
          static_cast<int>(rng.uniform_index(static_cast<std::size_t>(config.n_aps))) + 1;
      users.push_back(std::move(u));
    }
    doc["users"] = std::move(users);
  }
  return doc;
}

}  // namespace wsnet
