#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "wsnet/contention.hpp"
#include "wsnet/numeric.hpp"
#include "wsnet/oracle.hpp"
#include "wsnet/population.hpp"
#include "wsnet/profile_space.hpp"
#include "wsnet/throughput.hpp"

using namespace wsnet;

TEST_SUITE_BEGIN("model-core");

TEST_CASE("throughput: single AP with unit SINR gives exactly B") {
  // P = 1 mW, d = 1 m => signal 1 mW; noise 1 mW => log2(1 + 1) = 1.
  const Scenario s = test::single_ap(1.0, 1.0, 1.0, {1}, {1.0}, 1);
  const ChannelProfile p{{1}};
  CHECK(throughput(s, p, 0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("throughput: separated channels equal the isolated rate") {
  std::vector<ApConfig> aps;
  aps.push_back(test::make_ap(0, 0, 100.0, 20.0, {1, 2}, 1e-10));
  aps.push_back(test::make_ap(250, 0, 100.0, 20.0, {1, 2}, 1e-10));
  const Scenario s(2, 6e6, 4.0, std::move(aps));
  const ChannelProfile split{{1, 2}};
  // Frozen from a hand evaluation of the rate formula:
  //   6e6 * log2(1 + (100/20^4) / 1e-10)
  const double isolated = 135452549.93958053;
  CHECK(throughput(s, split, 0) == doctest::Approx(isolated).epsilon(1e-12));
  CHECK(throughput(s, split, 1) == doctest::Approx(isolated).epsilon(1e-12));
}

TEST_CASE("throughput: co-channel pair matches the frozen hand evaluation") {
  std::vector<ApConfig> aps;
  aps.push_back(test::make_ap(0, 0, 100.0, 20.0, {1}, 1e-10));
  aps.push_back(test::make_ap(250, 0, 100.0, 20.0, {1}, 1e-10));
  const Scenario s(1, 6e6, 4.0, std::move(aps));
  const ChannelProfile both{{1, 1}};
  // 6e6 * log2(1 + (100/20^4) / (1e-10 + 100/250^4)), evaluated externally.
  const double expected = 87419157.19383265;
  CHECK(throughput(s, both, 0) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(throughput(s, both, 1) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("throughput: co-channel interference only ever hurts") {
  Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const Scenario s = test::random_scenario(rng, 3, 3);
    const ProfileSpace space(s);
    for (std::size_t i = 0; i < space.size(); ++i) {
      const ChannelProfile profile = space.at(i);
      for (int n = 0; n < s.ap_count(); ++n) {
        for (int mover = 0; mover < s.ap_count(); ++mover) {
          if (mover == n) continue;
          for (int ch : s.ap(mover).feasible_channels) {
            if (ch == profile[static_cast<std::size_t>(mover)]) continue;
            ChannelProfile moved = profile;
            moved[static_cast<std::size_t>(mover)] = ch;
            const bool was_cochannel =
                profile[static_cast<std::size_t>(mover)] ==
                profile[static_cast<std::size_t>(n)];
            const bool now_cochannel =
                ch == profile[static_cast<std::size_t>(n)];
            if (was_cochannel && !now_cochannel)
              CHECK(throughput(s, moved, n) >= throughput(s, profile, n));
            if (!was_cochannel && now_cochannel)
              CHECK(throughput(s, moved, n) <= throughput(s, profile, n));
          }
        }
      }
    }
  }
}

TEST_CASE("system throughput: single AP and permutation symmetry") {
  const Scenario one = test::single_ap(1.0, 1.0, 1.0, {1}, {1.0}, 1);
  const ChannelProfile p1{{1}};
  CHECK(system_throughput(one, p1) == throughput(one, p1, 0));

  std::vector<ApConfig> aps;
  aps.push_back(test::make_ap(0, 0, 10.0, 1.0, {1, 2}, 1.0));
  aps.push_back(test::make_ap(30, 0, 10.0, 1.0, {1, 2}, 1.0));
  const Scenario twin(2, 1.0, 3.0, std::move(aps));
  CHECK(system_throughput(twin, ChannelProfile{{1, 2}}) ==
        doctest::Approx(system_throughput(twin, ChannelProfile{{2, 1}}))
            .epsilon(1e-15));
}

TEST_CASE("system throughput: 3-AP sum matches a test-local rate formula") {
  std::vector<ApConfig> aps;
  aps.push_back(test::make_ap(0, 0, 20.0, 1.0, {1, 2}, 1.0));
  aps.push_back(test::make_ap(4, 0, 30.0, 1.0, {1, 2}, 1.0));
  aps.push_back(test::make_ap(0, 5, 40.0, 1.0, {1, 2}, 1.0));
  const Scenario s(2, 1.0, 3.0, std::move(aps));
  const ChannelProfile profile{{1, 1, 2}};

  // Rates recomputed from raw parameters, independent of the library path.
  const double d01 = 4.0;
  const double u0 = std::log2(1.0 + 20.0 / (1.0 + 30.0 / std::pow(d01, 3.0)));
  const double u1 = std::log2(1.0 + 30.0 / (1.0 + 20.0 / std::pow(d01, 3.0)));
  const double u2 = std::log2(1.0 + 40.0 / 1.0);
  CHECK(system_throughput(s, profile) ==
        doctest::Approx(u0 + u1 + u2).epsilon(1e-12));
}

TEST_CASE("potential: single AP is -2 P omega") {
  const Scenario s = test::single_ap(1.0, 100.0, 1.0, {1}, {1e-3}, 1);
  CHECK(potential_phi(s, ChannelProfile{{1}}) ==
        doctest::Approx(-0.2).epsilon(1e-15));
}

TEST_CASE("potential: distinct channels and zero noise give zero") {
  std::vector<ApConfig> aps;
  aps.push_back(test::make_ap(0, 0, 10.0, 1.0, {1}, 0.0));
  aps.push_back(test::make_ap(5, 0, 10.0, 1.0, {2}, 0.0));
  aps.push_back(test::make_ap(0, 7, 10.0, 1.0, {3}, 0.0));
  const Scenario s(3, 1.0, 3.0, std::move(aps));
  CHECK(potential_phi(s, ChannelProfile{{1, 2, 3}}) == 0.0);
}

TEST_CASE("potential: sign matches the deviating AP's utility change") {
  Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const Scenario s = test::random_scenario(rng, 3, 3);
    const ProfileSpace space(s);
    for (std::size_t i = 0; i < space.size(); ++i) {
      const ChannelProfile profile = space.at(i);
      const double phi = potential_phi(s, profile);
      for (int n = 0; n < s.ap_count(); ++n) {
        const double u = throughput(s, profile, n);
        for (int ch : s.ap(n).feasible_channels) {
          if (ch == profile[static_cast<std::size_t>(n)]) continue;
          ChannelProfile deviated = profile;
          deviated[static_cast<std::size_t>(n)] = ch;
          const int du_sign = sign_of(throughput(s, deviated, n) - u, u);
          const int dphi_sign = sign_of(potential_phi(s, deviated) - phi, phi);
          CHECK(du_sign == dphi_sign);
        }
      }
    }
  }
}

TEST_CASE("contention success: frozen exact values at lambda_max = 10") {
  CHECK(contention_success(10, 0) == 1.0);
  CHECK(contention_success(10, 1) == 1.0);
  CHECK(contention_success(10, 2) == 0.45);
  CHECK(contention_success(10, 3) == doctest::Approx(0.285).epsilon(1e-15));
  CHECK(contention_success(10, 4) == doctest::Approx(0.2025).epsilon(1e-15));
  CHECK(contention_success(10, 5) == doctest::Approx(0.15333).epsilon(1e-15));
  CHECK(contention_success(10, 10) ==
        doctest::Approx(0.0574304985).epsilon(1e-15));
}

TEST_CASE("contention success: non-increasing and within (0, 1]") {
  for (int lambda_max : {2, 5, 10, 16}) {
    double prev = contention_success(lambda_max, 1);
    CHECK(prev == 1.0);
    for (int x = 2; x <= 64; ++x) {
      const double g = contention_success(lambda_max, x);
      CHECK(g > 0.0);
      CHECK(g <= prev);
      prev = g;
    }
  }
}

TEST_CASE("contention success: agrees with the Monte-Carlo backoff oracle") {
  const std::int64_t trials = 1000000;
  const double g5 = contention_success(10, 5);
  const double empirical = oracle::monte_carlo_backoff(10, 5, trials, 424242);
  const double sigma = std::sqrt(g5 * (1.0 - g5) / static_cast<double>(trials));
  CHECK(std::abs(empirical - g5) <= 3.0 * sigma);
}

TEST_CASE("contention model: table matches closed form, falls back beyond") {
  const ContentionModel model(10, 8);
  for (int x = 0; x <= 12; ++x)
    CHECK(model.success(x) == contention_success(10, x));
}

TEST_CASE("user rate: lone user with unit gain gets the AP throughput") {
  const Scenario s = test::single_ap(1.0, 1.0, 1.0, {1}, {1.0}, 1);
  const ChannelProfile eq{{1}};
  UserConfig user;
  user.gains = {1.0};
  const UserPopulation pop({user}, {0}, 10, 1);
  CHECK(user_rate(s, eq, pop, 0, 0) == throughput(s, eq, 0));
}

TEST_CASE("user rate: linear in the gain") {
  const Scenario s = test::single_ap(1.0, 1.0, 1.0, {1}, {1.0}, 1);
  const ChannelProfile eq{{1}};
  UserConfig base, doubled;
  base.gains = {1.2};
  doubled.gains = {2.4};
  const UserPopulation pop({base, doubled}, {0, 0}, 10, 1);
  // Both users contend at the same AP, so rates differ only by the gain.
  CHECK(user_rate(s, eq, pop, 1, 0) ==
        doctest::Approx(2.0 * user_rate(s, eq, pop, 0, 0)).epsilon(1e-15));
}

TEST_CASE("user rate: two contenders at lambda_max 10 scale by 0.45") {
  const Scenario s = test::single_ap(1.0, 1.0, 1.0, {1}, {1.0}, 1);
  const ChannelProfile eq{{1}};
  UserConfig user;
  user.gains = {1.0};
  const UserPopulation pop({user, user}, {0, 0}, 10, 1);
  CHECK(user_rate(s, eq, pop, 0, 0) ==
        doctest::Approx(0.45 * throughput(s, eq, 0)).epsilon(1e-15));
}

TEST_CASE("scenario validation: field-addressed rejections") {
  auto ap = test::make_ap(0, 0, 10.0, 1.0, {1}, 1.0);

  SUBCASE("empty feasible set") {
    ap.feasible_channels.clear();
    ap.noise_mw.clear();
    CHECK_THROWS_WITH_AS(Scenario(1, 1.0, 3.0, {ap}),
                         doctest::Contains("feasible_channels"),
                         std::invalid_argument);
  }
  SUBCASE("channel id out of range") {
    ap.feasible_channels = {2};
    CHECK_THROWS_WITH_AS(Scenario(1, 1.0, 3.0, {ap}),
                         doctest::Contains("out of 1..M"),
                         std::invalid_argument);
  }
  SUBCASE("noise misaligned") {
    ap.noise_mw.push_back(1.0);
    CHECK_THROWS_WITH_AS(Scenario(1, 1.0, 3.0, {ap}),
                         doctest::Contains("noise"), std::invalid_argument);
  }
  SUBCASE("nonpositive power") {
    ap.power_mw = 0.0;
    CHECK_THROWS_AS(Scenario(1, 1.0, 3.0, {ap}), std::invalid_argument);
  }
}

TEST_CASE("scenario validation: near-field guard") {
  std::vector<ApConfig> aps;
  aps.push_back(test::make_ap(0, 0, 10.0, 20.0, {1}, 1.0));
  aps.push_back(test::make_ap(5, 0, 10.0, 20.0, {1}, 1.0));
  CHECK_THROWS_WITH_AS(Scenario(1, 1.0, 3.0, std::move(aps)),
                       doctest::Contains("coverage radius"),
                       std::invalid_argument);
}

TEST_CASE("scenario validation: asymmetric distance override rejected") {
  std::vector<ApConfig> aps;
  aps.push_back(test::make_ap(0, 0, 10.0, 1.0, {1}, 1.0));
  aps.push_back(test::make_ap(5, 0, 10.0, 1.0, {1}, 1.0));
  std::vector<std::vector<double>> bad{{0.0, 5.0}, {6.0, 0.0}};
  CHECK_THROWS_WITH_AS(Scenario(1, 1.0, 3.0, std::move(aps), std::move(bad)),
                       doctest::Contains("symmetric"), std::invalid_argument);
}

TEST_CASE("scenario distances: symmetric with zero diagonal by construction") {
  Rng rng(5);
  const Scenario s = test::random_scenario(rng, 4, 3);
  for (int i = 0; i < s.ap_count(); ++i) {
    CHECK(s.distance(i, i) == 0.0);
    for (int j = 0; j < s.ap_count(); ++j)
      CHECK(s.distance(i, j) == s.distance(j, i));
  }
}

TEST_CASE("profile validation") {
  const Scenario s = test::single_ap(1.0, 1.0, 1.0, {1, 3}, {1.0, 1.0}, 3);
  CHECK_NOTHROW(validate_profile(s, ChannelProfile{{3}}));
  CHECK_THROWS_WITH_AS(validate_profile(s, ChannelProfile{{2}}),
                       doctest::Contains("profile[0]"), std::invalid_argument);
  CHECK_THROWS_AS(validate_profile(s, ChannelProfile{{1, 1}}),
                  std::invalid_argument);
}

TEST_CASE("population validation") {
  UserConfig user;
  user.gains = {1.0, 1.0};

  SUBCASE("gain below one") {
    user.gains[0] = 0.5;
    CHECK_THROWS_WITH_AS(UserPopulation({user}, {0}, 10, 2),
                         doctest::Contains("gains"), std::invalid_argument);
  }
  SUBCASE("negative mobility cost") {
    user.mobility_cost_mbps_per_m = -0.1;
    CHECK_THROWS_AS(UserPopulation({user}, {0}, 10, 2), std::invalid_argument);
  }
  SUBCASE("override diagonal must be zero") {
    user.distance_override = {{0.0, 5.0}, {4.0, 1.0}};
    CHECK_THROWS_WITH_AS(UserPopulation({user}, {0}, 10, 2),
                         doctest::Contains("diagonal"), std::invalid_argument);
  }
  SUBCASE("initial AP out of range") {
    CHECK_THROWS_AS(UserPopulation({user}, {2}, 10, 2), std::invalid_argument);
  }
}

TEST_SUITE_END();
