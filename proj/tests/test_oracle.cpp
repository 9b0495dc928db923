#include <doctest.h>

#include <cmath>
#include <queue>
#include <vector>

#include "helpers.hpp"
#include "wsnet/contention.hpp"
#include "wsnet/gibbs.hpp"
#include "wsnet/oracle.hpp"
#include "wsnet/throughput.hpp"

using namespace wsnet;

TEST_SUITE_BEGIN("oracle");

TEST_CASE("brute force: single AP picks the quietest channel") {
  const Scenario s =
      test::single_ap(1.0, 1.0, 1.0, {1, 2, 3}, {2.0, 0.5, 1.0}, 3);
  const auto result = oracle::brute_force_optimum(s);
  CHECK(result.profile == ChannelProfile{{2}});
}

TEST_CASE("brute force: dominates every enumerated profile") {
  Rng rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    const Scenario s = test::random_scenario(rng, 3, 3);
    const auto result = oracle::brute_force_optimum(s);
    const ProfileSpace space(s);
    for (std::size_t i = 0; i < space.size(); ++i)
      CHECK(result.system_throughput >=
            system_throughput(s, space.at(i)));
  }
}

TEST_CASE("brute force: refuses oversized spaces") {
  Rng rng(62);
  const Scenario s = test::random_scenario(rng, 3, 3);
  CHECK_THROWS_AS(oracle::brute_force_optimum(s, EnumerationGuard{2}),
                  std::invalid_argument);
}

TEST_CASE("ne enumeration: always contains a potential maximizer") {
  Rng rng(63);
  for (int trial = 0; trial < 20; ++trial) {
    const Scenario s = test::random_scenario(rng, 3, 3);
    const ProfileSpace space(s);
    std::size_t best = 0;
    double best_phi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < space.size(); ++i) {
      const double phi = potential_phi(s, space.at(i));
      if (phi > best_phi) {
        best_phi = phi;
        best = i;
      }
    }
    const auto equilibria = oracle::enumerate_ne(s);
    CHECK(!equilibria.empty());
    bool found = false;
    for (const ChannelProfile& ne : equilibria)
      if (ne == space.at(best)) found = true;
    CHECK(found);
  }
}

TEST_CASE("chain analysis: singleton space is the identity chain") {
  const Scenario s = test::single_ap(1.0, 1.0, 1.0, {1}, {1.0}, 1);
  const auto chain = oracle::exact_chain_analysis(s, 1.0);
  REQUIRE(chain.transition.size() == 1);
  CHECK(chain.transition[0][0] == 1.0);
  CHECK(chain.stationary == std::vector<double>{1.0});
}

TEST_CASE("chain analysis: kernel rows are stochastic, moves stay local") {
  Rng rng(64);
  const Scenario s = test::random_scenario(rng, 3, 3);
  const ProfileSpace space(s);
  const auto chain = oracle::exact_chain_analysis(s, 0.6);
  for (std::size_t i = 0; i < space.size(); ++i) {
    double row_sum = 0.0;
    const ChannelProfile from = space.at(i);
    for (std::size_t j = 0; j < space.size(); ++j) {
      row_sum += chain.transition[i][j];
      if (chain.transition[i][j] > 0.0) {
        int hamming = 0;
        const ChannelProfile to = space.at(j);
        for (std::size_t n = 0; n < from.size(); ++n)
          if (from[n] != to[n]) ++hamming;
        CHECK(hamming <= 1);
      }
    }
    CHECK(std::abs(row_sum - 1.0) <= 1e-12);
  }
}

TEST_CASE("chain analysis: irreducible at desk scale") {
  Rng rng(65);
  for (int trial = 0; trial < 10; ++trial) {
    const Scenario s = test::random_scenario(rng, 3, 3);
    const auto chain = oracle::exact_chain_analysis(s, 1.0);
    const std::size_t size = chain.transition.size();
    std::vector<bool> seen(size, false);
    std::queue<std::size_t> frontier;
    frontier.push(0);
    seen[0] = true;
    while (!frontier.empty()) {
      const std::size_t i = frontier.front();
      frontier.pop();
      for (std::size_t j = 0; j < size; ++j)
        if (chain.transition[i][j] > 0.0 && !seen[j]) {
          seen[j] = true;
          frontier.push(j);
        }
    }
    for (bool reached : seen) CHECK(reached);
  }
}

TEST_CASE("chain analysis: uniform stationary at gamma zero") {
  Rng rng(66);
  const Scenario s = test::random_scenario(rng, 2, 3);
  const auto chain = oracle::exact_chain_analysis(s, 0.0);
  for (double v : chain.stationary)
    CHECK(v == doctest::Approx(1.0 / static_cast<double>(
                                   chain.stationary.size()))
                   .epsilon(1e-12));
}

TEST_CASE("chain analysis: detailed balance against the softmax form") {
  Rng rng(67);
  for (int trial = 0; trial < 10; ++trial) {
    const Scenario s = test::random_scenario(rng, 3, 2);
    for (double gamma : {0.0, 0.5, 2.0}) {
      const auto chain = oracle::exact_chain_analysis(s, gamma);
      const auto q = stationary_distribution(s, gamma);
      const std::size_t size = q.size();
      for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j) {
          const double forward = q[i] * chain.transition[i][j];
          const double backward = q[j] * chain.transition[j][i];
          const double scale = std::max(std::abs(forward), std::abs(backward));
          CHECK(std::abs(forward - backward) <= 1e-12 * std::max(scale, 1e-300));
        }
    }
  }
}

TEST_CASE("monte carlo backoff: lone contender always wins") {
  CHECK(oracle::monte_carlo_backoff(10, 1, 1000, 1) == 1.0);
}

TEST_CASE("monte carlo backoff: matches the closed form at x = 2") {
  const std::int64_t trials = 1000000;
  const double empirical = oracle::monte_carlo_backoff(10, 2, trials, 2024);
  const double sigma =
      std::sqrt(0.45 * 0.55 / static_cast<double>(trials));
  CHECK(std::abs(empirical - 0.45) <= 3.0 * sigma);
}

TEST_CASE("monte carlo backoff: contenders are exchangeable") {
  // Joint simulation: every contender's win rate should match g(x).
  const int x = 4;
  const int lambda_max = 10;
  const std::int64_t trials = 200000;
  Rng rng(31337);
  std::vector<std::int64_t> wins(static_cast<std::size_t>(x), 0);
  for (std::int64_t t = 0; t < trials; ++t) {
    std::vector<std::size_t> draws(static_cast<std::size_t>(x));
    for (auto& d : draws)
      d = rng.uniform_index(static_cast<std::size_t>(lambda_max)) + 1;
    std::size_t best = 0;
    bool unique = true;
    for (std::size_t i = 1; i < draws.size(); ++i) {
      if (draws[i] < draws[best]) {
        best = i;
        unique = true;
      } else if (draws[i] == draws[best]) {
        unique = false;
      }
    }
    if (unique) ++wins[best];
  }
  const double expected = contention_success(lambda_max, x);
  const double sigma =
      std::sqrt(expected * (1.0 - expected) / static_cast<double>(trials));
  for (std::int64_t w : wins) {
    const double rate = static_cast<double>(w) / static_cast<double>(trials);
    CHECK(std::abs(rate - expected) <= 4.0 * sigma);
  }
}

TEST_SUITE_END();
