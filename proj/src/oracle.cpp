#include "wsnet/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wsnet/numeric.hpp"
#include "wsnet/rng.hpp"
#include "wsnet/throughput.hpp"

namespace wsnet {
namespace oracle {

OptimumResult brute_force_optimum(const Scenario& scenario,
                                  EnumerationGuard guard) {
  const ProfileSpace space(scenario, guard);
  OptimumResult result;
  result.profile = space.at(0);
  result.system_throughput = system_throughput(scenario, result.profile);
  for (std::size_t i = 1; i < space.size(); ++i) {
    const ChannelProfile profile = space.at(i);
    const double value = system_throughput(scenario, profile);
    if (value > result.system_throughput) {  // strict keeps the lex-smallest
      result.system_throughput = value;
      result.profile = profile;
    }
  }
  return result;
}

std::vector<ChannelProfile> enumerate_ne(const Scenario& scenario,
                                         EnumerationGuard guard) {
  const ProfileSpace space(scenario, guard);
  std::vector<ChannelProfile> equilibria;
  for (std::size_t i = 0; i < space.size(); ++i) {
    const ChannelProfile profile = space.at(i);
    bool is_ne = true;
    for (int n = 0; n < scenario.ap_count() && is_ne; ++n) {
      const double current = throughput(scenario, profile, n);
      for (int channel : scenario.ap(n).feasible_channels) {
        if (channel == profile[static_cast<std::size_t>(n)]) continue;
        if (improves(throughput_with(scenario, profile, n, channel), current)) {
          is_ne = false;
          break;
        }
      }
    }
    if (is_ne) equilibria.push_back(profile);
  }
  if (equilibria.empty())
    throw std::runtime_error(
        "enumerate_ne: no equilibrium found; impossible for a potential game, "
        "signals a bug");
  return equilibria;
}

namespace {

// Solves x from A x = b by Gaussian elimination with partial pivoting.
std::vector<double> solve_linear(std::vector<std::vector<double>> a,
                                 std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row)
      if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
    if (a[pivot][col] == 0.0)
      throw std::runtime_error(
          "exact_chain_analysis: singular linear system; signals a modeling "
          "bug");
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t row = col + 1; row < n; ++row) {
      const double factor = a[row][col] / a[col][col];
      if (factor == 0.0) continue;
      for (std::size_t k = col; k < n; ++k) a[row][k] -= factor * a[col][k];
      b[row] -= factor * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t row = n; row-- > 0;) {
    double sum = b[row];
    for (std::size_t k = row + 1; k < n; ++k) sum -= a[row][k] * x[k];
    x[row] = sum / a[row][row];
  }
  return x;
}

}  // namespace

ChainAnalysis exact_chain_analysis(const Scenario& scenario, double gamma,
                                   EnumerationGuard guard) {
  if (gamma < 0.0)
    throw std::invalid_argument("exact_chain_analysis: gamma must be >= 0");
  const ProfileSpace space(scenario, guard);
  const std::size_t size = space.size();
  if (size > 2000)
    throw std::invalid_argument(
        "exact_chain_analysis: profile space too large for dense linear "
        "algebra (cap 2000)");
  const int n_aps = scenario.ap_count();

  ChainAnalysis analysis;
  analysis.transition.assign(size, std::vector<double>(size, 0.0));
  for (std::size_t i = 0; i < size; ++i) {
    ChannelProfile profile = space.at(i);
    for (int n = 0; n < n_aps; ++n) {
      const auto& feasible = scenario.ap(n).feasible_channels;
      const int original = profile[static_cast<std::size_t>(n)];
      std::vector<double> exponents(feasible.size());
      for (std::size_t c = 0; c < feasible.size(); ++c) {
        profile[static_cast<std::size_t>(n)] = feasible[c];
        exponents[c] = gamma * system_throughput(scenario, profile);
      }
      const double shift =
          *std::max_element(exponents.begin(), exponents.end());
      double total = 0.0;
      for (double& e : exponents) {
        e = std::exp(e - shift);
        total += e;
      }
      for (std::size_t c = 0; c < feasible.size(); ++c) {
        profile[static_cast<std::size_t>(n)] = feasible[c];
        analysis.transition[i][space.index_of(profile)] +=
            exponents[c] / (total * static_cast<double>(n_aps));
      }
      profile[static_cast<std::size_t>(n)] = original;
    }
  }

  // Stationary vector: replace one balance equation with sum(pi) = 1 and
  // solve (T^t - I) pi = 0.
  std::vector<std::vector<double>> a(size, std::vector<double>(size, 0.0));
  std::vector<double> b(size, 0.0);
  for (std::size_t row = 0; row + 1 < size; ++row) {
    for (std::size_t col = 0; col < size; ++col)
      a[row][col] = analysis.transition[col][row];
    a[row][row] -= 1.0;
  }
  for (std::size_t col = 0; col < size; ++col) a[size - 1][col] = 1.0;
  b[size - 1] = 1.0;

  std::vector<double> pi = solve_linear(a, b);

  // Iterative refinement with explicit renormalization: push the solution
  // through the kernel until the residual settles.
  auto residual = [&](const std::vector<double>& v) {
    double worst = 0.0;
    for (std::size_t col = 0; col < size; ++col) {
      double next = 0.0;
      for (std::size_t rowi = 0; rowi < size; ++rowi)
        next += v[rowi] * analysis.transition[rowi][col];
      worst = std::max(worst, std::abs(next - v[col]));
    }
    return worst;
  };
  for (int round = 0; round < 64; ++round) {
    if (residual(pi) <= 1e-13) break;
    std::vector<double> next(size, 0.0);
    for (std::size_t rowi = 0; rowi < size; ++rowi)
      for (std::size_t col = 0; col < size; ++col)
        next[col] += pi[rowi] * analysis.transition[rowi][col];
    pi = std::move(next);
    double total = 0.0;
    for (double v : pi) total += v;
    for (double& v : pi) v /= total;
  }
  if (residual(pi) > 1e-12)
    throw std::runtime_error(
        "exact_chain_analysis: stationary residual above 1e-12; signals a "
        "modeling bug");
  double total = 0.0;
  for (double v : pi) total += v;
  for (double& v : pi) v /= total;
  analysis.stationary = std::move(pi);
  return analysis;
}

double monte_carlo_backoff(int lambda_max, int contenders, std::int64_t trials,
                           std::uint64_t seed) {
  if (lambda_max < 1)
    throw std::invalid_argument("monte_carlo_backoff: lambda_max must be >= 1");
  if (contenders < 1)
    throw std::invalid_argument("monte_carlo_backoff: contenders must be >= 1");
  if (trials < 1)
    throw std::invalid_argument("monte_carlo_backoff: trials must be >= 1");
  Rng rng(seed);
  std::int64_t wins = 0;
  for (std::int64_t t = 0; t < trials; ++t) {
    const std::size_t tagged =
        rng.uniform_index(static_cast<std::size_t>(lambda_max)) + 1;
    bool won = true;
    for (int other = 1; other < contenders; ++other) {
      const std::size_t slot =
          rng.uniform_index(static_cast<std::size_t>(lambda_max)) + 1;
      if (slot <= tagged) {
        won = false;
        break;
      }
    }
    if (won) ++wins;
  }
  return static_cast<double>(wins) / static_cast<double>(trials);
}

}  // namespace oracle
}  // namespace wsnet
