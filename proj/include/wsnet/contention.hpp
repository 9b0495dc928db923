#pragma once

#include <vector>

namespace wsnet {

// Probability that a tagged user among `contenders` draws the unique minimum
// of uniform backoff slots in 1..lambda_max:
//   g(x) = sum_{lam=1}^{lambda_max} (1/lambda_max) ((lambda_max-lam)/lambda_max)^(x-1)
// for x >= 1; g(0) and g(1) are 1 by convention (a lone contender always wins,
// and the x = 0 term must contribute nothing to log-sums).
double contention_success(int lambda_max, int contenders);

// Probability that nobody grabs the channel in a slot: 1 - x * g(x).
// Strictly increasing in x on x >= 1, which is what makes it invertible for
// load estimation.
double no_grab_probability(int lambda_max, int contenders);

// Precomputed g table for occupancy 0..x_max; falls back to the closed form
// beyond the table. Immutable after construction.
class ContentionModel {
 public:
  ContentionModel(int lambda_max, int x_max);

  int lambda_max() const { return lambda_max_; }
  double success(int contenders) const;

 private:
  int lambda_max_;
  std::vector<double> g_;
};

}  // namespace wsnet
