#include "wsnet/contention.hpp"

#include <cmath>
#include <stdexcept>

namespace wsnet {

double contention_success(int lambda_max, int contenders) {
  if (lambda_max < 1)
    throw std::invalid_argument("contention_success: lambda_max must be >= 1");
  if (contenders < 0)
    throw std::invalid_argument("contention_success: contenders must be >= 0");
  if (contenders <= 1) return 1.0;
  // sum_{j=0}^{lambda_max-1} j^(x-1) / lambda_max^x. Both sides are exact
  // integers while they fit in 53 bits, so small cases (e.g. 9/20 at
  // lambda_max = 10, x = 2) come out bit-exact.
  double num = 0.0;
  for (int j = 1; j < lambda_max; ++j)
    num += std::pow(static_cast<double>(j), static_cast<double>(contenders - 1));
  return num / std::pow(static_cast<double>(lambda_max),
                        static_cast<double>(contenders));
}

double no_grab_probability(int lambda_max, int contenders) {
  return 1.0 - static_cast<double>(contenders) *
                   contention_success(lambda_max, contenders);
}

ContentionModel::ContentionModel(int lambda_max, int x_max)
    : lambda_max_(lambda_max) {
  if (lambda_max < 1)
    throw std::invalid_argument("ContentionModel: lambda_max must be >= 1");
  if (x_max < 1)
    throw std::invalid_argument("ContentionModel: x_max must be >= 1");
  g_.resize(static_cast<std::size_t>(x_max) + 1);
  for (int x = 0; x <= x_max; ++x)
    g_[static_cast<std::size_t>(x)] = contention_success(lambda_max, x);
}

double ContentionModel::success(int contenders) const {
  if (contenders < 0)
    throw std::invalid_argument("ContentionModel::success: contenders must be >= 0");
  if (static_cast<std::size_t>(contenders) < g_.size())
    return g_[static_cast<std::size_t>(contenders)];
  return contention_success(lambda_max_, contenders);
}

}  // namespace wsnet
