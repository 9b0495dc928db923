#pragma once

#include <cmath>

namespace wsnet {

// Relative threshold below which a utility delta does not count as a strict
// improvement. Keeps best-response dynamics from livelocking on float noise.
inline constexpr double kImprovementEps = 1e-12;

inline bool improves(double candidate, double incumbent) {
  return candidate - incumbent > kImprovementEps * std::abs(incumbent);
}

// Three-way sign of `delta` with a dead zone of kImprovementEps relative to
// `scale` (pass the magnitude of the quantities being differenced).
inline int sign_of(double delta, double scale) {
  const double tol = kImprovementEps * std::abs(scale);
  if (delta > tol) return 1;
  if (delta < -tol) return -1;
  return 0;
}

}  // namespace wsnet
