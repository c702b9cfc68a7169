#include "uavjam/special.hpp"

#include <cmath>
#include <numbers>

namespace uavjam {

double scaled_erfc(double x) {
  if (x < 20.0) return std::exp(x * x) * std::erfc(x);
  // Asymptotic series sum_k (-1)^k (2k-1)!! / (2x^2)^k; terms shrink
  // geometrically for x >= 20.
  const double inv = 1.0 / (2.0 * x * x);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 30; ++k) {
    term *= -(2.0 * k - 1.0) * inv;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum / (x * std::sqrt(std::numbers::pi));
}

}  // namespace uavjam
