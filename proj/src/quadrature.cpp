#include "uavjam/quadrature.hpp"

namespace uavjam {

std::vector<std::string> check(const QuadratureSettings& quad) {
  std::vector<std::string> out;
  if (!(quad.rel_tol > 0.0)) out.emplace_back("rel_tol > 0");
  if (!(quad.abs_tol > 0.0)) out.emplace_back("abs_tol > 0");
  if (!(quad.radial_truncation > 0.0) || !std::isfinite(quad.radial_truncation)) {
    out.emplace_back("radial_truncation > 0");
  }
  if (quad.max_subdivisions < 1) out.emplace_back("max_subdivisions >= 1");
  return out;
}

std::vector<double> make_partition(double lo, double hi,
                                   std::vector<double> interior) {
  std::vector<double> pts;
  pts.reserve(interior.size() + 2);
  pts.push_back(lo);
  std::sort(interior.begin(), interior.end());
  for (double p : interior) {
    if (std::isfinite(p) && p > lo && p < hi && p > pts.back() * (1.0 + 1e-9)) {
      pts.push_back(p);
    }
  }
  pts.push_back(hi);
  return pts;
}

}  // namespace uavjam
