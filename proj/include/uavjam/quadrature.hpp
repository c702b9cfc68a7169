#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace uavjam {

/// Tolerances for the adaptive integrators. `radial_truncation` bounds the
/// radial eavesdropper integrals whose integrands decay super-exponentially;
/// algebraically decaying integrals are mapped to [0, inf) instead.
struct QuadratureSettings {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  double radial_truncation = 1e4;
  int max_subdivisions = 4000;
};

std::vector<std::string> check(const QuadratureSettings& quad);

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double estimate, double error)
      : std::runtime_error(what + " (estimate " + std::to_string(estimate) +
                           ", error " + std::to_string(error) + ")"),
        estimate_(estimate),
        error_(error) {}

  double estimate() const { return estimate_; }
  double error() const { return error_; }

 private:
  double estimate_;
  double error_;
};

namespace detail {

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

// 15-point Kronrod rule with embedded 7-point Gauss rule; error estimate as
// in QUADPACK's qk15.
template <class F>
Segment gauss_kronrod15(F& f, double a, double b) {
  static constexpr double xgk[8] = {
      0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
      0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
      0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
  static constexpr double wgk[8] = {
      0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  static constexpr double wg[4] = {
      0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resg = fc * wg[3];
  double resk = fc * wgk[7];
  double resabs = std::abs(resk);
  double fv1[7];
  double fv2[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * xgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    fv1[j] = f1;
    fv2[j] = f2;
    resk += wgk[j] * (f1 + f2);
    resabs += wgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) resg += wg[j / 2] * (f1 + f2);
  }
  const double reskh = 0.5 * resk;
  double resasc = wgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += wgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
  }
  const double scale = std::abs(half);
  resk *= half;
  resabs *= scale;
  resasc *= scale;
  double err = std::abs((resk - resg * half));
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
    err = std::max(50.0 * eps * resabs, err);
  }
  return {a, b, resk, err};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod integration over [points.front(),
/// points.back()], starting from the partition given by `points` (sorted,
/// at least two entries). Always bisects the segment with the largest error.
template <class F>
QuadratureResult integrate(F&& f, std::span<const double> points,
                           double rel_tol, double abs_tol,
                           int max_subdivisions) {
  if (points.size() < 2) {
    throw std::invalid_argument("integrate: need at least two points");
  }
  std::priority_queue<detail::Segment> heap;
  QuadratureResult out;
  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (!(points[i + 1] > points[i])) continue;
    auto seg = detail::gauss_kronrod15(f, points[i], points[i + 1]);
    out.evaluations += 15;
    total += seg.value;
    total_err += seg.error;
    heap.push(seg);
  }
  int subdivisions = 0;
  // Segments too narrow to bisect keep their error; track it separately.
  double frozen_err = 0.0;
  while (!heap.empty() &&
         total_err > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (!std::isfinite(total)) {
      throw QuadratureError("integrate: non-finite integrand", total,
                            total_err);
    }
    if (subdivisions >= max_subdivisions) {
      throw QuadratureError("integrate: subdivision limit reached", total,
                            total_err);
    }
    auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      frozen_err += worst.error;
      if (heap.empty()) break;
      continue;
    }
    auto left = detail::gauss_kronrod15(f, worst.a, mid);
    auto right = detail::gauss_kronrod15(f, mid, worst.b);
    out.evaluations += 30;
    ++subdivisions;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum to shed the drift of the running updates.
  total = 0.0;
  total_err = frozen_err;
  while (!heap.empty()) {
    total += heap.top().value;
    total_err += heap.top().error;
    heap.pop();
  }
  if (!std::isfinite(total)) {
    throw QuadratureError("integrate: non-finite integrand", total, total_err);
  }
  out.value = total;
  out.error = total_err;
  return out;
}

/// Integral over [points.front(), inf). The finite part uses the given
/// partition; the tail [points.back(), inf) is mapped onto (0, 1] by
/// x = points.back() / t, which requires points.back() > 0.
template <class F>
QuadratureResult integrate_to_infinity(F&& f, std::span<const double> points,
                                       double rel_tol, double abs_tol,
                                       int max_subdivisions) {
  const double start = points.back();
  if (!(start > 0.0)) {
    throw std::invalid_argument("integrate_to_infinity: tail start must be > 0");
  }
  auto tail = [&f, start](double t) {
    const double x = start / t;
    const double v = f(x);
    return v == 0.0 ? 0.0 : v * start / (t * t);
  };
  const double unit[] = {0.0, 0.5, 1.0};
  QuadratureResult head;
  if (points.size() >= 2) {
    head = integrate(f, points, rel_tol, abs_tol, max_subdivisions);
  }
  // The tail's absolute target follows the head so it is not over-resolved.
  const double tail_abs = std::max(abs_tol, rel_tol * std::abs(head.value));
  auto rest = integrate(tail, unit, rel_tol, tail_abs, max_subdivisions);
  return {head.value + rest.value, head.error + rest.error,
          head.evaluations + rest.evaluations};
}

/// Sorted, de-duplicated partition of [lo, hi] from the candidate interior
/// points that fall strictly inside.
std::vector<double> make_partition(double lo, double hi,
                                   std::vector<double> interior);

}  // namespace uavjam
