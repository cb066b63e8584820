#pragma once

#include <cmath>
#include <cstddef>

namespace hypmetrics {

struct GoldenResult {
  double x;
  double fx;
  double lo;  // final bracket
  double hi;
  std::size_t iterations;
  bool converged;
};

/// Golden-section minimization of a unimodal f on [lo, hi]. Stops when the
/// bracket is narrower than `tol` or after `max_iter` shrink steps.
template <typename F>
GoldenResult golden_section_minimize(F&& f, double lo, double hi, double tol,
                                     std::size_t max_iter = 500) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  std::size_t it = 0;
  while (hi - lo > tol && it < max_iter) {
    if (fc <= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
    ++it;
    // Once the interior points collapse onto each other no further
    // progress is possible in floating point.
    if (!(lo < c && c <= d && d < hi)) break;
  }
  const bool converged = (hi - lo) <= tol || !(lo < c && c <= d && d < hi);
  if (fc <= fd) return {c, fc, lo, hi, it, converged};
  return {d, fd, lo, hi, it, converged};
}

/// Bisection for a sign change of f on [lo, hi]. Requires f(lo), f(hi) of
/// opposite sign (or zero at an endpoint). Returns the midpoint of the final
/// bracket.
template <typename F>
double bisect_root(F&& f, double lo, double hi, std::size_t max_iter = 200) {
  double flo = f(lo);
  if (flo == 0.0) return lo;
  if (f(hi) == 0.0) return hi;
  for (std::size_t i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace hypmetrics
