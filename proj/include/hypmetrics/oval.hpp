#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "hypmetrics/error.hpp"
#include "hypmetrics/golden.hpp"
#include "hypmetrics/point.hpp"

namespace hypmetrics {

/// Cassinian oval |p - focus1| |p - focus2| = level^2.
struct OvalSpec {
  Point focus1;
  Point focus2;
  double level;
  std::size_t resolution;
};

struct OvalTrace {
  // One loop for level >= half the focal distance, two otherwise.
  std::vector<std::vector<Point>> loops;

  std::vector<Point> points() const {
    std::vector<Point> all;
    for (const auto& loop : loops) all.insert(all.end(), loop.begin(), loop.end());
    return all;
  }
};

/// Traces the oval in the plane of the first two coordinates. Each loop
/// holds `resolution` points found by bisection along rays: from the foci
/// midpoint when the curve is connected, from each focus when it splits.
inline OvalTrace cassinian_oval(const OvalSpec& spec) {
  spec.focus1.require_same_dim(spec.focus2);
  if (spec.focus1.dim() < 2) throw Error(ErrorCode::DimensionMismatch, "foci need at least 2 coordinates");
  if (!(spec.level > 0.0) || !std::isfinite(spec.level)) {
    throw Error(ErrorCode::InvalidArgument, "level must be positive");
  }
  if (spec.resolution < 8) throw Error(ErrorCode::InvalidArgument, "resolution must be >= 8");

  const Point f1{spec.focus1[0], spec.focus1[1]};
  const Point f2{spec.focus2[0], spec.focus2[1]};
  const double half = 0.5 * f1.distance(f2);
  if (!(half > 0.0)) throw Error(ErrorCode::DegenerateFoci, "foci coincide");

  const double k2 = spec.level * spec.level;
  auto excess = [&](const Point& p) { return p.distance(f1) * p.distance(f2) - k2; };
  const double axis = std::atan2(f2[1] - f1[1], f2[0] - f1[0]);
  const std::size_t m = spec.resolution;
  OvalTrace trace;

  if (spec.level >= half) {
    const Point mid = (f1 + f2) * 0.5;
    const double c2 = half * half;
    const double k4 = k2 * k2;
    // On the lemniscate rays outside the two quarter-sectors around the
    // axis only meet the curve at the midpoint, so the angles stay inside them.
    const bool lemniscate = std::abs(k2 - c2) <= 1e-12 * c2;
    const std::size_t first = (m + 1) / 2;
    auto angle = [&](std::size_t i) {
      if (!lemniscate) return 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(m);
      const bool second = i >= first;
      const std::size_t count = second ? m - first : first;
      const double j = static_cast<double>(second ? i - first : i);
      const double start = axis + (second ? 0.75 : -0.25) * std::numbers::pi;
      return start + 0.5 * std::numbers::pi * j / static_cast<double>(count);
    };
    std::vector<Point> loop;
    loop.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double phi = angle(i);
      const Point dir{std::cos(phi), std::sin(phi)};
      // Along the ray the squared product is s^2 - 2 c^2 cos(2 theta) s + c^4 - k^4
      // in s = rho^2; the outer root lies between the vertex and s_max.
      const double cos2 = std::cos(2.0 * (phi - axis));
      const double s_lo = std::max(0.0, c2 * cos2);
      const double s_hi = c2 + k2;
      auto along = [&](double rho) { return excess(mid + dir * rho); };
      const double at_lo = s_lo * s_lo - 2.0 * c2 * cos2 * s_lo + c2 * c2 - k4;
      double rho = 0.0;
      if (at_lo < 0.0) rho = bisect_root(along, std::sqrt(s_lo), std::sqrt(s_hi));
      loop.push_back(mid + dir * rho);
    }
    trace.loops.push_back(std::move(loop));
    return trace;
  }

  // Two loops; the first crossing from a focus lies within c - sqrt(c^2 - k^2),
  // and the product is increasing on that stretch.
  const double s1 = half - std::sqrt(half * half - k2);
  for (const Point* focus : {&f1, &f2}) {
    std::vector<Point> loop;
    loop.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double phi = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(m);
      const Point dir{std::cos(phi), std::sin(phi)};
      auto along = [&](double s) { return excess(*focus + dir * s); };
      const double s = bisect_root(along, 0.0, s1);
      loop.push_back(*focus + dir * s);
    }
    trace.loops.push_back(std::move(loop));
  }
  return trace;
}

}  // namespace hypmetrics
