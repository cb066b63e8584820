#pragma once

#include <cmath>
#include <cstddef>
#include <iterator>
#include <list>
#include <span>
#include <vector>

#include "hypmetrics/error.hpp"
#include "hypmetrics/point.hpp"

namespace hypmetrics {

struct EnclosingBall {
  Point center;
  double radius;

  bool contains(const Point& p, double rel_tol = 1e-9) const {
    return center.distance(p) <= radius * (1.0 + rel_tol) + 1e-300;
  }
};

/// Radius of a ball that contains every set of the given diameter in R^n.
inline double jung_radius(double diameter, std::size_t n) {
  if (!(diameter > 0.0)) throw Error(ErrorCode::NonpositiveDiameter, "diameter must be positive");
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "dimension must be >= 1");
  const double nd = static_cast<double>(n);
  return diameter * std::sqrt(nd / (2.0 * nd + 2.0));
}

namespace detail {

// Smallest ball with all of `support` on its boundary: the circumcenter
// within the affine hull. Returns false when the support is affinely
// dependent.
inline bool ball_through(const std::vector<Point>& support, EnclosingBall& out) {
  const Point& p0 = support.front();
  const std::size_t k = support.size() - 1;
  if (k == 0) {
    out = {p0, 0.0};
    return true;
  }
  // Solve G * lambda = rhs with G_ij = (p_i - p0).(p_j - p0), rhs_i = |p_i - p0|^2 / 2.
  std::vector<Point> q;
  q.reserve(k);
  for (std::size_t i = 1; i <= k; ++i) q.push_back(support[i] - p0);
  std::vector<double> a(k * (k + 1));
  double scale = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) a[i * (k + 1) + j] = q[i].dot(q[j]);
    a[i * (k + 1) + k] = 0.5 * q[i].norm_sq();
    scale = std::max(scale, q[i].norm_sq());
  }
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < k; ++r)
      if (std::abs(a[r * (k + 1) + col]) > std::abs(a[piv * (k + 1) + col])) piv = r;
    if (std::abs(a[piv * (k + 1) + col]) <= 1e-12 * scale) return false;
    if (piv != col)
      for (std::size_t c = 0; c <= k; ++c) std::swap(a[piv * (k + 1) + c], a[col * (k + 1) + c]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col) continue;
      const double f = a[r * (k + 1) + col] / a[col * (k + 1) + col];
      for (std::size_t c = col; c <= k; ++c) a[r * (k + 1) + c] -= f * a[col * (k + 1) + c];
    }
  }
  Point center = p0;
  for (std::size_t i = 0; i < k; ++i) {
    const double lambda = a[i * (k + 1) + k] / a[i * (k + 1) + i];
    center = center + q[i] * lambda;
  }
  out = {center, center.distance(p0)};
  return true;
}

class MoveToFrontBall {
 public:
  MoveToFrontBall(std::span<const Point> points, std::size_t dim)
      : pts_(points.begin(), points.end()), dim_(dim), ball_{points.front(), -1.0} {
    std::vector<Point> support;
    recurse(pts_.end(), support);
  }

  const EnclosingBall& ball() const { return ball_; }

 private:
  bool outside(const Point& p) const {
    if (ball_.radius < 0.0) return true;
    return p.distance(ball_.center) > ball_.radius * (1.0 + 1e-12);
  }

  void recurse(std::list<Point>::iterator end, std::vector<Point>& support) {
    if (support.empty()) {
      ball_ = {pts_.front(), -1.0};
    } else if (!ball_through(support, ball_)) {
      return;
    }
    if (support.size() == dim_ + 1) return;
    for (auto it = pts_.begin(); it != end;) {
      auto next = std::next(it);
      if (outside(*it)) {
        support.push_back(*it);
        EnclosingBall saved = ball_;
        if (ball_through(support, ball_)) {
          recurse(it, support);
        } else {
          ball_ = saved;
        }
        support.pop_back();
        if (it != pts_.begin()) pts_.splice(pts_.begin(), pts_, it);
      }
      it = next;
    }
  }

  std::list<Point> pts_;
  std::size_t dim_;
  EnclosingBall ball_;
};

}  // namespace detail

/// Smallest enclosing ball. Exact move-to-front recursion for dim <= 3, an
/// iterative core-set heuristic above that. In both cases the returned radius
/// is re-certified as the max distance from the center to any input point.
inline EnclosingBall min_enclosing_ball(std::span<const Point> points) {
  if (points.empty()) throw Error(ErrorCode::EmptyInput, "no points");
  const std::size_t dim = points.front().dim();
  for (const Point& p : points) {
    if (p.dim() != dim) throw Error(ErrorCode::DimensionMismatch, "points differ in dimension");
  }

  Point center = points.front();
  if (dim <= 3) {
    center = detail::MoveToFrontBall(points, dim).ball().center;
  } else {
    // Badoiu-Clarkson: step toward the farthest point with 1/(i+1) weights.
    constexpr std::size_t kIterations = 4000;
    for (std::size_t i = 1; i <= kIterations; ++i) {
      std::size_t far = 0;
      double best = -1.0;
      for (std::size_t k = 0; k < points.size(); ++k) {
        const double d = center.distance_sq(points[k]);
        if (d > best) {
          best = d;
          far = k;
        }
      }
      center = center + (points[far] - center) * (1.0 / static_cast<double>(i + 1));
    }
  }
  double radius = 0.0;
  for (const Point& p : points) radius = std::max(radius, center.distance(p));
  return {center, radius};
}

}  // namespace hypmetrics
