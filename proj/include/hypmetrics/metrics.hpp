#pragma once

#include <algorithm>
#include <cmath>
#include <optional>

#include "hypmetrics/domain.hpp"
#include "hypmetrics/error.hpp"
#include "hypmetrics/point.hpp"

namespace hypmetrics {

enum class MetricKind { tau, u, j };

inline const char* to_string(MetricKind m) {
  switch (m) {
    case MetricKind::tau: return "tau";
    case MetricKind::u: return "u";
    case MetricKind::j: return "j";
  }
  return "unknown";
}

struct EvalResult {
  double value = 0.0;
  std::optional<Point> witness;
  Method method = Method::closed_form;
  double err_bound = 0.0;
};

/// Scale-invariant Cassinian metric:
///   log(1 + sup_p |x-y| / sqrt(|x-p||p-y|)),  p over the boundary.
/// Coincident points short-circuit to exactly 0.
inline EvalResult tau_tilde(const Domain& d, const Point& x, const Point& y) {
  require_inside(d, x);
  require_inside(d, y);
  if (x == y) return {0.0, std::nullopt, d.is_canonical() ? Method::closed_form : Method::sampled, 0.0};
  const BoundaryInf inf = boundary_product_inf(d, x, y);
  const double t = x.distance(y);
  const double root = std::sqrt(inf.value);
  const double value = std::log1p(t / root);
  // d(value)/d(inf) = -(t / (2 inf^{3/2})) / (1 + t / sqrt(inf))
  const double slope = (t / (2.0 * inf.value * root)) / (1.0 + t / root);
  return {value, inf.witness, inf.method, slope * inf.abs_error};
}

/// Gromov hyperbolic metric:
///   2 log((|x-y| + max(dx, dy)) / sqrt(dx dy)),  d. = distance to boundary.
inline EvalResult u_metric(const Domain& d, const Point& x, const Point& y) {
  const BoundaryNearest nx = nearest_boundary(d, x);
  const BoundaryNearest ny = nearest_boundary(d, y);
  const Method m = d.is_canonical() ? Method::closed_form : Method::sampled;
  if (x == y) return {0.0, std::nullopt, m, 0.0};
  const double t = x.distance(y);
  const double dx = nx.distance;
  const double dy = ny.distance;
  const double value = 2.0 * std::log((t + std::max(dx, dy)) / std::sqrt(dx * dy));
  // |du/dd.| <= 3 / d. since t + max >= d.
  const double err = 3.0 * (nx.abs_error / dx + ny.abs_error / dy);
  return {value, std::nullopt, m, err};
}

/// Distance-ratio metric: log(1 + |x-y| / min(dx, dy)).
inline EvalResult j_metric(const Domain& d, const Point& x, const Point& y) {
  const BoundaryNearest nx = nearest_boundary(d, x);
  const BoundaryNearest ny = nearest_boundary(d, y);
  const Method m = d.is_canonical() ? Method::closed_form : Method::sampled;
  if (x == y) return {0.0, std::nullopt, m, 0.0};
  const double t = x.distance(y);
  const BoundaryNearest& near = nx.distance <= ny.distance ? nx : ny;
  const double value = std::log1p(t / near.distance);
  const double err = near.abs_error * (t / (near.distance * near.distance)) / (1.0 + t / near.distance);
  return {value, near.witness, m, err};
}

inline EvalResult evaluate(MetricKind kind, const Domain& d, const Point& x, const Point& y) {
  switch (kind) {
    case MetricKind::tau: return tau_tilde(d, x, y);
    case MetricKind::u: return u_metric(d, x, y);
    case MetricKind::j: return j_metric(d, x, y);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown metric");
}

/// tau on the unit ball for x = s*y with |x| <= |y|: t_sign > 0 is the
/// radial case (same ray), t_sign < 0 the diametral case (opposite rays).
inline double tau_radial_closed_form(double x_norm, double y_norm, int t_sign) {
  if (t_sign != 1 && t_sign != -1) throw Error(ErrorCode::InvalidArgument, "t_sign must be +1 or -1");
  if (!(x_norm >= 0.0 && x_norm < 1.0 && y_norm >= 0.0 && y_norm < 1.0)) {
    throw Error(ErrorCode::RangeViolation, "norms must lie in [0, 1)");
  }
  if (x_norm > y_norm) throw Error(ErrorCode::OrderViolation, "requires |x| <= |y|");
  if (t_sign > 0) {
    const double dist = y_norm - x_norm;
    return std::log1p(dist / std::sqrt((1.0 - x_norm) * (1.0 - y_norm)));
  }
  const double dist = x_norm + y_norm;
  return std::log1p(dist / std::sqrt((1.0 + x_norm) * (1.0 - y_norm)));
}

/// tau on the unit ball between -w and w with |2w| = t:
///   log(1 + 2t / sqrt(4 - t^2)).
inline double tau_modulus_bound(double t) {
  if (!(t >= 0.0 && t < 2.0)) throw Error(ErrorCode::RangeViolation, "t must lie in [0, 2)");
  return std::log1p(2.0 * t / std::sqrt(4.0 - t * t));
}

/// u on the unit ball between -w and w with |2w| = t:
///   2 log((2 + t) / (2 - t)).
inline double u_modulus_bound(double t) {
  if (!(t >= 0.0 && t < 2.0)) throw Error(ErrorCode::RangeViolation, "t must lie in [0, 2)");
  return 2.0 * std::log((2.0 + t) / (2.0 - t));
}

/// Lower bound for tau on a bounded domain contained in a ball of radius r:
///   log(1 + 2t / sqrt(4r^2 - t^2)).
inline double tau_general_bound(double t, double r) {
  if (!(r > 0.0) || !(t >= 0.0 && t < 2.0 * r)) {
    throw Error(ErrorCode::RangeViolation, "requires 0 <= t < 2r");
  }
  return std::log1p(2.0 * t / std::sqrt(4.0 * r * r - t * t));
}

}  // namespace hypmetrics
