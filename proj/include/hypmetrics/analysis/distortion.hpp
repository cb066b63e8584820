#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "hypmetrics/analysis/report.hpp"
#include "hypmetrics/domain.hpp"
#include "hypmetrics/error.hpp"
#include "hypmetrics/metrics.hpp"
#include "hypmetrics/point.hpp"
#include "hypmetrics/sampling.hpp"

namespace hypmetrics {

using PointMap = std::function<Point(const Point&)>;

inline constexpr std::size_t kDilatationDirections = 4096;

struct DilatationEstimate {
  double value;                 // ratio at the smallest radius
  std::vector<double> ratios;   // one per radius, in input order
  bool settled;                 // ratios change by < 1% over the last half of the radii
};

/// Linear dilatation H(f, x) = limsup_{r->0} max|f(x)-f(y)| / min|f(x)-f(y)|
/// over |x - y| = r, estimated on `kDilatationDirections` directions per radius.
inline DilatationEstimate linear_dilatation(const PointMap& f, const Point& x, std::span<const double> radii,
                                            const std::optional<Domain>& domain = std::nullopt) {
  if (radii.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one radius");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) throw Error(ErrorCode::InvalidArgument, "radii must be positive");
    if (i > 0 && !(radii[i] < radii[i - 1])) throw Error(ErrorCode::InvalidArgument, "radii must decrease");
  }
  if (domain) {
    require_inside(*domain, x);
    if (!(dist_to_boundary(*domain, x) > radii.front())) {
      throw Error(ErrorCode::ClearanceViolation, "sphere of largest radius leaves the domain");
    }
  }
  const std::vector<Point> dirs = sphere_directions(x.dim(), kDilatationDirections);
  DilatationEstimate est{0.0, {}, true};
  try {
    const Point fx = f(x);
    for (double r : radii) {
      double hi = 0.0;
      double lo = std::numeric_limits<double>::infinity();
      for (const Point& u : dirs) {
        const double d = f(x + u * r).distance(fx);
        hi = std::max(hi, d);
        lo = std::min(lo, d);
      }
      if (!(lo > 0.0)) throw Error(ErrorCode::ClearanceViolation, "map is not injective near x");
      est.ratios.push_back(hi / lo);
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::PoleInput) throw Error(ErrorCode::ClearanceViolation, e.what());
    throw;
  }
  est.value = est.ratios.back();
  const std::size_t half = est.ratios.size() / 2;
  for (std::size_t i = half + 1; i < est.ratios.size(); ++i) {
    if (std::abs(est.ratios[i] - est.ratios[i - 1]) > 1e-2 * est.ratios[i - 1]) est.settled = false;
  }
  return est;
}

struct DistortionMeasurement {
  double sup_ratio = 0.0;
  double inf_ratio = std::numeric_limits<double>::infinity();
  std::optional<Witness> sup_witness;
  std::optional<Witness> inf_witness;
  std::size_t pairs_used = 0;
};

/// Extremal ratios metric_{image}(f x, f y) / metric_{d}(x, y) over random
/// pairs of d; pairs with metric_d < 1e-9 are skipped.
inline DistortionMeasurement measure_distortion(const PointMap& f, const Domain& d, const Domain& d_image,
                                                MetricKind metric, std::size_t samples, std::uint64_t seed) {
  DistortionMeasurement out;
  Rng rng = make_stream(seed, 0);
  for (std::size_t i = 0; i < samples; ++i) {
    const Point x = random_point(d, rng);
    const Point y = random_point(d, rng);
    const Point fx = f(x);
    const Point fy = f(y);
    if (!contains(d_image, fx) || !contains(d_image, fy)) {
      throw Error(ErrorCode::ImageEscape, "image point outside the target domain");
    }
    const double base = evaluate(metric, d, x, y).value;
    if (base < 1e-9) continue;
    const double ratio = evaluate(metric, d_image, fx, fy).value / base;
    ++out.pairs_used;
    if (ratio > out.sup_ratio) {
      out.sup_ratio = ratio;
      out.sup_witness = Witness{x, y, d};
    }
    if (ratio < out.inf_ratio) {
      out.inf_ratio = ratio;
      out.inf_witness = Witness{x, y, d};
    }
  }
  return out;
}

}  // namespace hypmetrics
