#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hypmetrics/error.hpp"
#include "hypmetrics/golden.hpp"
#include "hypmetrics/point.hpp"

namespace hypmetrics {

// Points closer than this to the boundary are treated as outside.
inline constexpr double kContainmentTolerance = 1e-12;

// Angular cells for the in-plane sphere search.
inline constexpr std::size_t kSphereGridCells = 4096;

struct UnitBall {
  std::size_t dim;
};

struct Ball {
  Point center;
  double radius;
};

struct PuncturedUnitBall {
  Point puncture;
};

struct PuncturedSpace {
  Point puncture;
};

/// A domain known only through a finite set of boundary samples and a
/// containment predicate. Copies share the (immutable) sample storage.
class SampledDomain {
 public:
  using Predicate = std::function<bool(const Point&)>;

  SampledDomain(std::vector<Point> boundary, Predicate inside, std::string label = "sampled",
                std::vector<Point> polygon = {}, std::size_t samples_per_edge = 0)
      : data_(std::make_shared<Data>()) {
    if (boundary.empty()) throw Error(ErrorCode::EmptyInput, "sampled domain needs boundary samples");
    if (!inside) throw Error(ErrorCode::InvalidArgument, "sampled domain needs a containment predicate");
    const std::size_t dim = boundary.front().dim();
    for (const Point& p : boundary) {
      if (p.dim() != dim) throw Error(ErrorCode::DimensionMismatch, "boundary samples differ in dim");
    }
    std::vector<std::size_t> order(boundary.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::lexicographical_compare(boundary[a].coords().begin(), boundary[a].coords().end(),
                                          boundary[b].coords().begin(), boundary[b].coords().end());
    });
    for (std::size_t i = 1; i < order.size(); ++i) {
      if (boundary[order[i]] == boundary[order[i - 1]]) {
        throw Error(ErrorCode::InvalidArgument, "duplicate boundary sample");
      }
    }
    std::vector<double> lo(boundary.front().coords().begin(), boundary.front().coords().end());
    std::vector<double> hi = lo;
    for (const Point& p : boundary) {
      for (std::size_t k = 0; k < dim; ++k) {
        lo[k] = std::min(lo[k], p[k]);
        hi[k] = std::max(hi[k], p[k]);
      }
    }
    data_->boundary = std::move(boundary);
    data_->inside = std::move(inside);
    data_->label = std::move(label);
    data_->box_lo = std::move(lo);
    data_->box_hi = std::move(hi);
    data_->polygon = std::move(polygon);
    data_->samples_per_edge = samples_per_edge;
  }

  std::size_t dim() const { return data_->boundary.front().dim(); }
  const std::vector<Point>& boundary() const { return data_->boundary; }
  bool predicate(const Point& x) const { return data_->inside(x); }
  const std::string& label() const { return data_->label; }
  const std::vector<double>& box_lo() const { return data_->box_lo; }
  const std::vector<double>& box_hi() const { return data_->box_hi; }

  // Polygon provenance, when built by polygon_domain(); used for serialization.
  const std::vector<Point>& polygon_vertices() const { return data_->polygon; }
  std::size_t samples_per_edge() const { return data_->samples_per_edge; }

 private:
  struct Data {
    std::vector<Point> boundary;
    Predicate inside;
    std::string label;
    std::vector<double> box_lo;
    std::vector<double> box_hi;
    std::vector<Point> polygon;
    std::size_t samples_per_edge = 0;
  };
  std::shared_ptr<Data> data_;
};

/// A proper subdomain of R^n.
class Domain {
 public:
  using Variant = std::variant<UnitBall, Ball, PuncturedUnitBall, PuncturedSpace, SampledDomain>;

  static Domain unit_ball(std::size_t dim) {
    if (dim == 0) throw Error(ErrorCode::InvalidArgument, "dim must be >= 1");
    return Domain(UnitBall{dim});
  }
  static Domain ball(Point center, double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius)) {
      throw Error(ErrorCode::InvalidArgument, "ball radius must be positive");
    }
    return Domain(Ball{std::move(center), radius});
  }
  static Domain punctured_unit_ball(Point a) {
    if (!(a.norm() < 1.0)) throw Error(ErrorCode::PunctureOutsideBall, "puncture must satisfy |a| < 1");
    return Domain(PuncturedUnitBall{std::move(a)});
  }
  static Domain punctured_space(Point p) { return Domain(PuncturedSpace{std::move(p)}); }
  static Domain sampled(SampledDomain s) { return Domain(std::move(s)); }

  const Variant& variant() const noexcept { return v_; }

  std::size_t dim() const {
    return std::visit(
        [](const auto& d) -> std::size_t {
          using T = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<T, UnitBall>) return d.dim;
          else if constexpr (std::is_same_v<T, Ball>) return d.center.dim();
          else if constexpr (std::is_same_v<T, SampledDomain>) return d.dim();
          else return d.puncture.dim();
        },
        v_);
  }

  bool is_canonical() const { return !std::holds_alternative<SampledDomain>(v_); }
  bool is_bounded() const { return !std::holds_alternative<PuncturedSpace>(v_); }

  std::string kind() const {
    switch (v_.index()) {
      case 0: return "unit_ball";
      case 1: return "ball";
      case 2: return "punctured_unit_ball";
      case 3: return "punctured_space";
      default: return "sampled";
    }
  }

 private:
  explicit Domain(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

enum class Method { closed_form, plane_search, sampled };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::closed_form: return "closed_form";
    case Method::plane_search: return "plane_search";
    case Method::sampled: return "sampled";
  }
  return "unknown";
}

/// Infimum over the boundary of |x-p||p-y|, with the minimizing p.
struct BoundaryInf {
  double value;
  Point witness;
  Method method;
  double abs_error;  // estimated absolute error of `value`
};

/// Nearest boundary point to x.
struct BoundaryNearest {
  double distance;
  Point witness;
  Method method;
  double abs_error;
};

namespace detail {

inline double sample_spacing_near(const SampledDomain& s, const Point& witness) {
  double h = std::numeric_limits<double>::infinity();
  for (const Point& q : s.boundary()) {
    const double d = witness.distance_sq(q);
    if (d > 0.0) h = std::min(h, d);
  }
  return std::isfinite(h) ? std::sqrt(h) : 0.0;
}

struct SphereTables {
  std::array<double, kSphereGridCells> cos_t;
  std::array<double, kSphereGridCells> sin_t;
  SphereTables() {
    for (std::size_t k = 0; k < kSphereGridCells; ++k) {
      const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / kSphereGridCells;
      cos_t[k] = std::cos(t);
      sin_t[k] = std::sin(t);
    }
  }
};

inline const SphereTables& sphere_tables() {
  static const SphereTables tables;
  return tables;
}

/// inf over the sphere S(c, R) of |x-p||p-y|. The minimizer lies in the
/// 2-plane through c spanned by x-c and y-c: the geometric mean of two
/// positive affine functions is concave, so its minimum over the disk of
/// in-plane components is attained on the circle.
inline BoundaryInf sphere_product_inf(const Point& c, double R, const Point& x, const Point& y) {
  const std::size_t n = c.dim();
  Point u = x - c;
  Point v = y - c;
  // order-independent choice of the reference vector keeps the result
  // exactly symmetric in (x, y)
  const double nu = u.norm_sq();
  const double nv = v.norm_sq();
  if (nu < nv || (nu == nv && std::lexicographical_compare(u.coords().begin(), u.coords().end(),
                                                            v.coords().begin(), v.coords().end()))) {
    std::swap(u, v);
  }
  const double ra = u.norm();
  if (ra == 0.0) {
    // both at the center: every boundary point gives R*R
    return {R * R, c + Point::basis(n, 0, R), Method::closed_form, 0.0};
  }
  const Point e1 = u * (1.0 / ra);
  const double b1 = v.dot(e1);
  const Point bperp = v - e1 * b1;
  const double bp = bperp.norm();
  const double rb = v.norm();

  if (bp <= 1e-15 * rb || rb == 0.0 || n == 1) {
    // collinear with the center: the product depends only on the e1
    // component, and the concave 1D profile is minimized at an endpoint
    auto prod_at = [&](double s) {
      const double da = std::abs(R * s - ra);
      const double db = std::abs(R * s - b1);
      return da * db;
    };
    const double plus = prod_at(1.0);
    const double minus = prod_at(-1.0);
    if (plus <= minus) return {plus, c + e1 * R, Method::closed_form, 0.0};
    return {minus, c - e1 * R, Method::closed_form, 0.0};
  }

  const Point e2 = bperp * (1.0 / bp);
  const double beta = std::atan2(bp, b1);
  const double cb = std::cos(beta);
  const double sb = std::sin(beta);
  const double qa = (R - ra) * (R - ra);
  const double qb = (R - rb) * (R - rb);
  const double ka = 4.0 * R * ra;
  const double kb = 4.0 * R * rb;

  // squared product, evaluated in the cancellation-free half-angle form
  auto f_exact = [&](double t) {
    const double sa = std::sin(0.5 * t);
    const double sd = std::sin(0.5 * (t - beta));
    return (qa + ka * sa * sa) * (qb + kb * sd * sd);
  };

  const SphereTables& tab = sphere_tables();
  std::array<double, kSphereGridCells> grid;
  for (std::size_t k = 0; k < kSphereGridCells; ++k) {
    const double ha = 0.5 * (1.0 - tab.cos_t[k]);
    const double hb = 0.5 * (1.0 - (tab.cos_t[k] * cb + tab.sin_t[k] * sb));
    grid[k] = (qa + ka * ha) * (qb + kb * hb);
  }

  // refine every discrete local minimum among the best few
  std::array<std::pair<double, std::size_t>, 4> cand;
  std::size_t ncand = 0;
  for (std::size_t k = 0; k < kSphereGridCells; ++k) {
    const double prev = grid[(k + kSphereGridCells - 1) % kSphereGridCells];
    const double next = grid[(k + 1) % kSphereGridCells];
    if (grid[k] <= prev && grid[k] <= next) {
      std::pair<double, std::size_t> item{grid[k], k};
      if (ncand < cand.size()) {
        cand[ncand++] = item;
      } else {
        auto worst = std::max_element(cand.begin(), cand.end());
        if (item < *worst) *worst = item;
      }
    }
  }

  const double cell = 2.0 * std::numbers::pi / kSphereGridCells;
  double best_f = std::numeric_limits<double>::infinity();
  double best_t = 0.0;
  double best_width = cell;
  for (std::size_t i = 0; i < ncand; ++i) {
    const double t0 = cell * static_cast<double>(cand[i].second);
    const GoldenResult g = golden_section_minimize(f_exact, t0 - cell, t0 + cell, 1e-15);
    if (g.fx < best_f) {
      best_f = g.fx;
      best_t = g.x;
      best_width = g.hi - g.lo;
    }
  }

  const double value = std::sqrt(best_f);
  const Point witness = c + e1 * (R * std::cos(best_t)) + e2 * (R * std::sin(best_t));
  // d/dt of |x-p||p-y| is bounded by R(|x-p| + |p-y|)
  const double slope = R * (x.distance(witness) + y.distance(witness));
  const double err = slope * best_width + 8.0 * std::numeric_limits<double>::epsilon() * value;
  return {value, witness, Method::plane_search, err};
}

inline BoundaryInf sampled_product_inf(const SampledDomain& s, const Point& x, const Point& y) {
  double best = std::numeric_limits<double>::infinity();
  std::size_t arg = 0;
  const auto& b = s.boundary();
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double v = x.distance_sq(b[i]) * y.distance_sq(b[i]);
    if (v < best) {
      best = v;
      arg = i;
    }
  }
  const Point& w = b[arg];
  const double value = std::sqrt(best);
  const double h = 0.5 * sample_spacing_near(s, w);
  const double err = h * (x.distance(w) + y.distance(w)) + h * h;
  return {value, w, Method::sampled, err};
}

}  // namespace detail

inline void require_dim(const Domain& d, const Point& x) {
  if (x.dim() != d.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "point dim " + std::to_string(x.dim()) + " vs domain dim " + std::to_string(d.dim()));
  }
}

/// Open-set containment; points within kContainmentTolerance of the
/// boundary count as outside.
inline bool contains(const Domain& d, const Point& x) {
  if (x.dim() != d.dim()) return false;
  const double tol = kContainmentTolerance;
  return std::visit(
      [&](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, UnitBall>) {
          return 1.0 - x.norm() > tol;
        } else if constexpr (std::is_same_v<T, Ball>) {
          return v.radius - x.distance(v.center) > tol;
        } else if constexpr (std::is_same_v<T, PuncturedUnitBall>) {
          return 1.0 - x.norm() > tol && x.distance(v.puncture) > tol;
        } else if constexpr (std::is_same_v<T, PuncturedSpace>) {
          return x.distance(v.puncture) > tol;
        } else {
          if (!v.predicate(x)) return false;
          for (const Point& q : v.boundary()) {
            if (x.distance_sq(q) <= tol * tol) return false;
          }
          return true;
        }
      },
      d.variant());
}

inline void require_inside(const Domain& d, const Point& x) {
  require_dim(d, x);
  if (!contains(d, x)) throw Error(ErrorCode::PointOutsideDomain, "point is not inside the " + d.kind());
}

inline BoundaryNearest nearest_boundary(const Domain& d, const Point& x) {
  require_inside(d, x);
  return std::visit(
      [&](const auto& v) -> BoundaryNearest {
        using T = std::decay_t<decltype(v)>;
        const std::size_t n = x.dim();
        auto radial = [&](const Point& c, double R) -> BoundaryNearest {
          const Point off = x - c;
          const double r = off.norm();
          const Point dir = r > 0.0 ? off * (1.0 / r) : Point::basis(n, 0);
          return {R - r, c + dir * R, Method::closed_form, 0.0};
        };
        if constexpr (std::is_same_v<T, UnitBall>) {
          return radial(Point::zero(n), 1.0);
        } else if constexpr (std::is_same_v<T, Ball>) {
          return radial(v.center, v.radius);
        } else if constexpr (std::is_same_v<T, PuncturedUnitBall>) {
          BoundaryNearest sphere = radial(Point::zero(n), 1.0);
          const double dp = x.distance(v.puncture);
          if (dp < sphere.distance) return {dp, v.puncture, Method::closed_form, 0.0};
          return sphere;
        } else if constexpr (std::is_same_v<T, PuncturedSpace>) {
          return {x.distance(v.puncture), v.puncture, Method::closed_form, 0.0};
        } else {
          double best = std::numeric_limits<double>::infinity();
          std::size_t arg = 0;
          for (std::size_t i = 0; i < v.boundary().size(); ++i) {
            const double dd = x.distance_sq(v.boundary()[i]);
            if (dd < best) {
              best = dd;
              arg = i;
            }
          }
          const Point& w = v.boundary()[arg];
          return {std::sqrt(best), w, Method::sampled, 0.5 * detail::sample_spacing_near(v, w)};
        }
      },
      d.variant());
}

/// inf over the boundary of |x - p|.
inline double dist_to_boundary(const Domain& d, const Point& x) { return nearest_boundary(d, x).distance; }

/// inf over the boundary of |x - p||p - y|, with a witness p.
inline BoundaryInf boundary_product_inf(const Domain& d, const Point& x, const Point& y) {
  require_inside(d, x);
  require_inside(d, y);
  return std::visit(
      [&](const auto& v) -> BoundaryInf {
        using T = std::decay_t<decltype(v)>;
        const std::size_t n = x.dim();
        if constexpr (std::is_same_v<T, UnitBall>) {
          return detail::sphere_product_inf(Point::zero(n), 1.0, x, y);
        } else if constexpr (std::is_same_v<T, Ball>) {
          return detail::sphere_product_inf(v.center, v.radius, x, y);
        } else if constexpr (std::is_same_v<T, PuncturedUnitBall>) {
          BoundaryInf sphere = detail::sphere_product_inf(Point::zero(n), 1.0, x, y);
          const double at_puncture = x.distance(v.puncture) * y.distance(v.puncture);
          if (at_puncture < sphere.value) return {at_puncture, v.puncture, Method::closed_form, 0.0};
          return sphere;
        } else if constexpr (std::is_same_v<T, PuncturedSpace>) {
          return {x.distance(v.puncture) * y.distance(v.puncture), v.puncture, Method::closed_form, 0.0};
        } else {
          return detail::sampled_product_inf(v, x, y);
        }
      },
      d.variant());
}

/// Euclidean diameter. For sampled domains this is the max pairwise
/// distance among boundary samples.
inline double diameter(const Domain& d) {
  return std::visit(
      [](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, UnitBall> || std::is_same_v<T, PuncturedUnitBall>) {
          return 2.0;
        } else if constexpr (std::is_same_v<T, Ball>) {
          return 2.0 * v.radius;
        } else if constexpr (std::is_same_v<T, PuncturedSpace>) {
          throw Error(ErrorCode::UnboundedDomain, "punctured space has infinite diameter");
        } else {
          const auto& b = v.boundary();
          double best = 0.0;
          for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = i + 1; j < b.size(); ++j) best = std::max(best, b[i].distance_sq(b[j]));
          return std::sqrt(best);
        }
      },
      d.variant());
}

/// Simple polygon in R^2 with `per_edge` boundary samples per edge
/// (vertices included). Containment is the even-odd crossing rule.
inline Domain polygon_domain(std::vector<Point> vertices, std::size_t per_edge) {
  if (vertices.size() < 3) throw Error(ErrorCode::InvalidArgument, "polygon needs at least 3 vertices");
  if (per_edge == 0) throw Error(ErrorCode::InvalidArgument, "samples_per_edge must be >= 1");
  for (const Point& v : vertices) {
    if (v.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "polygon vertices must be 2D");
  }
  std::vector<Point> samples;
  samples.reserve(vertices.size() * per_edge);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const Point& a = vertices[i];
    const Point& b = vertices[(i + 1) % vertices.size()];
    for (std::size_t k = 0; k < per_edge; ++k) {
      const double s = static_cast<double>(k) / static_cast<double>(per_edge);
      samples.push_back(a + (b - a) * s);
    }
  }
  auto inside = [vertices](const Point& p) {
    bool in = false;
    const std::size_t m = vertices.size();
    for (std::size_t i = 0, j = m - 1; i < m; j = i++) {
      const double xi = vertices[i][0], yi = vertices[i][1];
      const double xj = vertices[j][0], yj = vertices[j][1];
      if ((yi > p[1]) != (yj > p[1]) && p[0] < (xj - xi) * (p[1] - yi) / (yj - yi) + xi) in = !in;
    }
    return in;
  };
  return Domain::sampled(SampledDomain(std::move(samples), inside, "polygon", std::move(vertices), per_edge));
}

}  // namespace hypmetrics
