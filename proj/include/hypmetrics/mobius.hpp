#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

#include "hypmetrics/error.hpp"
#include "hypmetrics/point.hpp"

namespace hypmetrics {

struct SphereInversion {
  Point center;
  double radius;
};

struct Orthogonal {
  Matrix matrix;
};

struct Translation {
  Point offset;
};

struct Scaling {
  double factor;
};

using MobiusAtom = std::variant<SphereInversion, Orthogonal, Translation, Scaling>;

inline constexpr double kOrthogonalityTolerance = 1e-12;

/// Modified Gram-Schmidt on the columns of m.
inline Matrix reorthonormalize(const Matrix& m) {
  const std::size_t n = m.size();
  std::vector<std::vector<double>> cols(n, std::vector<double>(n));
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) cols[c][r] = m(r, c);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t p = 0; p < c; ++p) {
      double proj = 0.0;
      for (std::size_t r = 0; r < n; ++r) proj += cols[c][r] * cols[p][r];
      for (std::size_t r = 0; r < n; ++r) cols[c][r] -= proj * cols[p][r];
    }
    double len = 0.0;
    for (double v : cols[c]) len += v * v;
    len = std::sqrt(len);
    if (!(len > 0.0)) throw Error(ErrorCode::InvalidArgument, "matrix is singular");
    for (double& v : cols[c]) v /= len;
  }
  std::vector<double> d(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) d[r * n + c] = cols[c][r];
  return Matrix(n, std::move(d));
}

inline SphereInversion make_inversion(Point center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorCode::InvalidArgument, "inversion radius must be positive");
  }
  return {std::move(center), radius};
}

/// Accepts matrices within 1e-6 of orthogonal and snaps any drift above
/// 1e-12 back with Gram-Schmidt.
inline Orthogonal make_orthogonal(Matrix m) {
  const double defect = m.orthogonality_defect();
  if (defect > 1e-6) throw Error(ErrorCode::InvalidArgument, "matrix is not orthogonal");
  if (defect > kOrthogonalityTolerance) m = reorthonormalize(m);
  return {std::move(m)};
}

inline Scaling make_scaling(double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw Error(ErrorCode::InvalidArgument, "scaling factor must be positive");
  }
  return {factor};
}

/// sigma(x) = c + (r / |x - c|)^2 (x - c).
inline Point sphere_inversion_apply(const Point& center, double radius, const Point& x) {
  const Point off = x - center;
  const double d2 = off.norm_sq();
  if (d2 == 0.0) throw Error(ErrorCode::PoleInput, "point is the inversion center");
  return center + off * (radius * radius / d2);
}

/// Finite chain of atoms applied left to right.
class MobiusMap {
 public:
  explicit MobiusMap(std::vector<MobiusAtom> chain) : chain_(std::move(chain)) {
    if (chain_.empty()) throw Error(ErrorCode::InvalidArgument, "map chain must be nonempty");
    std::size_t dim = 0;
    for (const MobiusAtom& a : chain_) {
      const std::size_t d = atom_dim(a);
      if (d == 0) continue;
      if (dim != 0 && d != dim) throw Error(ErrorCode::DimensionMismatch, "atoms differ in dimension");
      dim = d;
    }
    dim_ = dim;
  }

  static MobiusMap identity() { return MobiusMap({Scaling{1.0}}); }

  const std::vector<MobiusAtom>& chain() const noexcept { return chain_; }

  // 0 when every atom is dimension-free (scalings only).
  std::size_t dim() const noexcept { return dim_; }

  Point apply(const Point& x) const {
    Point p = x;
    for (std::size_t i = 0; i < chain_.size(); ++i) {
      p = std::visit(
          [&](const auto& a) -> Point {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, SphereInversion>) {
              const Point off = p - a.center;
              const double d2 = off.norm_sq();
              if (d2 == 0.0) throw Error(ErrorCode::PoleInput, "pole of atom " + std::to_string(i), i);
              return a.center + off * (a.radius * a.radius / d2);
            } else if constexpr (std::is_same_v<T, Orthogonal>) {
              return a.matrix.apply(p);
            } else if constexpr (std::is_same_v<T, Translation>) {
              return p + a.offset;
            } else {
              return p * a.factor;
            }
          },
          chain_[i]);
    }
    return p;
  }

  Point operator()(const Point& x) const { return apply(x); }

  /// this followed by `next`.
  MobiusMap then(const MobiusMap& next) const {
    std::vector<MobiusAtom> c = chain_;
    c.insert(c.end(), next.chain_.begin(), next.chain_.end());
    return MobiusMap(std::move(c));
  }

  MobiusMap inverse() const {
    std::vector<MobiusAtom> c;
    c.reserve(chain_.size());
    for (auto it = chain_.rbegin(); it != chain_.rend(); ++it) {
      c.push_back(std::visit(
          [](const auto& a) -> MobiusAtom {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, SphereInversion>) return a;
            else if constexpr (std::is_same_v<T, Orthogonal>) return Orthogonal{a.matrix.transpose()};
            else if constexpr (std::is_same_v<T, Translation>) return Translation{-a.offset};
            else return Scaling{1.0 / a.factor};
          },
          *it));
    }
    return MobiusMap(std::move(c));
  }

 private:
  static std::size_t atom_dim(const MobiusAtom& a) {
    return std::visit(
        [](const auto& v) -> std::size_t {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, SphereInversion>) return v.center.dim();
          else if constexpr (std::is_same_v<T, Orthogonal>) return v.matrix.size();
          else if constexpr (std::is_same_v<T, Translation>) return v.offset.dim();
          else return 0;
        },
        a);
  }

  std::vector<MobiusAtom> chain_;
  std::size_t dim_ = 0;
};

/// The inversion in S(a*, r), a* = a/|a|^2, r = sqrt(1 - |a|^2)/|a|. That
/// sphere is orthogonal to the unit sphere, so the map preserves the unit
/// ball, swaps 0 and a, and carries B^n\{0} onto B^n\{a}.
inline MobiusMap punctured_ball_map(const Point& a) {
  const double na = a.norm();
  if (na == 0.0) throw Error(ErrorCode::PunctureAtOrigin, "puncture at the origin: use the identity");
  if (!(na < 1.0)) throw Error(ErrorCode::PunctureOutsideBall, "puncture must satisfy |a| < 1");
  const Point star = a * (1.0 / (na * na));
  const double r = std::sqrt(1.0 - na * na) / na;
  return MobiusMap({make_inversion(star, r)});
}

/// | |s(x) - s(y)| - r^2 |x - y| / (|x - c||y - c|) | for the inversion s in S(c, r).
inline double verify_distance_identity(const Point& center, double radius, const Point& x,
                                       const Point& y) {
  const Point sx = sphere_inversion_apply(center, radius, x);
  const Point sy = sphere_inversion_apply(center, radius, y);
  const double predicted = radius * radius * x.distance(y) / (x.distance(center) * y.distance(center));
  return std::abs(sx.distance(sy) - predicted);
}

}  // namespace hypmetrics
