#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "hypmetrics/domain.hpp"
#include "hypmetrics/point.hpp"

namespace hypmetrics {

using Rng = std::mt19937_64;

/// Independent deterministic stream for (seed, stream index).
inline Rng make_stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    0x9e3779b9u};
  return Rng(seq);
}

inline double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Point random_direction(std::size_t dim, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (;;) {
    std::vector<double> c(dim);
    double s = 0.0;
    for (double& v : c) {
      v = gauss(rng);
      s += v * v;
    }
    if (s < 1e-24) continue;
    const double inv = 1.0 / std::sqrt(s);
    for (double& v : c) v *= inv;
    return Point(std::move(c));
  }
}

/// Uniform in the open unit ball: Gaussian direction times U^(1/n).
inline Point random_in_unit_ball(std::size_t dim, Rng& rng) {
  const double r = std::pow(uniform01(rng), 1.0 / static_cast<double>(dim));
  return random_direction(dim, rng) * r;
}

/// Haar-ish random orthogonal matrix (Gram-Schmidt of a Gaussian matrix).
inline Matrix random_orthogonal(std::size_t n, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<std::vector<double>> cols;
  while (cols.size() < n) {
    std::vector<double> v(n);
    for (double& e : v) e = gauss(rng);
    for (const auto& q : cols) {
      double p = 0.0;
      for (std::size_t r = 0; r < n; ++r) p += v[r] * q[r];
      for (std::size_t r = 0; r < n; ++r) v[r] -= p * q[r];
    }
    double len = 0.0;
    for (double e : v) len += e * e;
    len = std::sqrt(len);
    if (len < 1e-8) continue;
    for (double& e : v) e /= len;
    cols.push_back(std::move(v));
  }
  std::vector<double> d(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) d[r * n + c] = cols[c][r];
  return Matrix(n, std::move(d));
}

namespace detail {

inline double radical_inverse(std::uint64_t i, std::uint64_t base) {
  double inv = 1.0 / static_cast<double>(base);
  double f = inv;
  double r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

inline constexpr std::uint64_t kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

}  // namespace detail

/// Deterministic, fairly even unit directions: uniform angles in 2D,
/// Halton points pushed through Box-Muller and normalized above that.
inline std::vector<Point> sphere_directions(std::size_t dim, std::size_t count) {
  std::vector<Point> out;
  out.reserve(count);
  if (dim == 1) {
    for (std::size_t i = 0; i < count; ++i) out.push_back(Point{i % 2 == 0 ? 1.0 : -1.0});
    return out;
  }
  if (dim == 2) {
    for (std::size_t i = 0; i < count; ++i) {
      const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(count);
      out.push_back(Point{std::cos(t), std::sin(t)});
    }
    return out;
  }
  const std::size_t pairs = (dim + 1) / 2;
  if (2 * pairs > std::size(detail::kPrimes)) throw Error(ErrorCode::InvalidArgument, "dimension too large");
  for (std::size_t i = 1; out.size() < count; ++i) {
    std::vector<double> c;
    c.reserve(2 * pairs);
    for (std::size_t p = 0; p < pairs; ++p) {
      const double u1 = detail::radical_inverse(i, detail::kPrimes[2 * p]);
      const double u2 = detail::radical_inverse(i, detail::kPrimes[2 * p + 1]);
      const double rad = std::sqrt(-2.0 * std::log(std::max(u1, 1e-300)));
      c.push_back(rad * std::cos(2.0 * std::numbers::pi * u2));
      c.push_back(rad * std::sin(2.0 * std::numbers::pi * u2));
    }
    c.resize(dim);
    double s = 0.0;
    for (double v : c) s += v * v;
    if (s < 1e-24) continue;
    const double inv = 1.0 / std::sqrt(s);
    for (double& v : c) v *= inv;
    out.push_back(Point(std::move(c)));
  }
  return out;
}

// Punctured domains resample within this distance of the puncture.
inline constexpr double kPunctureClearance = 1e-6;

// Punctured space is sampled from the ball of this radius about the puncture.
inline constexpr double kPuncturedSpaceSampleRadius = 2.0;

/// Random interior point of d.
inline Point random_point(const Domain& d, Rng& rng) {
  const std::size_t n = d.dim();
  for (;;) {
    Point p = std::visit(
        [&](const auto& v) -> Point {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, UnitBall>) {
            return random_in_unit_ball(n, rng);
          } else if constexpr (std::is_same_v<T, Ball>) {
            return v.center + random_in_unit_ball(n, rng) * v.radius;
          } else if constexpr (std::is_same_v<T, PuncturedUnitBall>) {
            return random_in_unit_ball(n, rng);
          } else if constexpr (std::is_same_v<T, PuncturedSpace>) {
            return v.puncture + random_in_unit_ball(n, rng) * kPuncturedSpaceSampleRadius;
          } else {
            std::vector<double> c(n);
            for (std::size_t k = 0; k < n; ++k) c[k] = uniform(rng, v.box_lo()[k], v.box_hi()[k]);
            return Point(std::move(c));
          }
        },
        d.variant());
    if (const auto* pb = std::get_if<PuncturedUnitBall>(&d.variant())) {
      if (p.distance(pb->puncture) < kPunctureClearance) continue;
    }
    if (const auto* ps = std::get_if<PuncturedSpace>(&d.variant())) {
      if (p.distance(ps->puncture) < kPunctureClearance) continue;
    }
    if (contains(d, p)) return p;
  }
}

/// Finite boundary sample set of d (count points per sphere component).
inline std::vector<Point> boundary_samples(const Domain& d, std::size_t count) {
  const std::size_t n = d.dim();
  return std::visit(
      [&](const auto& v) -> std::vector<Point> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, UnitBall>) {
          return sphere_directions(n, count);
        } else if constexpr (std::is_same_v<T, Ball>) {
          std::vector<Point> out;
          for (const Point& u : sphere_directions(n, count)) out.push_back(v.center + u * v.radius);
          return out;
        } else if constexpr (std::is_same_v<T, PuncturedUnitBall>) {
          std::vector<Point> out = sphere_directions(n, count);
          out.push_back(v.puncture);
          return out;
        } else if constexpr (std::is_same_v<T, PuncturedSpace>) {
          return {v.puncture};
        } else {
          return v.boundary();
        }
      },
      d.variant());
}

}  // namespace hypmetrics
