#pragma once

// Standard domains used by the verification sweeps.

#include <cmath>
#include <cstdint>
#include <vector>

#include "hypmetrics/domain.hpp"
#include "hypmetrics/sampling.hpp"

namespace hypmetrics {

inline Domain unit_square(std::size_t per_edge = 1024) {
  return polygon_domain({Point{0.0, 0.0}, Point{1.0, 0.0}, Point{1.0, 1.0}, Point{0.0, 1.0}}, per_edge);
}

/// Triangle with vertices in [-1, 1]^2 and area at least 0.2.
inline Domain random_triangle(std::uint64_t seed, std::size_t per_edge = 1024) {
  Rng rng = make_stream(seed, 0x7419);
  for (;;) {
    std::vector<Point> v;
    for (int i = 0; i < 3; ++i) v.push_back(Point{uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)});
    const double area =
        0.5 * std::abs((v[1][0] - v[0][0]) * (v[2][1] - v[0][1]) - (v[2][0] - v[0][0]) * (v[1][1] - v[0][1]));
    if (area >= 0.2) return polygon_domain(std::move(v), per_edge);
  }
}

/// One instance of each canonical domain kind in the given dimension.
inline std::vector<Domain> canonical_variants(std::size_t dim) {
  std::vector<double> a(dim, 0.0);
  a[0] = 0.3;
  if (dim > 1) a[1] = -0.2;
  std::vector<double> c(dim, 0.0);
  c[0] = 1.0;
  if (dim > 1) c[1] = -1.0;
  return {Domain::unit_ball(dim), Domain::punctured_unit_ball(Point(a)), Domain::punctured_space(Point::zero(dim)),
          Domain::ball(Point(c), 2.0)};
}

}  // namespace hypmetrics
