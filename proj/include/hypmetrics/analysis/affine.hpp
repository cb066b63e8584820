#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "hypmetrics/domain.hpp"
#include "hypmetrics/error.hpp"
#include "hypmetrics/point.hpp"
#include "hypmetrics/sampling.hpp"

namespace hypmetrics {

/// x -> A x + b.
class AffineMap {
 public:
  AffineMap(Matrix a, Point b) : a_(std::move(a)), b_(std::move(b)), inv_(invert(a_)) {
    if (b_.dim() != a_.size()) throw Error(ErrorCode::DimensionMismatch, "affine offset dimension");
  }

  static AffineMap linear(Matrix a) {
    const std::size_t n = a.size();
    return AffineMap(std::move(a), Point::zero(n));
  }

  /// lambda * Q x + v
  static AffineMap similarity(double lambda, const Matrix& q, Point v) {
    std::vector<double> d(q.size() * q.size());
    for (std::size_t r = 0; r < q.size(); ++r)
      for (std::size_t c = 0; c < q.size(); ++c) d[r * q.size() + c] = lambda * q(r, c);
    return AffineMap(Matrix(q.size(), std::move(d)), std::move(v));
  }

  std::size_t dim() const { return a_.size(); }
  const Matrix& matrix() const { return a_; }
  const Point& offset() const { return b_; }

  Point apply(const Point& x) const { return a_.apply(x) + b_; }
  Point operator()(const Point& x) const { return apply(x); }
  Point inverse_apply(const Point& y) const { return inv_.apply(y - b_); }

  /// Extreme singular values of A (Jacobi eigen-solve of A^T A).
  std::pair<double, double> singular_value_range() const {
    const std::size_t n = a_.size();
    std::vector<double> m(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) m[i * n + j] += a_(k, i) * a_(k, j);
    for (int sweep = 0; sweep < 100; ++sweep) {
      double off = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) off += m[i * n + j] * m[i * n + j];
      if (off < 1e-30) break;
      for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
          const double apq = m[p * n + q];
          if (std::abs(apq) < 1e-300) continue;
          const double theta = (m[q * n + q] - m[p * n + p]) / (2.0 * apq);
          const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          const double c = 1.0 / std::sqrt(t * t + 1.0);
          const double s = t * c;
          for (std::size_t k = 0; k < n; ++k) {
            const double mkp = m[k * n + p];
            const double mkq = m[k * n + q];
            m[k * n + p] = c * mkp - s * mkq;
            m[k * n + q] = s * mkp + c * mkq;
          }
          for (std::size_t k = 0; k < n; ++k) {
            const double mpk = m[p * n + k];
            const double mqk = m[q * n + k];
            m[p * n + k] = c * mpk - s * mqk;
            m[q * n + k] = s * mpk + c * mqk;
          }
        }
      }
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double ev = std::max(0.0, m[i * n + i]);
      lo = std::min(lo, std::sqrt(ev));
      hi = std::max(hi, std::sqrt(ev));
    }
    return {lo, hi};
  }

  /// Smallest L with |x-y|/L <= |f(x)-f(y)| <= L|x-y|.
  double bilipschitz_constant() const {
    const auto [lo, hi] = singular_value_range();
    return std::max(hi, 1.0 / lo);
  }

  /// Similarity scale when A = lambda Q with Q orthogonal, else 0.
  double similarity_scale(double tol = 1e-12) const {
    const std::size_t n = a_.size();
    double lambda2 = 0.0;
    for (std::size_t k = 0; k < n; ++k) lambda2 += a_(k, 0) * a_(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += a_(k, i) * a_(k, j);
        const double expect = i == j ? lambda2 : 0.0;
        if (std::abs(s - expect) > tol * lambda2) return 0.0;
      }
    }
    return std::sqrt(lambda2);
  }

 private:
  static Matrix invert(const Matrix& a) {
    const std::size_t n = a.size();
    std::vector<double> m(n * 2 * n, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) m[r * 2 * n + c] = a(r, c);
      m[r * 2 * n + n + r] = 1.0;
    }
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t piv = col;
      for (std::size_t r = col + 1; r < n; ++r)
        if (std::abs(m[r * 2 * n + col]) > std::abs(m[piv * 2 * n + col])) piv = r;
      if (std::abs(m[piv * 2 * n + col]) < 1e-300) throw Error(ErrorCode::InvalidArgument, "singular affine map");
      if (piv != col)
        for (std::size_t c = 0; c < 2 * n; ++c) std::swap(m[piv * 2 * n + c], m[col * 2 * n + c]);
      const double d = m[col * 2 * n + col];
      for (std::size_t c = 0; c < 2 * n; ++c) m[col * 2 * n + c] /= d;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == col) continue;
        const double f = m[r * 2 * n + col];
        if (f == 0.0) continue;
        for (std::size_t c = 0; c < 2 * n; ++c) m[r * 2 * n + c] -= f * m[col * 2 * n + c];
      }
    }
    std::vector<double> inv(n * n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) inv[r * n + c] = m[r * 2 * n + n + c];
    return Matrix(n, std::move(inv));
  }

  Matrix a_;
  Point b_;
  Matrix inv_;
};

// Boundary samples per sphere component when an image domain has to be sampled.
inline constexpr std::size_t kImageBoundarySamples = 1 << 14;

/// f(D). Exact canonical images where they exist (similarities of balls,
/// any affine image of a punctured space, orthogonal images of the punctured
/// unit ball); otherwise a sampled domain built from f(boundary samples).
inline Domain image_domain(const AffineMap& f, const Domain& d,
                           std::size_t boundary_count = kImageBoundarySamples) {
  if (f.dim() != d.dim()) throw Error(ErrorCode::DimensionMismatch, "map/domain dimension");
  const double lambda = f.similarity_scale();
  const std::size_t n = d.dim();
  const Point origin = Point::zero(n);
  if (const auto* ps = std::get_if<PuncturedSpace>(&d.variant())) {
    return Domain::punctured_space(f(ps->puncture));
  }
  if (lambda > 0.0) {
    if (std::holds_alternative<UnitBall>(d.variant())) {
      if (std::abs(lambda - 1.0) <= 1e-15 && f.offset().norm() == 0.0) return Domain::unit_ball(n);
      return Domain::ball(f(origin), lambda);
    }
    if (const auto* b = std::get_if<Ball>(&d.variant())) return Domain::ball(f(b->center), lambda * b->radius);
    if (const auto* pb = std::get_if<PuncturedUnitBall>(&d.variant())) {
      if (std::abs(lambda - 1.0) <= 1e-15 && f.offset().norm() == 0.0) {
        return Domain::punctured_unit_ball(f(pb->puncture));
      }
    }
  }
  std::vector<Point> samples;
  for (const Point& p : boundary_samples(d, boundary_count)) samples.push_back(f(p));
  Domain source = d;
  auto inside = [source, f](const Point& q) { return contains(source, f.inverse_apply(q)); };
  return Domain::sampled(SampledDomain(std::move(samples), inside, "affine_image"));
}

}  // namespace hypmetrics
