#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "hypmetrics/error.hpp"

namespace hypmetrics {

/// A location in R^n. Coordinates are always finite and dim() >= 1.
class Point {
 public:
  Point(std::initializer_list<double> coords) : coords_(coords) { validate(); }
  explicit Point(std::vector<double> coords) : coords_(std::move(coords)) { validate(); }

  static Point zero(std::size_t dim) { return Point(std::vector<double>(dim, 0.0)); }

  // Unit vector e_k (0-based).
  static Point basis(std::size_t dim, std::size_t k, double scale = 1.0) {
    std::vector<double> c(dim, 0.0);
    c.at(k) = scale;
    return Point(std::move(c));
  }

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }

  double dot(const Point& other) const {
    require_same_dim(other);
    double s = 0.0;
    for (std::size_t i = 0; i < coords_.size(); ++i) s += coords_[i] * other.coords_[i];
    return s;
  }

  double norm() const {
    double s = 0.0;
    for (double c : coords_) s += c * c;
    return std::sqrt(s);
  }

  double norm_sq() const {
    double s = 0.0;
    for (double c : coords_) s += c * c;
    return s;
  }

  double distance(const Point& other) const { return std::sqrt(distance_sq(other)); }

  double distance_sq(const Point& other) const {
    require_same_dim(other);
    double s = 0.0;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      const double d = coords_[i] - other.coords_[i];
      s += d * d;
    }
    return s;
  }

  Point operator+(const Point& o) const { return combine(o, 1.0); }
  Point operator-(const Point& o) const { return combine(o, -1.0); }
  Point operator-() const { return *this * -1.0; }

  Point operator*(double s) const {
    std::vector<double> c(coords_);
    for (double& v : c) v *= s;
    return Point(std::move(c));
  }
  friend Point operator*(double s, const Point& p) { return p * s; }

  bool operator==(const Point& o) const = default;

  void require_same_dim(const Point& other) const {
    if (other.dim() != dim()) {
      throw Error(ErrorCode::DimensionMismatch,
                  "dimension " + std::to_string(dim()) + " vs " + std::to_string(other.dim()));
    }
  }

 private:
  void validate() const {
    if (coords_.empty()) throw Error(ErrorCode::InvalidArgument, "point must have dim >= 1");
    for (double c : coords_) {
      if (!std::isfinite(c)) throw Error(ErrorCode::InvalidArgument, "non-finite coordinate");
    }
  }

  Point combine(const Point& o, double sign) const {
    require_same_dim(o);
    std::vector<double> c(coords_);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += sign * o.coords_[i];
    return Point(std::move(c));
  }

  std::vector<double> coords_;
};

/// Dense row-major square matrix, sized for the small dimensions used here.
class Matrix {
 public:
  Matrix(std::size_t n, std::vector<double> row_major) : n_(n), data_(std::move(row_major)) {
    if (n_ == 0 || data_.size() != n_ * n_) {
      throw Error(ErrorCode::DimensionMismatch, "matrix data does not match n*n");
    }
    for (double v : data_) {
      if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite matrix entry");
    }
  }

  static Matrix identity(std::size_t n) {
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 1.0;
    return Matrix(n, std::move(d));
  }

  static Matrix diagonal(std::span<const double> diag) {
    const std::size_t n = diag.size();
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) d[i * n + i] = diag[i];
    return Matrix(n, std::move(d));
  }

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }
  double& at(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }

  Point apply(const Point& x) const {
    if (x.dim() != n_) throw Error(ErrorCode::DimensionMismatch, "matrix/point dimension");
    std::vector<double> out(n_, 0.0);
    for (std::size_t r = 0; r < n_; ++r) {
      double s = 0.0;
      for (std::size_t c = 0; c < n_; ++c) s += data_[r * n_ + c] * x[c];
      out[r] = s;
    }
    return Point(std::move(out));
  }

  Matrix transpose() const {
    std::vector<double> d(n_ * n_);
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t c = 0; c < n_; ++c) d[c * n_ + r] = data_[r * n_ + c];
    return Matrix(n_, std::move(d));
  }

  Matrix operator*(const Matrix& o) const {
    if (o.n_ != n_) throw Error(ErrorCode::DimensionMismatch, "matrix product dimension");
    std::vector<double> d(n_ * n_, 0.0);
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t k = 0; k < n_; ++k)
        for (std::size_t c = 0; c < n_; ++c) d[r * n_ + c] += data_[r * n_ + k] * o.data_[k * n_ + c];
    return Matrix(n_, std::move(d));
  }

  // max |(M^T M - I)_{ij}|
  double orthogonality_defect() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < n_; ++k) s += data_[k * n_ + i] * data_[k * n_ + j];
        worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
      }
    }
    return worst;
  }

 private:
  std::size_t n_;
  std::vector<double> data_;
};

}  // namespace hypmetrics
