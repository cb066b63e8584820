#pragma once

#include <cmath>
#include <cstddef>

#include "hypmetrics/error.hpp"
#include "hypmetrics/golden.hpp"
#include "hypmetrics/metrics.hpp"

namespace hypmetrics {

struct ConstantSolveResult {
  double c;
  double t_star;
  double residual;
  std::size_t iterations;
};

/// g(t) = log(1 + 2t / sqrt(4 - t^2)) / t, the ratio whose minimum over
/// (0, 2) is the modulus-of-continuity constant for tau on the unit ball.
inline double modulus_ratio(double t) { return tau_modulus_bound(t) / t; }

/// Stationarity condition of g:
///   (4 - t^2)(2t + sqrt(4 - t^2)) log(1 + 2t / sqrt(4 - t^2)) - 8t.
/// Positive where g is decreasing.
inline double modulus_stationarity(double t) {
  const double s = std::sqrt(4.0 - t * t);
  return (4.0 - t * t) * (2.0 * t + s) * std::log1p(2.0 * t / s) - 8.0 * t;
}

/// Golden-section on g, then bisection on the stationarity equation inside
/// the golden bracket: golden alone only pins t to ~sqrt(eps) because g is
/// flat at its minimum.
inline ConstantSolveResult solve_constant_c() {
  constexpr std::size_t kMaxIterations = 500;
  const GoldenResult g = golden_section_minimize(modulus_ratio, 1e-6, 2.0 - 1e-6, 1e-12, kMaxIterations);
  if (!g.converged) throw Error(ErrorCode::NoConvergence, "golden-section did not converge");

  double lo = g.x - 1e-6;
  double hi = g.x + 1e-6;
  std::size_t iterations = g.iterations;
  while (!(modulus_stationarity(lo) > 0.0 && modulus_stationarity(hi) < 0.0)) {
    lo -= (hi - lo);
    hi += (hi - lo);
    if (++iterations > kMaxIterations || lo <= 0.0 || hi >= 2.0) {
      throw Error(ErrorCode::NoConvergence, "could not bracket the stationary point");
    }
  }
  for (; iterations < kMaxIterations && hi - lo > 1e-15; ++iterations) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (modulus_stationarity(mid) > 0.0) lo = mid;
    else hi = mid;
  }
  const double t_star = 0.5 * (lo + hi);
  const double residual = std::abs(modulus_stationarity(t_star));
  if (!(residual <= 1e-10)) throw Error(ErrorCode::NoConvergence, "stationarity residual too large");
  return {modulus_ratio(t_star), t_star, residual, iterations};
}

/// Quasiconformality K, bilipschitz constant L, dimension n and the Holder
/// exponent alpha = K^(1/(1-n)) (alpha = 1 for n = 1).
struct DistortionParams {
  double K;
  double L;
  std::size_t n;
  double alpha;

  static DistortionParams make(double K, double L, std::size_t n) {
    if (!(K >= 1.0) || !(L >= 1.0)) throw Error(ErrorCode::InvalidArgument, "K and L must be >= 1");
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
    const double alpha = n == 1 ? 1.0 : std::pow(K, 1.0 / (1.0 - static_cast<double>(n)));
    return {K, L, n, alpha};
  }

  // An L-bilipschitz map is K-quasiconformal with K = L^2.
  static DistortionParams from_bilipschitz(double L, std::size_t n) { return make(L * L, L, n); }
};

}  // namespace hypmetrics
