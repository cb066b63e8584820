#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hypmetrics/analysis/affine.hpp"
#include "hypmetrics/analysis/constants.hpp"
#include "hypmetrics/analysis/report.hpp"
#include "hypmetrics/domain.hpp"
#include "hypmetrics/enclosing_ball.hpp"
#include "hypmetrics/metrics.hpp"
#include "hypmetrics/mobius.hpp"
#include "hypmetrics/sampling.hpp"

namespace hypmetrics {

// Slack for inequalities whose sides come out of the boundary optimizer.
inline constexpr double kInequalitySlack = 1e-9;
// Slack for algebraic identities.
inline constexpr double kIdentitySlack = 1e-12;

// Evaluator error folded into an allowance; dropped under CheckOptions::strict.
inline double eval_error(const EvalResult& r, const CheckOptions& opts) { return opts.strict ? 0.0 : r.err_bound; }

/// Distortion bound for Mobius maps between punctured balls:
///   (1-|a|)/(1+|a|) <= tau_{B\{a}}(f x, f y) / tau_{B\{0}}(x, y) <= (1+|a|)/(1-|a|)
/// for f = sigma_a pre-composed with a random rotation (so that f(0) = a).
inline VerificationReport verify_mobius_distortion(const Point& a, const CheckOptions& opts,
                                                   bool random_rotation = true) {
  const std::size_t n = a.dim();
  const double na = a.norm();
  if (!(na < 1.0)) throw Error(ErrorCode::PunctureOutsideBall, "puncture must satisfy |a| < 1");
  const double lo = (1.0 - na) / (1.0 + na);
  const double hi = (1.0 + na) / (1.0 - na);
  const Domain source = Domain::punctured_unit_ball(Point::zero(n));
  const Domain target = Domain::punctured_unit_ball(a);
  const std::optional<MobiusMap> sigma = na > 0.0 ? std::optional(punctured_ball_map(a)) : std::nullopt;

  auto per_sample = [&](Rng& rng, std::size_t, SampleSink& sink) {
    std::vector<MobiusAtom> chain;
    if (random_rotation) chain.push_back(make_orthogonal(random_orthogonal(n, rng)));
    if (sigma) chain.push_back(sigma->chain().front());
    const MobiusMap f = chain.empty() ? MobiusMap::identity() : MobiusMap(std::move(chain));
    const Point x = random_point(source, rng);
    const Point y = random_point(source, rng);
    const Point fx = f(x);
    const Point fy = f(y);
    if (!contains(target, fx) || !contains(target, fy)) {
      throw Error(ErrorCode::ImageEscape, "mapped point left the punctured ball");
    }
    const EvalResult base = tau_tilde(source, x, y);
    const EvalResult img = tau_tilde(target, fx, fy);
    const double ratio = img.value / base.value;
    const double allow = kInequalitySlack + (eval_error(img, opts) + hi * eval_error(base, opts)) / base.value;
    sink.assert_ge(ratio, lo, allow, x, y);
    sink.assert_ge(hi, ratio, allow, x, y);
  };
  VerificationReport r = run_sweep("mobius_distortion", opts, 0.0, source, per_sample);
  r.detail = "bounds [" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
  return r;
}

/// log(1 + a x) <= a log(1 + x) for a >= 1, x > 0.
inline VerificationReport verify_bernoulli(const CheckOptions& opts) {
  auto per_sample = [](Rng& rng, std::size_t i, SampleSink& sink) {
    const double a = i == 0 ? 1.0 : uniform(rng, 1.0, 100.0);
    const double x = 100.0 - uniform(rng, 0.0, 100.0);  // (0, 100]
    const double lhs = a * std::log1p(x);
    const double rhs = std::log1p(a * x);
    sink.assert_ge(lhs, rhs, 1e-12 * std::max(1.0, lhs), Point{a}, Point{x});
  };
  return run_sweep("bernoulli", opts, 0.0, std::nullopt, per_sample);
}

/// On the unit ball: metric(x,y) >= bound(|x-y|) >= c|x-y| (tau) or >= |x-y|
/// (u), with equality in the first step for antipodal pairs.
inline VerificationReport verify_uniform_continuity(MetricKind metric, std::size_t dim, const CheckOptions& opts) {
  if (metric == MetricKind::j) throw Error(ErrorCode::InvalidArgument, "uniform continuity covers tau and u");
  if (dim < 2) throw Error(ErrorCode::InvalidArgument, "dim must be >= 2");
  const Domain ball = Domain::unit_ball(dim);
  const double c = solve_constant_c().c;
  const bool is_tau = metric == MetricKind::tau;
  auto bound = [&](double t) { return is_tau ? tau_modulus_bound(t) : u_modulus_bound(t); };

  auto per_sample = [&](Rng& rng, std::size_t, SampleSink& sink) {
    const Point x = random_point(ball, rng);
    const Point y = random_point(ball, rng);
    const double t = x.distance(y);
    const EvalResult m = evaluate(metric, ball, x, y);
    const double b = bound(t);
    sink.assert_ge(m.value, b, kInequalitySlack + eval_error(m, opts), x, y);
    sink.assert_ge(b, is_tau ? c * t : t, kInequalitySlack, x, y);
    const Point opp = -x;
    const EvalResult anti = evaluate(metric, ball, x, opp);
    sink.assert_close(anti.value, bound(2.0 * x.norm()), kInequalitySlack + eval_error(anti, opts), x, opp);
  };
  return run_sweep(is_tau ? "uniform_tau" : "uniform_u", opts, 0.0, ball, per_sample);
}

/// Bounded D with r = jung_radius(diam D, n):
///   tau_D(x,y) >= log(1 + 2t / sqrt(4r^2 - t^2)) >= c t / r,  t = |x-y|,
/// and the first step is an equality for D = B(z, r), z = (x+y)/2.
inline VerificationReport verify_general_domain_bound(const Domain& domain, const CheckOptions& opts) {
  if (!domain.is_bounded()) throw Error(ErrorCode::UnboundedDomain, "domain must be bounded");
  const std::size_t n = domain.dim();
  const double r = jung_radius(diameter(domain), n);
  const double c = solve_constant_c().c;

  auto per_sample = [&](Rng& rng, std::size_t, SampleSink& sink) {
    const Point x = random_point(domain, rng);
    const Point y = random_point(domain, rng);
    const double t = x.distance(y);
    const EvalResult tau = tau_tilde(domain, x, y);
    const double lower = tau_general_bound(t, r);
    sink.assert_ge(tau.value, lower, kInequalitySlack + eval_error(tau, opts), x, y);
    sink.assert_ge(lower, c * t / r, kInequalitySlack, x, y);
    const Domain tight = Domain::ball((x + y) * 0.5, r);
    const EvalResult eq = tau_tilde(tight, x, y);
    sink.assert_close(eq.value, lower, kInequalitySlack + eval_error(eq, opts), x, y, tight);
  };
  VerificationReport rep = run_sweep("general_domain", opts, 0.0, domain, per_sample);
  rep.detail = "jung radius " + std::to_string(r);
  return rep;
}

/// L-bilipschitz affine f: tau_D / L^2 <= tau_{f(D)}(f x, f y) <= L^2 tau_D.
/// The bilipschitz hypothesis is first checked on 1000 random pairs.
inline VerificationReport verify_bilipschitz_tau(double L, const AffineMap& f, const Domain& d,
                                                 const CheckOptions& opts) {
  if (!(L >= 1.0)) throw Error(ErrorCode::InvalidArgument, "L must be >= 1");
  if (f.dim() != d.dim()) throw Error(ErrorCode::DimensionMismatch, "map/domain dimension");
  {
    Rng rng = make_stream(opts.seed, 0xb11b5);
    for (int i = 0; i < 1000; ++i) {
      const Point x = i % 2 ? random_point(d, rng) : random_direction(d.dim(), rng) * uniform(rng, 0.0, 10.0);
      const Point y = i % 2 ? random_point(d, rng) : random_direction(d.dim(), rng) * uniform(rng, 0.0, 10.0);
      const double base = x.distance(y);
      if (base == 0.0) continue;
      const double ratio = f(x).distance(f(y)) / base;
      if (ratio > L * (1.0 + 1e-12) || ratio < (1.0 / L) * (1.0 - 1e-12)) {
        throw Error(ErrorCode::BilipschitzCheckFailed,
                    "pair with distance ratio " + std::to_string(ratio) + " outside [1/L, L]");
      }
    }
  }
  const Domain image = image_domain(f, d);
  const double L2 = L * L;

  auto per_sample = [&](Rng& rng, std::size_t, SampleSink& sink) {
    const Point x = random_point(d, rng);
    const Point y = random_point(d, rng);
    const Point fx = f(x);
    const Point fy = f(y);
    if (!contains(image, fx) || !contains(image, fy)) return;  // on the sampled rim
    const EvalResult base = tau_tilde(d, x, y);
    const EvalResult img = tau_tilde(image, fx, fy);
    const double ratio = img.value / base.value;
    const double allow = kInequalitySlack + (eval_error(img, opts) + L2 * eval_error(base, opts)) / base.value;
    sink.assert_ge(ratio, 1.0 / L2, allow, x, y);
    sink.assert_ge(L2, ratio, allow, x, y);
  };
  VerificationReport rep = run_sweep("bilipschitz_tau", opts, 0.0, d, per_sample);
  rep.detail = "L = " + std::to_string(L);
  return rep;
}

/// 2 tau <= u <= 4 tau and tau <= j <= 2 tau.
inline VerificationReport verify_sandwich_u_tau(const Domain& d, const CheckOptions& opts) {
  auto per_sample = [&](Rng& rng, std::size_t i, SampleSink& sink) {
    const Point x = random_point(d, rng);
    const Point y = i == 0 ? x : random_point(d, rng);
    const EvalResult tau = tau_tilde(d, x, y);
    const EvalResult u = u_metric(d, x, y);
    const EvalResult j = j_metric(d, x, y);
    const double eu = kInequalitySlack + eval_error(u, opts);
    const double ej = kInequalitySlack + eval_error(j, opts);
    sink.assert_ge(u.value, 2.0 * tau.value, eu + 2.0 * eval_error(tau, opts), x, y);
    sink.assert_ge(4.0 * tau.value, u.value, eu + 4.0 * eval_error(tau, opts), x, y);
    sink.assert_ge(j.value, tau.value, ej + eval_error(tau, opts), x, y);
    sink.assert_ge(2.0 * tau.value, j.value, ej + 2.0 * eval_error(tau, opts), x, y);
  };
  return run_sweep("sandwich", opts, 0.0, d, per_sample);
}

/// Exact symmetry and the triangle inequality (slack 1e-12) on random triples.
inline VerificationReport verify_metric_axioms(const Domain& d, MetricKind metric, const CheckOptions& opts) {
  auto per_sample = [&](Rng& rng, std::size_t, SampleSink& sink) {
    const Point x = random_point(d, rng);
    const Point y = random_point(d, rng);
    const Point z = random_point(d, rng);
    const double xy = evaluate(metric, d, x, y).value;
    const double yx = evaluate(metric, d, y, x).value;
    const double yz = evaluate(metric, d, y, z).value;
    const double xz = evaluate(metric, d, x, z).value;
    sink.assert_close(xy, yx, 0.0, x, y);
    sink.assert_ge(xy + yz, xz, kIdentitySlack, x, z);
  };
  return run_sweep(std::string("metric_axioms_") + to_string(metric), opts, 0.0, d, per_sample);
}

/// Random nested pair inner ⊂ outer.
struct NestedDomains {
  Domain inner;
  Domain outer;
};

inline NestedDomains random_nested_domains(std::size_t n, Rng& rng) {
  switch (rng() % 4) {
    case 0: {
      // ball inside a larger ball sharing part of the picture
      const Point c1 = random_in_unit_ball(n, rng);
      const double r1 = uniform(rng, 0.2, 1.0);
      const Point c2 = c1 + random_in_unit_ball(n, rng) * uniform(rng, 0.0, 1.0);
      const double r2 = c1.distance(c2) + r1 + uniform(rng, 0.0, 0.5);
      return {Domain::ball(c1, r1), Domain::ball(c2, r2)};
    }
    case 1: {
      // internally tangent balls
      const double s = uniform(rng, 0.05, 2.0);
      const Point c2 = random_direction(n, rng) * s;
      return {Domain::unit_ball(n), Domain::ball(c2, 1.0 + s)};
    }
    case 2: {
      const Point a = random_in_unit_ball(n, rng) * 0.9;
      return {Domain::punctured_unit_ball(a), Domain::unit_ball(n)};
    }
    default: {
      const Point p = random_direction(n, rng) * uniform(rng, 1.0, 3.0);
      return {Domain::unit_ball(n), Domain::punctured_space(p)};
    }
  }
}

/// D1 ⊂ D2 implies tau_{D2} <= tau_{D1}.
inline VerificationReport verify_monotonicity_tau(std::size_t dim, const CheckOptions& opts) {
  auto per_sample = [&](Rng& rng, std::size_t, SampleSink& sink) {
    const NestedDomains nd = random_nested_domains(dim, rng);
    const Point x = random_point(nd.inner, rng);
    const Point y = random_point(nd.inner, rng);
    const EvalResult in = tau_tilde(nd.inner, x, y);
    const EvalResult out = tau_tilde(nd.outer, x, y);
    sink.assert_ge(in.value, out.value, kInequalitySlack + eval_error(in, opts) + eval_error(out, opts), x, y, nd.inner);
  };
  return run_sweep("monotonicity_tau", opts, 0.0, std::nullopt, per_sample);
}

/// Search for D1 ⊂ D2 and x, y in D1 with u_{D2}(x,y) > u_{D1}(x,y); passes
/// when such an instance is found. The witness domain is the inner one.
inline VerificationReport verify_u_non_monotonicity(std::size_t dim, const CheckOptions& opts) {
  auto per_sample = [&](Rng& rng, std::size_t, SampleSink& sink) {
    const NestedDomains nd = random_nested_domains(dim, rng);
    const Point x = random_point(nd.inner, rng);
    const Point y = random_point(nd.inner, rng);
    sink.offer(u_metric(nd.outer, x, y).value, u_metric(nd.inner, x, y).value, x, y, nd.inner);
  };
  VerificationReport r = run_sweep("u_non_monotonicity", opts, kInequalitySlack, std::nullopt, per_sample,
                                   /*search=*/true);
  r.detail = "worst_margin is the largest u_outer - u_inner found";
  return r;
}

/// Radial/diametral closed forms on the unit ball against the generic evaluator,
/// dims 2-4.
inline VerificationReport verify_closed_forms(const CheckOptions& opts) {
  auto per_sample = [](Rng& rng, std::size_t i, SampleSink& sink) {
    const std::size_t n = 2 + i % 3;
    const Domain ball = Domain::unit_ball(n);
    const Point dir = random_direction(n, rng);
    double rx = uniform01(rng);
    double ry = uniform01(rng);
    if (rx > ry) std::swap(rx, ry);
    const int sign = rng() % 2 ? 1 : -1;
    const Point x = dir * (sign * rx);
    const Point y = dir * ry;
    if (!contains(ball, x) || !contains(ball, y)) return;
    const double closed = tau_radial_closed_form(rx, ry, sign);
    const EvalResult generic = tau_tilde(ball, x, y);
    sink.assert_close(generic.value, closed, kInequalitySlack, x, y, ball);
  };
  return run_sweep("closed_forms", opts, 0.0, std::nullopt, per_sample);
}

/// Inversion identities for f = sigma_a after a random rotation, dims 2-3:
/// sigma(a) = 0, involution, |sigma f x - sigma f y| = |x - y|, the distance
/// identity for sigma, the distance formula for f, the radius bounds
/// |a*| - 1 <= |f z - a*| <= |a*| + 1, and preservation of the unit sphere.
inline VerificationReport verify_inversion_identities(const CheckOptions& opts) {
  constexpr double kResidual = 1e-10;
  auto per_sample = [](Rng& rng, std::size_t i, SampleSink& sink) {
    const std::size_t n = 2 + i % 2;
    const Point a = random_direction(n, rng) * uniform(rng, 0.05, 0.9);
    const MobiusMap sigma = punctured_ball_map(a);
    const auto& inv = std::get<SphereInversion>(sigma.chain().front());
    const Point& star = inv.center;
    const double r = inv.radius;
    const MobiusMap f({make_orthogonal(random_orthogonal(n, rng)), inv});
    const Point x = random_in_unit_ball(n, rng);
    const Point y = random_in_unit_ball(n, rng);
    const Point fx = f(x);
    const Point fy = f(y);
    const Point zero = Point::zero(n);

    sink.assert_ge(kResidual, sigma(a).norm(), 0.0, a, zero);
    sink.assert_ge(kResidual, f(zero).distance(a), 0.0, zero, a);
    sink.assert_ge(kIdentitySlack, sigma(sigma(x)).distance(x), 0.0, x, x);
    sink.assert_ge(kResidual, std::abs(sigma(fx).distance(sigma(fy)) - x.distance(y)), 0.0, x, y);
    sink.assert_ge(kResidual * (1.0 + x.distance(y)), verify_distance_identity(star, r, x, y), 0.0, x, y);
    const double predicted = fx.distance(star) * fy.distance(star) * x.distance(y) / (star.norm_sq() - 1.0);
    sink.assert_ge(kResidual, std::abs(fx.distance(fy) - predicted), 0.0, x, y);
    const double reach = fx.distance(star);
    sink.assert_ge(reach, star.norm() - 1.0, kIdentitySlack, x, x);
    sink.assert_ge(star.norm() + 1.0, reach, kIdentitySlack, x, x);
    const Point s = random_direction(n, rng);
    sink.assert_ge(kIdentitySlack, std::abs(sigma(s).norm() - 1.0), 0.0, s, s);
  };
  return run_sweep("inversion_identities", opts, 0.0, std::nullopt, per_sample);
}

}  // namespace hypmetrics
