// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "hypmetrics/hypmetrics.hpp"
#include "oracles.hpp"

using namespace hypmetrics;

namespace {

struct Outcome {
  bool pass = true;
  std::string note;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      note += (note.empty() ? "" : "; ") + what;
    }
  }
};

CheckOptions strict(std::size_t samples) {
  CheckOptions o;
  o.samples = samples;
  o.strict = true;
  return o;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

void require_report(Outcome& out, const VerificationReport& r) {
  out.require(r.passed, r.check_name + " failed (worst margin " + fmt("%.3g", r.worst_margin) + ")");
}

Outcome constant_reproduction() {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  const ConstantSolveResult r = solve_constant_c();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.require(r.c >= 0.755 && r.c <= 0.770, "c outside [0.755, 0.770]");
  out.require(std::round(r.c * 100.0) == 76.0, "c does not round to 0.76");
  out.require(std::round(r.t_star * 100.0) == 116.0, "t_star does not round to 1.16");
  out.require(r.residual <= 1e-10, "residual above 1e-10");
  out.require(secs < 1.0, "slower than 1 s");
  out.note += (out.note.empty() ? "" : "; ") + fmt("c=%.6f", r.c) + fmt(" t*=%.6f", r.t_star) +
              fmt(" residual=%.1e", r.residual);
  return out;
}

Outcome closed_form_vs_oracle() {
  Outcome out;
  Rng rng = make_stream(42, 0xacc2);
  double worst_closed = 0.0;
  double worst_rel = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 2 + i % 3;
    const Point dir = random_direction(n, rng);
    double rx = uniform01(rng);
    double ry = uniform01(rng);
    if (rx > ry) std::swap(rx, ry);
    const int sign = rng() % 2 ? 1 : -1;
    const Point x = dir * (sign * rx);
    const Point y = dir * ry;
    const Domain ball = Domain::unit_ball(n);
    if (!contains(ball, x) || !contains(ball, y)) continue;
    const double generic = tau_tilde(ball, x, y).value;
    worst_closed = std::max(worst_closed, std::abs(generic - tau_radial_closed_form(rx, ry, sign)));
    const double brute = oracle::tau_from_product(x.distance(y), oracle::sphere_product_inf(Point::zero(n), 1.0, x, y));
    if (brute > 0.0) worst_rel = std::max(worst_rel, std::abs(generic - brute) / brute);
  }
  out.require(worst_closed <= 1e-9, "closed form vs generic above 1e-9");
  out.require(worst_rel <= 1e-6, "generic vs brute force above 1e-6 relative");
  out.note += (out.note.empty() ? "" : "; ") + fmt("max |closed-generic|=%.1e", worst_closed) +
              fmt(" max rel vs brute=%.1e", worst_rel);
  return out;
}

Outcome mobius_distortion() {
  Outcome out;
  for (std::size_t n : {2u, 3u}) {
    for (double s : {0.0, 0.3, 0.5, 0.9}) require_report(out, verify_mobius_distortion(Point::basis(n, 0, s), strict(10000)));
  }
  return out;
}

Outcome inversion_identities() {
  Outcome out;
  require_report(out, verify_inversion_identities(strict(100000)));
  return out;
}

Outcome uniform_continuity() {
  Outcome out;
  for (std::size_t n : {2u, 3u}) {
    require_report(out, verify_uniform_continuity(MetricKind::tau, n, strict(100000)));
    require_report(out, verify_uniform_continuity(MetricKind::u, n, strict(100000)));
  }
  out.require(solve_constant_c().c >= 0.76, "solved constant below 0.76");
  return out;
}

Outcome general_domain() {
  Outcome out;
  for (const Domain& d : {unit_square(), random_triangle(42), Domain::ball(Point{0.0, 0.0}, 2.0)}) {
    const VerificationReport r = verify_general_domain_bound(d, strict(10000));
    require_report(out, r);
  }
  // Equality case on a ball of Jung radius for symmetric pairs.
  const double r = jung_radius(diameter(unit_square()), 2);
  const Domain tight = Domain::ball(Point{0.0, 0.0}, r);
  for (double s : {0.05, 0.2, 0.4, 0.55}) {
    const Point u{s * r, 0.0};
    const double t = 2.0 * s * r;
    out.require(std::abs(tau_tilde(tight, -u, u).value - tau_general_bound(t, r)) <= 1e-9, "equality case not tight");
  }
  return out;
}

Outcome sandwich() {
  Outcome out;
  for (const Domain& d : canonical_variants(2)) require_report(out, verify_sandwich_u_tau(d, strict(100000)));
  return out;
}

Outcome bilipschitz() {
  Outcome out;
  const std::vector<double> diag{2.0, 1.0};
  const Domain disk = Domain::unit_ball(2);
  require_report(out, verify_bilipschitz_tau(2.0, AffineMap::linear(Matrix::diagonal(diag)), disk, strict(10000)));
  Rng rng = make_stream(42, 0xacc8);
  double worst = 0.0;
  for (double lambda : {1.0, 3.0, 0.25}) {
    const AffineMap f = AffineMap::similarity(lambda, random_orthogonal(2, rng), Point{0.7, -0.4});
    const PointMap fm = [&](const Point& p) { return f(p); };
    const DistortionMeasurement m = measure_distortion(fm, disk, image_domain(f, disk), MetricKind::tau, 10000, 42);
    worst = std::max({worst, std::abs(m.sup_ratio - 1.0), std::abs(m.inf_ratio - 1.0)});
  }
  out.require(worst <= 1e-12, "similarity ratio differs from 1 by more than 1e-12");
  out.note += (out.note.empty() ? "" : "; ") + fmt("similarity max |ratio-1|=%.1e", worst);
  return out;
}

Outcome dilatation() {
  Outcome out;
  const std::vector<double> radii{1e-2, 1e-3, 1e-4};
  const MobiusMap sigma = punctured_ball_map(Point{0.5, 0.0});
  const DilatationEstimate h1 =
      linear_dilatation([&](const Point& p) { return sigma(p); }, Point{0.2, 0.0}, radii, Domain::unit_ball(2));
  const DilatationEstimate h2 =
      linear_dilatation([](const Point& p) { return Point{2.0 * p[0], p[1]}; }, Point{0.0, 0.0}, radii);
  out.require(std::abs(h1.value - 1.0) <= 1e-2, "inversion dilatation not 1");
  out.require(std::abs(h2.value - 2.0) <= 1e-3, "diag(2,1) dilatation not 2");
  out.note += (out.note.empty() ? "" : "; ") + fmt("H(sigma)=%.6f", h1.value) + fmt(" H(diag)=%.6f", h2.value);
  return out;
}

Outcome negative_controls() {
  Outcome out;
  const VerificationReport found = verify_u_non_monotonicity(2, strict(10000));
  out.require(found.passed, "no u monotonicity violation found");

  CheckOptions flip = strict(500);
  flip.flipped = true;
  const std::vector<double> diag{2.0, 1.0};
  const std::vector<std::function<VerificationReport()>> flipped = {
      [&] { return verify_mobius_distortion(Point{0.5, 0.0}, flip); },
      [&] { return verify_bernoulli(flip); },
      [&] { return verify_uniform_continuity(MetricKind::tau, 2, flip); },
      [&] { return verify_uniform_continuity(MetricKind::u, 2, flip); },
      [&] { return verify_general_domain_bound(Domain::ball(Point{0.0, 0.0}, 2.0), flip); },
      [&] { return verify_bilipschitz_tau(2.0, AffineMap::linear(Matrix::diagonal(diag)), Domain::unit_ball(2), flip); },
      [&] { return verify_sandwich_u_tau(Domain::unit_ball(2), flip); },
      [&] { return verify_metric_axioms(Domain::unit_ball(2), MetricKind::tau, flip); },
      [&] { return verify_monotonicity_tau(2, flip); },
      [&] { return verify_u_non_monotonicity(2, flip); },
      [&] { return verify_closed_forms(flip); },
      [&] { return verify_inversion_identities(flip); },
  };
  int caught = 0;
  for (const auto& run : flipped) {
    const VerificationReport r = run();
    if (!r.passed) ++caught;
    else out.require(false, "flipped " + r.check_name + " passed");
  }
  out.note += (out.note.empty() ? "" : "; ") + std::to_string(caught) + "/" + std::to_string(flipped.size()) +
              " flipped checks failed" + fmt(", u violation %.3g", found.worst_margin);
  return out;
}

Outcome metric_axioms() {
  Outcome out;
  for (const Domain& d : canonical_variants(2)) {
    for (MetricKind m : {MetricKind::tau, MetricKind::u, MetricKind::j}) {
      require_report(out, verify_metric_axioms(d, m, strict(100000)));
    }
  }
  return out;
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;  // 0 = no runtime bound
  Outcome (*run)();
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "constant reproduction", 1.0, constant_reproduction},
      {2, "closed forms vs brute-force oracle", 120.0, closed_form_vs_oracle},
      {3, "mobius distortion bounds", 120.0, mobius_distortion},
      {4, "inversion identities", 0.0, inversion_identities},
      {5, "uniform continuity", 0.0, uniform_continuity},
      {6, "general-domain bound", 0.0, general_domain},
      {7, "sandwich and comparison", 0.0, sandwich},
      {8, "bilipschitz distortion", 0.0, bilipschitz},
      {9, "linear dilatation", 0.0, dilatation},
      {10, "negative controls", 0.0, negative_controls},
      {11, "metric axioms", 0.0, metric_axioms},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note = std::string("threw: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0.0 && secs >= c.budget_s) o.require(false, "exceeded " + fmt("%.0f s budget", c.budget_s));
    if (!o.pass) ++failures;
    std::printf("%s  AC%-2d %-36s %7.2f s  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.note.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
