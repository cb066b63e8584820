#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "hypmetrics/hypmetrics.hpp"

using namespace hypmetrics;

namespace {

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::InvalidArgument;
}

CheckOptions small(std::size_t samples = 1000, bool flipped = false) {
  CheckOptions o;
  o.samples = samples;
  o.flipped = flipped;
  return o;
}

// Dense-grid reference for min g, independent of the solver.
double grid_min_ratio(double* argmin) {
  double best = INFINITY;
  for (int k = 1; k < 2000000; ++k) {
    const double t = 2.0 * k / 2000000.0;
    const double g = std::log1p(2.0 * t / std::sqrt(4.0 - t * t)) / t;
    if (g < best) {
      best = g;
      *argmin = t;
    }
  }
  return best;
}

}  // namespace

TEST(Constant, MatchesPaperAndGridReference) {
  const ConstantSolveResult r = solve_constant_c();
  EXPECT_GE(r.c, 0.755);
  EXPECT_LE(r.c, 0.770);
  EXPECT_NEAR(r.c, 0.76, 0.005);
  EXPECT_NEAR(r.t_star, 1.16, 0.005);
  EXPECT_LE(r.residual, 1e-10);
  EXPECT_LE(r.iterations, 500u);
  double t_grid = 0.0;
  EXPECT_NEAR(r.c, grid_min_ratio(&t_grid), 1e-12);
  EXPECT_NEAR(r.t_star, t_grid, 2e-6);
  EXPECT_GT(modulus_ratio(r.t_star - 0.05), r.c);
  EXPECT_GT(modulus_ratio(r.t_star + 0.05), r.c);
}

TEST(Constant, Deterministic) {
  const ConstantSolveResult a = solve_constant_c();
  const ConstantSolveResult b = solve_constant_c();
  EXPECT_EQ(a.c, b.c);
  EXPECT_EQ(a.t_star, b.t_star);
}

TEST(DistortionParams, AlphaConvention) {
  EXPECT_DOUBLE_EQ(DistortionParams::make(4.0, 2.0, 3).alpha, 0.5);
  EXPECT_DOUBLE_EQ(DistortionParams::make(4.0, 2.0, 1).alpha, 1.0);
  EXPECT_DOUBLE_EQ(DistortionParams::from_bilipschitz(2.0, 2).K, 4.0);
  EXPECT_EQ(code_of([] { DistortionParams::make(0.5, 1.0, 2); }), ErrorCode::InvalidArgument);
}

TEST(Dilatation, SpecExamples) {
  const std::vector<double> radii{1e-2, 1e-3, 1e-4};
  const PointMap scale = [](const Point& p) { return p * 3.0; };
  EXPECT_NEAR(linear_dilatation(scale, Point{0.3, 0.1}, radii).value, 1.0, 1e-9);

  const PointMap stretch = [](const Point& p) { return Point{2.0 * p[0], p[1]}; };
  EXPECT_NEAR(linear_dilatation(stretch, Point{0.0, 0.0}, radii).value, 2.0, 1e-3);

  const MobiusMap sigma = punctured_ball_map(Point{0.5, 0.0});
  const PointMap f = [&](const Point& p) { return sigma(p); };
  const DilatationEstimate est = linear_dilatation(f, Point{0.2, 0.0}, radii);
  EXPECT_NEAR(est.value, 1.0, 1e-2);
  EXPECT_EQ(est.ratios.size(), 3u);
  EXPECT_TRUE(est.settled);
}

TEST(Dilatation, ThreeDimensionalLinearMap) {
  const std::vector<double> radii{1e-3};
  const PointMap f = [](const Point& p) { return Point{3.0 * p[0], p[1], 0.5 * p[2]}; };
  EXPECT_NEAR(linear_dilatation(f, Point{0.0, 0.0, 0.0}, radii).value, 6.0, 0.1);
}

TEST(Dilatation, Errors) {
  const PointMap id = [](const Point& p) { return p; };
  const std::vector<double> increasing{1e-3, 1e-2};
  EXPECT_EQ(code_of([&] { linear_dilatation(id, Point{0.0, 0.0}, increasing); }), ErrorCode::InvalidArgument);
  const std::vector<double> big{0.5};
  EXPECT_EQ(code_of([&] { linear_dilatation(id, Point{0.9, 0.0}, big, Domain::unit_ball(2)); }),
            ErrorCode::ClearanceViolation);
  const MobiusMap inv({make_inversion(Point{0.001, 0.0}, 1.0)});
  const PointMap f = [&](const Point& p) { return inv(p); };
  const std::vector<double> r{1e-3};
  EXPECT_EQ(code_of([&] { linear_dilatation(f, Point{0.0, 0.0}, r); }), ErrorCode::ClearanceViolation);
}

TEST(Distortion, IdentityAndScaling) {
  const PointMap id = [](const Point& p) { return p; };
  for (MetricKind m : {MetricKind::tau, MetricKind::u, MetricKind::j}) {
    const DistortionMeasurement r = measure_distortion(id, Domain::unit_ball(2), Domain::unit_ball(2), m, 500, 1);
    EXPECT_EQ(r.sup_ratio, 1.0);
    EXPECT_EQ(r.inf_ratio, 1.0);
  }
  const PointMap scale = [](const Point& p) { return p * 3.0; };
  const DistortionMeasurement r = measure_distortion(scale, Domain::unit_ball(2), Domain::ball(Point{0.0, 0.0}, 3.0),
                                                     MetricKind::tau, 500, 1);
  EXPECT_NEAR(r.sup_ratio, 1.0, 1e-12);
  EXPECT_NEAR(r.inf_ratio, 1.0, 1e-12);
  EXPECT_TRUE(r.sup_witness.has_value());
}

TEST(Distortion, PuncturedBallInversionWithinTheoremBounds) {
  const MobiusMap sigma = punctured_ball_map(Point{0.5, 0.0});
  const PointMap f = [&](const Point& p) { return sigma(p); };
  const DistortionMeasurement r =
      measure_distortion(f, Domain::punctured_unit_ball(Point{0.0, 0.0}), Domain::punctured_unit_ball(Point{0.5, 0.0}),
                         MetricKind::tau, 5000, 2);
  EXPECT_GE(r.inf_ratio, 1.0 / 3.0 - 1e-9);
  EXPECT_LE(r.sup_ratio, 3.0 + 1e-9);
  EXPECT_EQ(r.pairs_used, 5000u);
}

TEST(Distortion, ImageEscape) {
  const PointMap scale = [](const Point& p) { return p * 3.0; };
  EXPECT_EQ(code_of([&] {
              measure_distortion(scale, Domain::unit_ball(2), Domain::unit_ball(2), MetricKind::tau, 100, 1);
            }),
            ErrorCode::ImageEscape);
}

TEST(Affine, SingularValuesAndImages) {
  const std::vector<double> diag{2.0, 1.0};
  const AffineMap a = AffineMap::linear(Matrix::diagonal(diag));
  EXPECT_NEAR(a.bilipschitz_constant(), 2.0, 1e-12);
  EXPECT_EQ(a.similarity_scale(), 0.0);
  const AffineMap shear = AffineMap::linear(Matrix(2, {1.0, 0.5, 0.0, 1.0}));
  const auto [lo, hi] = shear.singular_value_range();
  EXPECT_NEAR(lo * hi, 1.0, 1e-12);  // det = 1
  EXPECT_NEAR(hi, (0.5 + std::sqrt(4.25)) / 2.0, 1e-12);
  const Domain img = image_domain(a, Domain::unit_ball(2));
  EXPECT_FALSE(img.is_canonical());
  EXPECT_TRUE(contains(img, Point{1.9, 0.0}));
  EXPECT_FALSE(contains(img, Point{0.0, 1.1}));
  EXPECT_NEAR(a.inverse_apply(a(Point{0.3, -0.4})).distance(Point{0.3, -0.4}), 0.0, 1e-15);
  EXPECT_EQ(code_of([] { AffineMap::linear(Matrix(2, {1.0, 2.0, 2.0, 4.0})); }), ErrorCode::InvalidArgument);
}

TEST(Fixtures, Domains) {
  const Domain tri = random_triangle(42);
  ASSERT_EQ(std::get<SampledDomain>(tri.variant()).polygon_vertices().size(), 3u);
  EXPECT_EQ(std::get<SampledDomain>(random_triangle(42).variant()).polygon_vertices(),
            std::get<SampledDomain>(tri.variant()).polygon_vertices());
  EXPECT_EQ(std::get<SampledDomain>(unit_square().variant()).boundary().size(), 4u * 1024u);
  EXPECT_EQ(canonical_variants(3).size(), 4u);
}

// Each check on a small budget: passes as stated and fails when flipped.
struct CheckCase {
  std::string name;
  std::function<VerificationReport(const CheckOptions&)> run;
};

class Checks : public ::testing::TestWithParam<CheckCase> {};

TEST_P(Checks, PassesAndFlippedFails) {
  const CheckCase& c = GetParam();
  const VerificationReport ok = c.run(small(400));
  EXPECT_TRUE(ok.passed) << c.name << " worst_margin " << ok.worst_margin;
  EXPECT_EQ(ok.samples, 400u);
  EXPECT_EQ(ok.seed, 42u);
  const VerificationReport bad = c.run(small(400, true));
  EXPECT_FALSE(bad.passed) << c.name << " flipped";
  EXPECT_TRUE(bad.witness.has_value());
}

INSTANTIATE_TEST_SUITE_P(
    All, Checks,
    ::testing::Values(
        CheckCase{"mobius_a05", [](const CheckOptions& o) { return verify_mobius_distortion(Point{0.5, 0.0}, o); }},
        CheckCase{"mobius_a09_3d",
                  [](const CheckOptions& o) { return verify_mobius_distortion(Point{0.9, 0.0, 0.0}, o); }},
        CheckCase{"bernoulli", [](const CheckOptions& o) { return verify_bernoulli(o); }},
        CheckCase{"uniform_tau", [](const CheckOptions& o) { return verify_uniform_continuity(MetricKind::tau, 2, o); }},
        CheckCase{"uniform_u", [](const CheckOptions& o) { return verify_uniform_continuity(MetricKind::u, 3, o); }},
        CheckCase{"general_square", [](const CheckOptions& o) { return verify_general_domain_bound(unit_square(), o); }},
        CheckCase{"general_ball",
                  [](const CheckOptions& o) { return verify_general_domain_bound(Domain::ball(Point{0.0, 0.0}, 2.0), o); }},
        CheckCase{"bilipschitz_diag",
                  [](const CheckOptions& o) {
                    const std::vector<double> d{2.0, 1.0};
                    return verify_bilipschitz_tau(2.0, AffineMap::linear(Matrix::diagonal(d)), Domain::unit_ball(2), o);
                  }},
        CheckCase{"sandwich_space",
                  [](const CheckOptions& o) { return verify_sandwich_u_tau(Domain::punctured_space(Point{0.0, 0.0}), o); }},
        CheckCase{"axioms_u",
                  [](const CheckOptions& o) { return verify_metric_axioms(Domain::unit_ball(2), MetricKind::u, o); }},
        CheckCase{"monotonicity", [](const CheckOptions& o) { return verify_monotonicity_tau(2, o); }},
        CheckCase{"u_non_monotonicity", [](const CheckOptions& o) { return verify_u_non_monotonicity(2, o); }},
        CheckCase{"closed_forms", [](const CheckOptions& o) { return verify_closed_forms(o); }},
        CheckCase{"inversion_identities", [](const CheckOptions& o) { return verify_inversion_identities(o); }}),
    [](const auto& info) { return info.param.name; });

TEST(Checks, MobiusAtZeroHasZeroSlack) {
  const VerificationReport r = verify_mobius_distortion(Point{0.0, 0.0}, small(300));
  EXPECT_TRUE(r.passed);
  EXPECT_NEAR(r.worst_margin, 0.0, 1e-8);
}

TEST(Checks, ReportsBoundsInDetail) {
  EXPECT_NE(verify_mobius_distortion(Point{0.9, 0.0}, small(50)).detail.find("19.0"), std::string::npos);
}

TEST(Checks, SimilarityRatiosAreOne) {
  Rng rng = make_stream(3, 0);
  const AffineMap iso = AffineMap::similarity(1.0, random_orthogonal(2, rng), Point{0.5, -1.0});
  EXPECT_TRUE(verify_bilipschitz_tau(1.0, iso, Domain::unit_ball(2), small(500)).passed);
  for (double lambda : {1.0, 2.5, 0.3}) {
    const AffineMap f = AffineMap::similarity(lambda, random_orthogonal(2, rng), Point{0.5, -1.0});
    const Domain d = Domain::ball(Point{0.2, 0.1}, 1.5);
    const PointMap fm = [&](const Point& p) { return f(p); };
    const DistortionMeasurement m = measure_distortion(fm, d, image_domain(f, d), MetricKind::tau, 500, 4);
    EXPECT_NEAR(m.sup_ratio, 1.0, 1e-12);
    EXPECT_NEAR(m.inf_ratio, 1.0, 1e-12);
  }
}

TEST(Checks, DomainDrivenErrors) {
  EXPECT_EQ(code_of([] { verify_general_domain_bound(Domain::punctured_space(Point{0.0}), small(10)); }),
            ErrorCode::UnboundedDomain);
  const std::vector<double> d{3.0, 1.0};
  EXPECT_EQ(code_of([&] {
              verify_bilipschitz_tau(2.0, AffineMap::linear(Matrix::diagonal(d)), Domain::unit_ball(2), small(10));
            }),
            ErrorCode::BilipschitzCheckFailed);
  EXPECT_EQ(code_of([] { verify_uniform_continuity(MetricKind::j, 2, small(10)); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { verify_mobius_distortion(Point{1.0, 0.0}, small(10)); }), ErrorCode::PunctureOutsideBall);
}

TEST(Checks, NonMonotonicityWitnessIsReal) {
  const VerificationReport r = verify_u_non_monotonicity(2, small(2000));
  ASSERT_TRUE(r.passed);
  ASSERT_TRUE(r.witness && r.witness->domain);
  EXPECT_GT(r.worst_margin, 0.0);
}

TEST(Harness, WorkerCountDoesNotChangeResults) {
  CheckOptions one = small(1500);
  one.workers = 1;
  CheckOptions many = small(1500);
  many.workers = 4;
  const VerificationReport a = verify_sandwich_u_tau(Domain::punctured_unit_ball(Point{0.3, 0.2}), one);
  const VerificationReport b = verify_sandwich_u_tau(Domain::punctured_unit_ball(Point{0.3, 0.2}), many);
  EXPECT_EQ(a.worst_margin, b.worst_margin);
  ASSERT_TRUE(a.witness && b.witness);
  EXPECT_EQ(a.witness->x, b.witness->x);
  EXPECT_EQ(a.witness->y, b.witness->y);
}

TEST(Harness, SeedChangesSamples) {
  CheckOptions a = small(200);
  CheckOptions b = small(200);
  b.seed = 7;
  EXPECT_NE(verify_bernoulli(a).worst_margin, verify_bernoulli(b).worst_margin);
}

TEST(Harness, PassRuleUsesTolerance) {
  auto exact = [](Rng&, std::size_t, SampleSink& sink) {
    sink.assert_ge(1.0, 1.0 + 1e-10, 0.0, Point{0.0}, Point{0.0});
  };
  EXPECT_FALSE(run_sweep("tight", small(10), 0.0, std::nullopt, exact).passed);
  const VerificationReport r = run_sweep("loose", small(10), 1e-9, std::nullopt, exact);
  EXPECT_TRUE(r.passed);
  EXPECT_NEAR(r.worst_margin, -1e-10, 1e-15);
}

TEST(Harness, NaNCountsAsFailure) {
  auto nan = [](Rng&, std::size_t, SampleSink& sink) {
    sink.assert_ge(std::nan(""), 0.0, 0.0, Point{0.0}, Point{0.0});
  };
  EXPECT_FALSE(run_sweep("nan", small(5), 1.0, std::nullopt, nan).passed);
}

TEST(Harness, WorkerExceptionsPropagate) {
  auto boom = [](Rng&, std::size_t i, SampleSink&) {
    if (i == 300) throw Error(ErrorCode::ImageEscape, "boom");
  };
  EXPECT_EQ(code_of([&] { run_sweep("boom", small(600), 0.0, std::nullopt, boom); }), ErrorCode::ImageEscape);
}
