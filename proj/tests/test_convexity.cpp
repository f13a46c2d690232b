#include <cmath>
#include <complex>
#include <variant>
#include <vector>

#include <gtest/gtest.h>

#include "heisenberg/convexity.hpp"

namespace heis {
namespace {

using cd = std::complex<double>;

HPoint h1(double x, double y, double t) { return HPoint({x}, {y}, t); }

// Arc found by scan_for_witness(t-coord, 100, seed 7) at trial 0; both the
// t-coord and cc-dist-origin witnesses live on it.
Arc seed7_arc() {
  return Arc(h1(-1.020976742868391, 0.21313959286512674, -0.743363224536485),
             {cd(-0.19050483369140997, 0.18426612707120302)}, -1, 2.262380483029888);
}

TEST(FieldsTest, BuiltinsResolve) {
  EXPECT_EQ(builtin_field("const 5")(h1(1, 2, 3)), 5.0);
  EXPECT_EQ(builtin_field("const:-2.5")(h1(1, 2, 3)), -2.5);
  EXPECT_EQ(builtin_field("const")(h1(1, 2, 3)), 0.0);
  EXPECT_EQ(builtin_field("t-coord")(h1(1, 2, 3)), 3.0);
  EXPECT_NEAR(builtin_field("cc-dist-origin")(h1(0, 0, 1)), std::sqrt(kPi), 1e-9);
  EXPECT_EQ(builtin_field("example1-indicator")(h1(0.5, 0.5, 0.0)), 0.0);
  EXPECT_EQ(builtin_field("example1-indicator")(h1(0.5, 0.5, 1e-6)), 1.0);
  EXPECT_THROW(builtin_field("nope"), std::invalid_argument);
  EXPECT_THROW(builtin_field("const abc"), std::invalid_argument);
  EXPECT_THROW(example1_indicator()(HPoint::origin(2)), DimensionError);
}

TEST(FieldsTest, Example1LineMembershipIsTight) {
  EXPECT_TRUE(in_example1_line(h1(3, 3, 0)));
  EXPECT_TRUE(in_example1_line(h1(3, 3 + 5e-13, -5e-13)));
  EXPECT_FALSE(in_example1_line(h1(3, 3 + 1e-11, 0)));
  EXPECT_FALSE(in_example1_line(h1(3, 3, 1e-11)));
}

TEST(ConvexityAlongTest, ConstantNeverViolates) {
  Sampler rng(1);
  for (int i = 0; i < 200; ++i) {
    const auto g = connect(rng.point_in_box(2, 2.0), rng.point_in_box(2, 2.0)).front();
    for (double k : {0.0, 5.0, -1e6}) {
      const auto rep = convexity_along(constant_field(k), g, 16);
      EXPECT_EQ(rep.verdict, Verdict::ConvexOnSamples);
      EXPECT_FALSE(rep.witness.has_value());
    }
  }
  EXPECT_THROW(convexity_along(constant_field(0), generating_geodesic(1.0, 1), 2), DomainError);
}

TEST(ConvexityAlongTest, HeightAlongGeneratingGeodesic) {
  // t = 2|R|^2 (s - sin s) has second derivative 2|R|^2 sin s, negative on (pi, 2pi).
  for (std::size_t grid : {64u, 128u}) {
    const auto rep = convexity_along(t_coord_field(), generating_geodesic(1.0, 1), grid);
    ASSERT_EQ(rep.verdict, Verdict::Violation);
    const auto& w = *rep.witness;
    EXPECT_GT(w.lhs, w.rhs + kConvexitySlack);
    EXPECT_GT(w.s2, kPi);
  }
  // A negative height reverses the sign of the second derivative; still a violation.
  EXPECT_EQ(convexity_along(t_coord_field(), generating_geodesic(-1.0, 1)).verdict,
            Verdict::Violation);
}

TEST(ConvexityAlongTest, WitnessesReplay) {
  Sampler rng(5);
  int found = 0;
  for (int i = 0; i < 50; ++i) {
    const auto g = connect(rng.point_in_box(1, 2.0), rng.point_in_box(1, 2.0)).front();
    for (const auto& u : {t_coord_field(), cc_dist_origin_field()}) {
      const auto rep = convexity_along(u, g, 32);
      if (!rep.witness) continue;
      ++found;
      const auto [lhs, rhs] = replay(u, *rep.witness);
      EXPECT_NEAR(lhs, rep.witness->lhs, 1e-12);
      EXPECT_NEAR(rhs, rep.witness->rhs, 1e-12);
      EXPECT_GT(lhs, rhs + kConvexitySlack);
      EXPECT_GT(rep.witness->lambda, 0.0);
      EXPECT_LT(rep.witness->lambda, 1.0);
    }
  }
  EXPECT_GT(found, 0);
}

TEST(ConvexityAlongTest, AffineInvariance) {
  Sampler rng(6);
  for (int i = 0; i < 60; ++i) {
    const auto g = connect(rng.point_in_box(1, 2.0), rng.point_in_box(1, 2.0)).front();
    for (const auto& u : {t_coord_field(), cc_dist_origin_field(), constant_field(3.0)}) {
      const auto v = affine(u, 2.5, -7.0);
      EXPECT_EQ(convexity_along(u, g, 24).verdict, convexity_along(v, g, 24).verdict);
    }
  }
}

TEST(ScanTest, ConstantsStayConvex) {
  for (double k : {0.0, 5.0}) {
    const auto rep = scan_for_witness(constant_field(k), 300, 3, {2, 16, 2.0});
    EXPECT_EQ(rep.verdict, Verdict::ConvexOnSamples);
    EXPECT_EQ(rep.geodesics_tested, 300u);
    EXPECT_FALSE(rep.trial.has_value());
  }
  EXPECT_THROW(scan_for_witness(constant_field(0), 0, 1), DomainError);
}

TEST(ScanTest, Seed7Fixtures) {
  const Arc arc = seed7_arc();

  const auto t_rep = scan_for_witness(t_coord_field(), 100, 7);
  ASSERT_EQ(t_rep.verdict, Verdict::Violation);
  EXPECT_EQ(*t_rep.trial, 0u);
  const auto& tw = *t_rep.witness;
  const auto& found = std::get<Arc>(tw.geodesic);
  EXPECT_LE(coord_distance(found.base, arc.base), 1e-15);
  EXPECT_NEAR(std::abs(found.w[0] - arc.w[0]), 0.0, 1e-15);
  EXPECT_EQ(found.chirality, -1);
  EXPECT_NEAR(found.s_end, arc.s_end, 1e-14);
  EXPECT_EQ(tw.s1, 0.0);
  EXPECT_NEAR(tw.s2, 0.7182160263586946, 1e-13);
  EXPECT_NEAR(tw.lhs, -0.40842078383713515, 1e-12);
  EXPECT_NEAR(tw.rhs, -0.40847458100771283, 1e-12);

  const auto c_rep = scan_for_witness(cc_dist_origin_field(), 100, 7);
  ASSERT_EQ(c_rep.verdict, Verdict::Violation);
  EXPECT_EQ(*c_rep.trial, 0u);
  EXPECT_NEAR(c_rep.witness->s1, 1.2927888474456501, 1e-13);
  EXPECT_NEAR(c_rep.witness->s2, 2.262380483029888, 1e-13);
  EXPECT_NEAR(c_rep.witness->lhs, 1.3552650792817509, 1e-9);
  EXPECT_NEAR(c_rep.witness->rhs, 1.3552336644976084, 1e-9);
}

TEST(ScanTest, FrozenWitnessStillViolates) {
  // Replays the frozen witnesses against the frozen arc, independent of the scan.
  const GeodesicArc g = seed7_arc();
  const ConvexityWitness tw{g, 0.0, 0.7182160263586946, 2.0 / 20.0, 0.0, 0.0};
  const auto [tl, tr] = replay(t_coord_field(), tw);
  EXPECT_GT(tl, tr + kConvexitySlack);

  const double h = seed7_arc().s_end / 63.0;
  const ConvexityWitness cw{g, 36 * h, 63 * h, 1.0 / 27.0, 0.0, 0.0};
  const auto [cl, cr] = replay(cc_dist_origin_field(), cw);
  EXPECT_GT(cl, cr + kConvexitySlack);
}

TEST(ScanTest, DeterministicAndDimensionAware) {
  const auto a = scan_for_witness(cc_dist_origin_field(), 100, 11, {2, 64, 2.0});
  const auto b = scan_for_witness(cc_dist_origin_field(), 100, 11, {2, 64, 2.0});
  ASSERT_EQ(a.verdict, Verdict::Violation);
  EXPECT_EQ(a.trial, b.trial);
  EXPECT_EQ(a.witness->s1, b.witness->s1);
  EXPECT_EQ(a.witness->lhs, b.witness->lhs);
  EXPECT_EQ(dim(a.witness->geodesic), 2u);
}

TEST(Example1Test, ConvexAlongGeodesicsInsideL) {
  const auto u = example1_indicator();
  // The straight geodesic through the origin inside L.
  const auto through_origin = connect(h1(-1.5, -1.5, 0), h1(2, 2, 0)).front();
  ASSERT_TRUE(std::holds_alternative<Segment>(through_origin));
  EXPECT_EQ(convexity_along(u, through_origin).verdict, Verdict::ConvexOnSamples);

  Sampler rng(50);
  for (int i = 0; i < 50; ++i) {
    const double a = rng.uniform(-2.0, 2.0);
    const double b = rng.uniform(-2.0, 2.0);
    const auto g = connect(h1(a, a, 0), h1(b, b, 0)).front();
    const Polyline line = sample_arc(g, 64);
    for (const HPoint& p : line.points()) EXPECT_EQ(u(p), 0.0);
    EXPECT_EQ(convexity_along(u, g).verdict, Verdict::ConvexOnSamples);
  }
}

TEST(Example1Test, SegmentLeavingLViolates) {
  // u o gamma is 0 at s = 0 and 1 on (0, 1]: 1 > lambda * 0 + (1 - lambda) * 1.
  const auto u = example1_indicator();
  const auto g = connect(h1(0, 0, 0), h1(1, 0, 0)).front();
  ASSERT_TRUE(std::holds_alternative<Segment>(g));
  const auto rep = convexity_along(u, g, 8);
  ASSERT_EQ(rep.verdict, Verdict::Violation);
  EXPECT_EQ(rep.witness->s1, 0.0);
  EXPECT_EQ(rep.witness->lhs, 1.0);
  EXPECT_LT(rep.witness->rhs, 1.0);
}

TEST(SublevelTest, ConstantHasNoExits) {
  const auto rep = sublevel_probe(constant_field(2.0), h1(0, 0, 0), 5, 1, {16, 2.0, 10, {}});
  EXPECT_EQ(rep.pairs_tested, 0u);
  EXPECT_EQ(rep.pairs_skipped, 5u);
  EXPECT_EQ(rep.exit_events, 0u);
}

TEST(SublevelTest, HeightExitsAboveLevel) {
  const auto rep = sublevel_probe(t_coord_field(), h1(0, 0, 1), 50, 7);
  EXPECT_EQ(rep.level, 1.0);
  EXPECT_EQ(rep.pairs_tested, 50u);
  EXPECT_EQ(rep.exit_events, 4u);
  ASSERT_TRUE(rep.first_exit.has_value());
  EXPECT_LE(coord_distance(rep.first_exit->a,
                           h1(-1.0787464364114392, -1.7884248104029679, -0.25177843121967847)),
            1e-15);
  EXPECT_LE(coord_distance(rep.first_exit->b,
                           h1(0.9570845241321484, -0.5498382240582833, 0.4629028206638819)),
            1e-15);
}

TEST(SublevelTest, FrozenExitPair) {
  const HPoint a = h1(-1.0787464364114392, -1.7884248104029679, -0.25177843121967847);
  const HPoint b = h1(0.9570845241321484, -0.5498382240582833, 0.4629028206638819);
  EXPECT_LT(a.t(), 1.0);
  EXPECT_LT(b.t(), 1.0);
  const auto g = connect(a, b).front();
  const HPoint p = eval_arc(g, 0.58621310948762961);
  EXPECT_NEAR(p.t(), 1.0255114792031701, 1e-9);
  EXPECT_GT(p.t(), 1.0);
}

TEST(SublevelTest, Example1SublevelIsL) {
  // p0 off L: S = L, and pairs in L are joined inside L.
  ProbeOptions opt;
  opt.candidate = [](Sampler& rng) {
    const double a = rng.uniform(-2.0, 2.0);
    return h1(a, a, 0.0);
  };
  const auto rep = sublevel_probe(example1_indicator(), h1(1, 0, 0), 50, 9, opt);
  EXPECT_EQ(rep.level, 1.0);
  EXPECT_EQ(rep.pairs_tested, 50u);
  EXPECT_EQ(rep.exit_events, 0u);
}

}  // namespace
}  // namespace heis
