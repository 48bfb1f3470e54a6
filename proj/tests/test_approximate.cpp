#include <gtest/gtest.h>

#include <random>

#include "certicurve/errors.hpp"
#include "test_support.hpp"

using namespace certicurve;
using certicurve::testing::load_curve;
using certicurve::testing::oracles;
using certicurve::testing::polynomial_curve;
using certicurve::testing::q;
using certicurve::testing::random_bezier;
using certicurve::testing::twisted_cubic;

namespace {

QuasiCubicSegment bezier_segment(const RationalCubicBezier& b) {
  return make_segment(std::make_shared<const RationalCurve>(b.to_curve()), 0, 1);
}

// (t, t^2, t^3) on [-1, 1] is symmetric under the half-turn about the y axis.
QuasiCubicSegment symmetric_segment() { return make_segment(twisted_cubic(-1, 1), -1, 1); }

double parallelism(const Vec3d& a, const Vec3d& b) { return norm(cross(normalized(a), normalized(b))); }

void expect_parent_contains(const Tetrahedron& parent, const Tetrahedron& child) {
  for (const auto& v : child.v)
    for (double x : parent.barycentric(to_double(v))) EXPECT_GE(x, -1e-9);
}

}  // namespace

TEST(AssociatedCubic, TwistedCubicControlPoints) {
  auto cub = associated_cubic(make_segment(twisted_cubic(), 0, 1));
  EXPECT_EQ(cub.tet.v[0], Vec3q(0, 0, 0));
  EXPECT_EQ(cub.tet.v[1], Vec3q(Rational(1, 3), 0, 0));
  EXPECT_EQ(cub.tet.v[2], Vec3q(Rational(2, 3), Rational(1, 3), 0));
  EXPECT_EQ(cub.tet.v[3], Vec3q(1, 1, 1));
}

TEST(AssociatedCubic, HermiteDataForAnyWeights) {
  auto seg = make_segment(load_curve("r3"), Rational(1, 10), Rational(3, 10));
  auto cub = associated_cubic(seg);
  for (auto [w1, w2] : {std::pair{Rational(1), Rational(1)}, {Rational(1, 7), Rational(9)}, {Rational(4), Rational(2, 3)}}) {
    auto b = cub.with_weights(w1, w2);
    EXPECT_LT(parallelism(b.derivative(0.0), seg.start.alpha_plus), 1e-10);
    EXPECT_GT(dot(b.derivative(0.0), seg.start.alpha_plus), 0);
    EXPECT_LT(parallelism(b.derivative(1.0), seg.end.alpha_minus), 1e-10);
    // osculating plane at s = 1 is spanned by p1, p2, p3
    const auto& p = b.points();
    EXPECT_EQ(seg.end.osc_plane_minus.side(p[1]), 0);
    EXPECT_EQ(seg.end.osc_plane_minus.side(p[2]), 0);
    EXPECT_EQ(seg.end.osc_plane_minus.side(p[3]), 0);
    EXPECT_EQ(seg.start.osc_plane_plus.side(p[2]), 0);
  }
}

TEST(ShoulderSegment, BezierWithUnitWeights) {
  std::mt19937 rng(3);
  auto b = random_bezier(rng, true);
  auto sp = shoulder_point_segment(bezier_segment(b));
  EXPECT_TRUE(sp.exact);
  EXPECT_EQ(sp.param, Rational(1, 2));
  EXPECT_EQ(sp.s, b.eval(Rational(1, 2)));
}

TEST(ShoulderSegment, TwistedCubicInsideTriangle) {
  auto seg = make_segment(twisted_cubic(), 0, 1);
  auto sp = shoulder_point_segment(seg);
  EXPECT_GT(sp.param, 0);
  EXPECT_LT(sp.param, 1);
  EXPECT_GT(sp.lambda1, 0);
  EXPECT_GT(sp.lambda2, 0);
  EXPECT_LT(sp.lambda1 + sp.lambda2, 1);
  const auto& v = seg.tet.v;
  auto lam = triangle_coordinates(v[1], v[2], (v[0] + v[3]) / Rational(2), sp.s);
  EXPECT_EQ(lam[0], sp.lambda1);
  EXPECT_EQ(lam[1], sp.lambda2);
  EXPECT_LT(norm(to_double(sp.s) - seg.curve->point(sp.param.get_d())), 1e-12);
}

TEST(ShoulderSegment, SymmetricSegmentAtCentre) {
  auto sp = shoulder_point_segment(symmetric_segment());
  EXPECT_EQ(sp.param, 0);
  EXPECT_EQ(sp.lambda1, sp.lambda2);
}

TEST(SolveWeights, RecoversBezierWeightsExactly) {
  std::mt19937 rng(4);
  for (int k = 0; k < 10; ++k) {
    auto b = random_bezier(rng);
    auto seg = bezier_segment(b);
    auto sol = solve_weights(seg, shoulder_point_segment(seg));
    EXPECT_EQ(sol.w1, b.w1());
    EXPECT_EQ(sol.w2, b.w2());
    EXPECT_EQ(sol.D, 0);
  }
}

TEST(SolveWeights, DegreeSixExample) {
  const auto& o = oracles()["degree_six"];
  auto c = load_curve("degree_six");
  auto seg = make_segment(c, c->lo(), c->hi());
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(seg.tet.v[i][j], q(o["tetrahedron"][i][j].get<std::string>()));
  auto sp = shoulder_point_segment(seg);
  EXPECT_EQ(sp.param, q(o["shoulder_param"].get<std::string>()));
  auto sol = solve_weights(seg, sp);
  EXPECT_EQ(sol.w1, Rational(5, 11));
  EXPECT_EQ(sol.w2, Rational(16, 31));
  EXPECT_EQ(sol.method, WeightMethod::ClosedForm);
}

TEST(SolveWeights, DegreeSixErrorImproves) {
  auto c = load_curve("degree_six");
  auto seg = make_segment(c, c->lo(), c->hi());
  auto cub = associated_cubic(seg);
  double plain = error_functional(implicit_ideal(cub.with_weights(1, 1)), *c, c->lo(), c->hi()).max_error;
  auto piece = fit_segment(seg);
  EXPECT_LT(piece.error.max_error, plain);
  EXPECT_EQ(piece.bezier.w1(), Rational(5, 11));
  EXPECT_NEAR(plain, 0.29, 0.03);
  EXPECT_NEAR(piece.error.max_error, 0.04, 0.015);
}

TEST(SolveWeights, SymmetricSegmentEqualWeights) {
  auto seg = symmetric_segment();
  auto sol = solve_weights(seg, shoulder_point_segment(seg));
  EXPECT_EQ(sol.w1, sol.w2);
  EXPECT_GT(sol.w1, 0);
}

TEST(SolveWeights, TargetOutsideReachFallsBack) {
  auto tet = make_segment(twisted_cubic(), 0, 1).tet;
  // beyond the triangle no positive weights reach the target
  auto sol = solve_weights(tet, Vec3q(5, 5, 5));
  EXPECT_GT(sol.w1, 0);
  EXPECT_GT(sol.w2, 0);
  EXPECT_GE(sol.D, 0);
}

TEST(Approximate, CubicInputIsOnePiece) {
  std::mt19937 rng(6);
  auto b = random_bezier(rng);
  auto res = approximate_segment(bezier_segment(b), {});
  ASSERT_EQ(res.pieces.size(), 1u);
  EXPECT_EQ(res.pieces[0].bezier, b);
  EXPECT_LT(res.max_error(), 1e-12);
}

TEST(Approximate, TwistedCubicMeetsTightTolerance) {
  ApproximationOptions opts;
  opts.delta = 1e-6;
  auto res = approximate_segment(make_segment(twisted_cubic(), 0, 1), opts);
  EXPECT_LT(res.max_error(), 1e-6);
  EXPECT_EQ(res.pieces.front().segment.t0, 0);
  EXPECT_EQ(res.pieces.back().segment.t1, 1);
}

TEST(Approximate, NonConvergentPastDepthLimit) {
  auto c = load_curve("r3");
  ApproximationOptions opts;
  opts.delta = 1e-12;
  opts.max_depth = 1;
  EXPECT_THROW(approximate_segment(make_segment(c, 0, Rational(11, 37)), opts), NonConvergent);
}

TEST(Approximate, ArcLengthStrategy) {
  auto c = load_curve("r3");
  ApproximationOptions opts;
  opts.delta = 1e-4;
  opts.strategy = SplitStrategy::ArcLengthMidpoint;
  auto res = approximate_segment(make_segment(c, 0, Rational(11, 37)), opts);
  EXPECT_LT(res.max_error(), 1e-4);
  EXPECT_EQ(res.shoulder_splits, 0u);
}

TEST(ArcLength, TwistedCubicMidpointMatchesQuadrature) {
  const auto& o = oracles()["arc_midpoint_twisted_cubic"];
  auto c = twisted_cubic();
  EXPECT_NEAR(arc_length(*c, 0, 1), o["length"].get<double>(), 1e-9);
  EXPECT_NEAR(arc_length_midpoint(*c, 0, 1).get_d(), o["t_mid"].get<double>(), 1e-6);
}

// A constant-speed rational space curve would be a line, which the curve type rejects.
TEST(ArcLength, SymmetricSpeed) {
  auto c = polynomial_curve(UPoly{0, 1}, UPoly{0, 0, 1}, UPoly{0, 0, 0, 1}, -1, 1);
  EXPECT_NEAR(arc_length_midpoint(*c, -1, 1).get_d(), 0, 1e-9);
  // speed is even in t about 0, so any symmetric interval is bisected at its centre
  EXPECT_NEAR(arc_length_midpoint(*c, Rational(-1, 3), Rational(1, 3)).get_d(), 0, 1e-9);
}

TEST(ApproximateProperty, PiecesInterpolateAndShareEndpoints) {
  auto c = load_curve("r3");
  ApproximationOptions opts;
  opts.delta = 1e-4;
  auto res = approximate_segment(make_segment(c, 0, Rational(11, 37)), opts);
  ASSERT_GT(res.pieces.size(), 1u);
  for (std::size_t i = 0; i < res.pieces.size(); ++i) {
    const auto& p = res.pieces[i];
    EXPECT_EQ(p.bezier.point(0), c->point(p.segment.t0));
    EXPECT_EQ(p.bezier.point(3), c->point(p.segment.t1));
    EXPECT_LT(parallelism(p.bezier.derivative(0.0), p.segment.start.alpha_plus), 1e-10);
    EXPECT_LT(parallelism(p.bezier.derivative(1.0), p.segment.end.alpha_minus), 1e-10);
    EXPECT_LE(p.error.max_error, opts.delta);
    if (i > 0) EXPECT_EQ(res.pieces[i - 1].segment.t1, p.segment.t0);
  }
}

TEST(ApproximateProperty, ChildrenNestInParent) {
  auto c = load_curve("r3");
  auto parent = make_segment(c, 0, Rational(11, 37));
  ApproximationOptions opts;
  opts.delta = 1e-5;
  auto res = approximate_segment(parent, opts);
  for (const auto& p : res.pieces) expect_parent_contains(parent.tet, p.segment.tet);
}

TEST(ApproximateProperty, ErrorDoesNotGrowWithDepth) {
  auto c = load_curve("r3");
  auto seg = make_segment(c, 0, Rational(11, 37));
  double prev = 1e300;
  for (double delta : {1e-2, 1e-3, 1e-4, 1e-5}) {
    ApproximationOptions opts;
    opts.delta = delta;
    double e = approximate_segment(seg, opts).max_error();
    EXPECT_LE(e, prev);
    prev = e;
  }
}

TEST(ApproximateProperty, RandomBeziersRecovered) {
  std::mt19937 rng(44);
  for (int k = 0; k < 10; ++k) {
    auto b = random_bezier(rng);
    auto piece = fit_segment(bezier_segment(b));
    EXPECT_EQ(piece.bezier, b);
    EXPECT_LT(piece.error.max_error, 1e-10);
  }
}
