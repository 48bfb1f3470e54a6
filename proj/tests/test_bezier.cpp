#include <gtest/gtest.h>

#include <random>

#include "certicurve/errors.hpp"
#include "test_support.hpp"

using namespace certicurve;
using certicurve::testing::oracles;
using certicurve::testing::q;
using certicurve::testing::random_bezier;

namespace {

std::array<Vec3q, 4> example_points() { return {Vec3q(0, 0, 0), Vec3q(1, 0, 0), Vec3q(1, 1, 1), Vec3q(0, 1, 0)}; }

// (t, t^2, t^3) on [-1, 1]; the half-turn about the y axis swaps the ends.
std::array<Vec3q, 4> symmetric_points() {
  return {Vec3q(-1, 1, -1), Vec3q(Rational(-1, 3), Rational(-1, 3), 1), Vec3q(Rational(1, 3), Rational(-1, 3), -1),
          Vec3q(1, 1, 1)};
}

Vec3q vq(const nlohmann::json& a) {
  return {q(a[0].get<std::string>()), q(a[1].get<std::string>()), q(a[2].get<std::string>())};
}

double face_distance(const RationalCubicBezier& b, Face f, double s) {
  const auto& p = b.points();
  const Vec3q& other = f == Face::P1 ? p[2] : p[1];
  Vec3d n = unit(cross(other - p[0], p[3] - p[0]));
  return std::abs(dot(n, b.eval(s) - to_double(p[0])));
}

}  // namespace

TEST(Bezier, EndpointInterpolation) {
  RationalCubicBezier b(example_points(), Rational(2), Rational(1, 3));
  EXPECT_EQ(b.eval(Rational(0)), b.point(0));
  EXPECT_EQ(b.eval(Rational(1)), b.point(3));
}

TEST(Bezier, EqualWeightMidpoint) {
  RationalCubicBezier b(example_points(), 1, 1);
  EXPECT_EQ(b.eval(Rational(1, 2)), Vec3q(Rational(3, 4), Rational(1, 2), Rational(3, 8)));
}

TEST(Bezier, WeightedMidpointMatchesOracle) {
  RationalCubicBezier b(example_points(), 2, 1);
  EXPECT_EQ(b.eval(Rational(1, 2)), vq(oracles()["bezier_eval"]["w1_2_half"]));
}

TEST(Bezier, RejectsNonPositiveWeights) {
  EXPECT_THROW(RationalCubicBezier(example_points(), 0, 1), DomainError);
  EXPECT_THROW(RationalCubicBezier(example_points(), 1, -2), DomainError);
}

TEST(Bezier, FloatAndExactEvaluationAgree) {
  RationalCubicBezier b(example_points(), Rational(5, 11), Rational(16, 31));
  for (int i = 0; i <= 20; ++i) {
    Rational s(i, 20);
    EXPECT_LT(norm(b.eval(s.get_d()) - to_double(b.eval(s))), 1e-15);
  }
}

TEST(Bezier, ReversedTraversal) {
  RationalCubicBezier b(example_points(), Rational(5, 11), Rational(16, 31));
  auto r = b.reversed();
  for (int i = 0; i <= 10; ++i) {
    Rational s(i, 10);
    s.canonicalize();
    EXPECT_EQ(r.eval(s), b.eval(1 - s));
  }
}

TEST(Split, SplitPointInterpolation) {
  RationalCubicBezier b(example_points(), 1, 1);
  auto [l, r] = decasteljau_split(b, Rational(1, 2));
  EXPECT_EQ(l.point(3), b.eval(Rational(1, 2)));
  EXPECT_EQ(r.point(0), b.eval(Rational(1, 2)));
}

TEST(Split, PiecesReproduceCurve) {
  RationalCubicBezier b(example_points(), Rational(5, 11), Rational(16, 31));
  const Rational s(3, 7);
  auto [l, r] = decasteljau_split(b, s);
  for (int i = 0; i <= 100; ++i) {
    double u = i / 100.0, sd = s.get_d();
    EXPECT_LT(norm(l.eval(u) - b.eval(sd * u)), 1e-12);
    EXPECT_LT(norm(r.eval(u) - b.eval(sd + (1 - sd) * u)), 1e-12);
  }
}

TEST(Split, SubTetrahedraInsideParent) {
  std::mt19937 rng(21);
  for (int k = 0; k < 20; ++k) {
    auto b = random_bezier(rng);
    Rational s(1 + k, 22);
    s.canonicalize();
    auto [l, r] = decasteljau_split(b, s);
    for (const auto* piece : {&l, &r})
      for (const auto& v : piece->points()) EXPECT_TRUE(b.control_tetrahedron().contains(v));
  }
}

TEST(Shoulder, EqualWeights) {
  auto l = shoulder_lambdas(1, 1);
  EXPECT_EQ(l[0], Rational(3, 8));
  EXPECT_EQ(l[1], Rational(3, 8));
}

TEST(Shoulder, ConsistencyIdentity) {
  const Rational w1(5, 11), w2(16, 31);
  RationalCubicBezier b(example_points(), w1, w2);
  auto sp = shoulder_point_bezier(b);
  EXPECT_EQ(sp.param, Rational(1, 2));
  EXPECT_EQ(sp.lambda1, (Rational(15, 11)) / (2 + Rational(15, 11) + Rational(48, 31)));
  EXPECT_EQ(sp.lambda2, (Rational(48, 31)) / (2 + Rational(15, 11) + Rational(48, 31)));
  const auto& p = b.points();
  Vec3q pm = (p[0] + p[3]) / Rational(2);
  EXPECT_EQ(sp.s, sp.lambda1 * p[1] + sp.lambda2 * p[2] + (1 - sp.lambda1 - sp.lambda2) * pm);
  EXPECT_EQ(sp.s, b.eval(Rational(1, 2)));
}

TEST(Shoulder, HeavyWeightPullsTowardControlPoint) {
  auto p = example_points();
  RationalCubicBezier heavy(p, 1000000, 1), plain(p, 1, 1);
  Vec3d p1 = to_double(p[1]);
  EXPECT_LT(norm(to_double(shoulder_point_bezier(heavy).s) - p1), norm(to_double(shoulder_point_bezier(plain).s) - p1));
}

TEST(Shoulder, NonStandardFormRejected) {
  RationalCubicBezier b(example_points(), {2, 1, 1, 1});
  EXPECT_THROW(shoulder_point_bezier(b), DomainError);
}

TEST(ShoulderProperty, WeightRecovery) {
  std::mt19937 rng(8);
  for (int k = 0; k < 100; ++k) {
    auto b = random_bezier(rng);
    auto sp = shoulder_point_bezier(b);
    const auto& p = b.points();
    auto lam = triangle_coordinates(p[1], p[2], (p[0] + p[3]) / Rational(2), sp.s);
    EXPECT_EQ(lam[0], sp.lambda1);
    EXPECT_EQ(lam[1], sp.lambda2);
    auto w = weights_from_lambdas(lam[0], lam[1]);
    EXPECT_EQ(w[0], b.w1());
    EXPECT_EQ(w[1], b.w2());
  }
  EXPECT_THROW(weights_from_lambdas(Rational(1, 2), Rational(1, 2)), DomainError);
  EXPECT_THROW(weights_from_lambdas(Rational(0), Rational(1, 2)), DomainError);
}

TEST(Parallel, ClosedFormsAtUnitWeight) {
  auto r1 = parallel_constraint_root(1, 1, Rational(1, 1000000));
  auto r2 = parallel_constraint_root(2, 1, Rational(1, 1000000));
  EXPECT_TRUE(r1.exact);
  EXPECT_TRUE(r2.exact);
  EXPECT_EQ(r1.param, Rational(2, 3));
  EXPECT_EQ(r2.param, Rational(1, 3));
  EXPECT_EQ(parallel_constraint(1, 1), UPoly({-2, 3}));
}

TEST(Parallel, GeometricRootsMatchOracle) {
  for (const auto& c : oracles()["parallel"]) {
    RationalCubicBezier b(example_points(), q(c["w1"].get<std::string>()), q(c["w2"].get<std::string>()));
    Face f = c["face"] == "p0p2p3" ? Face::P1 : Face::P2;
    auto pp = parallel_point(b, f, q("1/1000000000000"));
    EXPECT_NEAR(pp.param.get_d(), c["roots"][0].get<double>(), 1e-11);
    if (!c["exact"].empty()) {
      EXPECT_TRUE(pp.exact);
      EXPECT_EQ(pp.param, q(c["exact"][0].get<std::string>()));
    }
    // the closed form in w1 describes face p0 p1 p3, the one in w2 face p0 p2 p3
    auto cf = f == Face::P2 ? parallel_constraint_root(1, b.w1(), q("1/1000000000000"))
                            : parallel_constraint_root(2, b.w2(), q("1/1000000000000"));
    EXPECT_NEAR(cf.param.get_d(), pp.param.get_d(), 1e-11);
  }
}

TEST(Parallel, PointIsFarthestFromFace) {
  std::mt19937 rng(13);
  for (int k = 0; k < 10; ++k) {
    auto b = random_bezier(rng);
    for (Face f : {Face::P1, Face::P2}) {
      auto pp = parallel_point(b, f);
      double best = face_distance(b, f, pp.param.get_d());
      for (int i = 0; i <= 1000; ++i) EXPECT_LE(face_distance(b, f, i / 1000.0), best + 1e-12);
    }
  }
}

TEST(OsculatingRatios, StrictlyMonotoneSweep) {
  RationalCubicBezier b(example_points(), Rational(5, 11), Rational(16, 31));
  std::array<Rational, 3> prev = mono_osculating_ratios(b, Rational(1, 10));
  int dir[3];
  for (std::size_t j = 0; j < 3; ++j) dir[j] = 0;
  for (int i = 2; i <= 9; ++i) {
    Rational t(i, 10);
    t.canonicalize();
    auto k = mono_osculating_ratios(b, t);
    for (std::size_t j = 0; j < 3; ++j) {
      EXPECT_GT(k[j], 0);
      EXPECT_LT(k[j], 1);
      int d = sign(k[j] - prev[j]);
      EXPECT_NE(d, 0);
      if (dir[j] == 0) dir[j] = d;
      EXPECT_EQ(d, dir[j]);
    }
    prev = k;
  }
}

TEST(OsculatingRatios, SymmetricCurveAtMidpoint) {
  RationalCubicBezier b(symmetric_points(), Rational(3, 2), Rational(3, 2));
  auto k = mono_osculating_ratios(b, Rational(1, 2));
  EXPECT_EQ(k[0] + k[2], 1);
  EXPECT_EQ(k[1], Rational(1, 2));
}

TEST(OsculatingRatios, NearStartPlaneApproachesStartFace) {
  // the osculating plane at 0 contains p0 p1 p2, so the ratio on p2 p1 tends to 0 or 1
  RationalCubicBezier b(example_points(), Rational(5, 11), Rational(16, 31));
  auto far = mono_osculating_ratios(b, Rational(1, 10));
  auto near = mono_osculating_ratios(b, Rational(1, 100000));
  double e_near = std::min(near[1].get_d(), 1 - near[1].get_d());
  double e_far = std::min(far[1].get_d(), 1 - far[1].get_d());
  EXPECT_LT(e_near, e_far);
  EXPECT_LT(e_near, 1e-3);
}

TEST(BezierProperty, SamplesInsideControlTetrahedron) {
  std::mt19937 rng(31);
  for (int k = 0; k < 10; ++k) {
    auto b = random_bezier(rng);
    auto t = b.control_tetrahedron();
    for (int i = 0; i <= 1000; ++i)
      for (double x : t.barycentric(b.eval(i / 1000.0))) ASSERT_GE(x, -1e-12);
  }
}

TEST(BezierProperty, CurvatureAndTorsionNonzero) {
  std::mt19937 rng(37);
  for (int k = 0; k < 10; ++k) {
    auto b = random_bezier(rng);
    RationalCurve c = b.to_curve();
    for (int i = 1; i < 1000; ++i) {
      double s = i / 1000.0;
      ASSERT_GT(c.profile().kappa(s), 0);
      ASSERT_NE(c.profile().tau(s), 0);
    }
    EXPECT_EQ(count_roots_open(c.torsion_factor(), 0, 1), 0u);
  }
}
