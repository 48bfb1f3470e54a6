#include <gtest/gtest.h>

#include <random>

#include "certicurve/errors.hpp"
#include "test_support.hpp"

using namespace certicurve;
using certicurve::testing::load_curve;
using certicurve::testing::oracles;
using certicurve::testing::polynomial_curve;
using certicurve::testing::twisted_cubic;

namespace {

Vec3d vec(const nlohmann::json& a) { return {a[0].get<double>(), a[1].get<double>(), a[2].get<double>()}; }

double direct_kappa(const RationalCurve& c, const Rational& t) {
  Vec3d d1 = to_double(evaluate(c, t, 1)), d2 = to_double(evaluate(c, t, 2));
  return norm(cross(d1, d2)) / std::pow(norm(d1), 3);
}

double direct_tau(const RationalCurve& c, const Rational& t) {
  Vec3d d1 = to_double(evaluate(c, t, 1)), d2 = to_double(evaluate(c, t, 2)), d3 = to_double(evaluate(c, t, 3));
  Vec3d x = cross(d1, d2);
  return dot(x, d3) / dot(x, x);
}

Vec3d classical_binormal(const RationalCurve& c, const Rational& t) {
  return normalized(cross(to_double(evaluate(c, t, 1)), to_double(evaluate(c, t, 2))));
}

}  // namespace

TEST(Curve, R1Points) {
  auto c = load_curve("r1");
  EXPECT_EQ(c->point(Rational(0)), Vec3q(1, 0, 0));
  EXPECT_EQ(c->point(Rational(1)), Vec3q(0, 0, 0));
  EXPECT_EQ(c->point(Rational(-1)), Vec3q(0, 0, 0));
}

TEST(Curve, TwistedCubicSecondDerivative) {
  auto c = twisted_cubic();
  EXPECT_EQ(evaluate(*c, Rational(0), 2), Vec3q(0, 2, 0));
  EXPECT_EQ(evaluate(*c, Rational(1), 3), Vec3q(0, 0, 6));
}

TEST(Curve, RejectsPlanarAndStraightInput) {
  EXPECT_THROW(polynomial_curve(UPoly{0, 1}, UPoly{0, 0, 1}, UPoly{}, 0, 1), UnsupportedCurve);
  EXPECT_THROW(polynomial_curve(UPoly{0, 1}, UPoly{0, 2}, UPoly{1, 3}, 0, 1), UnsupportedCurve);
  EXPECT_THROW(curvature_torsion_profile(RationalFn(UPoly{0, 1}), RationalFn(UPoly{0, 0, 1}), RationalFn(UPoly{})),
               UnsupportedCurve);
}

TEST(Curve, RejectsVanishingDenominatorAndEmptyDomain) {
  RationalFn inv(UPoly{1}, UPoly{0, 1});
  EXPECT_THROW(RationalCurve(inv, RationalFn(UPoly{0, 0, 1}), RationalFn(UPoly{0, 0, 0, 1}), -1, 1), DomainError);
  EXPECT_THROW(twisted_cubic(1, 1), DomainError);
}

TEST(Curve, TwistedCubicCurvatureAndTorsion) {
  auto c = twisted_cubic();
  const auto& prof = c->profile();
  EXPECT_NEAR(prof.kappa(0.0), 2.0, 1e-14);
  EXPECT_NEAR(prof.tau(0.0), 3.0, 1e-14);
  // the torsion numerator is a nonzero constant
  EXPECT_TRUE(c->torsion_factor().is_constant());
  EXPECT_FALSE(c->torsion_factor().is_zero());
}

TEST(Curve, CurvatureTorsionMatchOracle) {
  for (const char* name : {"r1", "twisted_cubic"}) {
    auto c = load_curve(name);
    for (const auto& e : oracles()["kappa_tau"][name]) {
      double t = e["t"].get<double>();
      EXPECT_NEAR(c->profile().kappa(t), e["kappa"].get<double>(), 1e-10 * std::max(1.0, e["kappa"].get<double>()));
      EXPECT_NEAR(c->profile().tau(t), e["tau"].get<double>(), 1e-10 * std::max(1.0, std::abs(e["tau"].get<double>())));
    }
  }
}

TEST(Frenet, TwistedCubicAtZero) {
  auto f = frenet(*twisted_cubic(), 0);
  EXPECT_NEAR(norm(f.alpha_plus - Vec3d(1, 0, 0)), 0, 1e-15);
  EXPECT_NEAR(norm(f.beta_plus - Vec3d(0, 1, 0)), 0, 1e-15);
  EXPECT_NEAR(norm(f.gamma_plus - Vec3d(0, 0, 1)), 0, 1e-15);
  EXPECT_EQ(f.osc_plane_plus.side(Vec3q(5, -3, 0)), 0);
  EXPECT_NE(f.osc_plane_plus.side(Vec3q(0, 0, 1)), 0);
}

TEST(Frenet, R2CuspOneSidedTangents) {
  auto c = load_curve("r2");
  auto f = frenet(*c, 1);
  const auto& o = oracles()["r2_tangents_at_1"];
  EXPECT_EQ(f.tangent_order, 1);
  EXPECT_NEAR(norm(f.alpha_minus - vec(o["minus"])), 0, 1e-12);
  EXPECT_NEAR(norm(f.alpha_plus - vec(o["plus"])), 0, 1e-12);
  EXPECT_NEAR(norm(f.alpha_minus + f.alpha_plus), 0, 1e-12);
}

TEST(Frenet, RegularPointsHaveEqualSides) {
  auto c = load_curve("r3");
  for (Rational t : {Rational(1, 10), Rational(1, 2), Rational(9, 10)}) {
    auto f = frenet(*c, t);
    EXPECT_EQ(f.tangent_order, 0);
    EXPECT_NEAR(norm(f.gamma_minus - f.gamma_plus), 0, 1e-15);
    EXPECT_NEAR(norm(f.alpha_minus - f.alpha_plus), 0, 1e-15);
  }
}

TEST(CurveProperty, ReparametrizationKeepsPoints) {
  auto c = load_curve("r2");
  RationalCurve u = c->reparametrized_to_unit();
  EXPECT_EQ(u.lo(), 0);
  EXPECT_EQ(u.hi(), 1);
  std::mt19937 rng(2);
  std::uniform_int_distribution<int> k(0, 997);
  for (int i = 0; i < 200; ++i) {
    Rational s(k(rng), 997);
    s.canonicalize();
    EXPECT_EQ(u.point(s), c->point(c->lo() + (c->hi() - c->lo()) * s));
  }
}

TEST(CurveProperty, FramesAreOrthonormalAndRightHanded) {
  std::mt19937 rng(7);
  for (const char* name : {"r1", "r2", "r3"}) {
    auto c = load_curve(name);
    std::uniform_int_distribution<int> k(1, 99999);
    for (int i = 0; i < 334; ++i) {
      Rational t = c->lo() + (c->hi() - c->lo()) * Rational(k(rng), 100000);
      auto f = frenet(*c, t);
      if (f.tangent_order > 0 || f.binormal_order > 0) continue;
      const Vec3d& a = f.alpha_plus;
      const Vec3d& b = f.beta_plus;
      const Vec3d& g = f.gamma_plus;
      ASSERT_NEAR(dot(a, a), 1, 1e-10);
      ASSERT_NEAR(dot(b, b), 1, 1e-10);
      ASSERT_NEAR(dot(g, g), 1, 1e-10);
      ASSERT_NEAR(dot(a, b), 0, 1e-10);
      ASSERT_NEAR(dot(a, g), 0, 1e-10);
      ASSERT_NEAR(dot(b, g), 0, 1e-10);
      ASSERT_NEAR(det3(a, b, g), 1, 1e-10);
    }
  }
}

TEST(CurveProperty, ProfileMatchesDirectFormulas) {
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> k(1, 99999);
  for (const char* name : {"r1", "r2", "r3"}) {
    auto c = load_curve(name);
    for (int i = 0; i < 334; ++i) {
      Rational t = c->lo() + (c->hi() - c->lo()) * Rational(k(rng), 100000);
      double td = t.get_d();
      double kd = direct_kappa(*c, t), tdir = direct_tau(*c, t);
      if (!std::isfinite(kd) || !std::isfinite(tdir)) continue;
      ASSERT_NEAR(c->profile().kappa(td), kd, 1e-8 * std::max(1.0, kd)) << name << " t=" << td;
      ASSERT_NEAR(c->profile().tau(td), tdir, 1e-8 * std::max(1.0, std::abs(tdir))) << name << " t=" << td;
    }
  }
}

TEST(CurveProperty, OneSidedBinormalLimitsConverge) {
  auto c = load_curve("r2");
  auto f = frenet(*c, 1);
  double prev_minus = 1e9, prev_plus = 1e9;
  for (Rational h : {Rational(1, 1000), Rational(1, 10000), Rational(1, 100000)}) {
    double em = norm(classical_binormal(*c, 1 - h) - f.gamma_minus);
    double ep = norm(classical_binormal(*c, 1 + h) - f.gamma_plus);
    EXPECT_LT(em, prev_minus);
    EXPECT_LT(ep, prev_plus);
    prev_minus = em;
    prev_plus = ep;
  }
  EXPECT_LT(prev_minus, 1e-3);
  EXPECT_LT(prev_plus, 1e-3);
}
