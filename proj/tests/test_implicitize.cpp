#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "certicurve/errors.hpp"
#include "test_support.hpp"

using namespace certicurve;
using certicurve::testing::random_bezier;

namespace {

// (t, t^2, t^3) on [0, 1]
RationalCubicBezier twisted_cubic_bezier() {
  return RationalCubicBezier({Vec3q(0, 0, 0), Vec3q(Rational(1, 3), 0, 0), Vec3q(Rational(2, 3), Rational(1, 3), 0),
                              Vec3q(1, 1, 1)},
                             1, 1);
}

MPoly quad(std::initializer_list<std::pair<std::array<int, 3>, int>> terms) {
  MPoly p(3);
  for (const auto& [e, c] : terms) p.add_to_coeff(e, Rational(c));
  return p;
}

std::vector<Rational> coeff_vector(const MPoly& p) {
  std::vector<Rational> v;
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; a + b <= 2; ++b)
      for (int c = 0; a + b + c <= 2; ++c) v.push_back(p.coeff(std::array<int, 3>{a, b, c}));
  return v;
}

std::size_t rank(std::vector<std::vector<Rational>> m) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c] / m[r][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    ++r;
  }
  return r;
}

RationalCubicBezier transformed(const RationalCubicBezier& b, const std::function<Vec3q(const Vec3q&)>& f) {
  std::array<Vec3q, 4> p;
  for (std::size_t i = 0; i < 4; ++i) p[i] = f(b.point(i));
  return RationalCubicBezier(p, b.weights());
}

// rotation by the 3-4-5 angle about z followed by the same about x
Vec3q rotate(const Vec3q& v) {
  const Rational c(3, 5), s(4, 5);
  Vec3q u(c * v[0] - s * v[1], s * v[0] + c * v[1], v[2]);
  return {u[0], c * u[1] - s * u[2], s * u[1] + c * u[2]};
}

Vec3q inverse_rotate(const Vec3q& v) {
  const Rational c(3, 5), s(4, 5);
  Vec3q u(v[0], c * v[1] + s * v[2], -s * v[1] + c * v[2]);
  return {c * u[0] + s * u[1], -s * u[0] + c * u[1], u[2]};
}

// q composed with an affine map given by the images of the origin and the unit vectors
MPoly pullback(const MPoly& q, const Vec3q& origin, const std::array<Vec3q, 3>& axes) {
  std::array<MPoly, 3> lin;
  for (std::size_t i = 0; i < 3; ++i) {
    lin[i] = MPoly::constant(3, origin[i]);
    for (std::size_t j = 0; j < 3; ++j) lin[i] += MPoly::variable(3, j) * (axes[j][i] - origin[i]);
  }
  MPoly out(3);
  q.for_each_term([&](std::span<const int> e, const Rational& c) {
    MPoly t = MPoly::constant(3, c);
    for (std::size_t i = 0; i < 3; ++i)
      for (int k = 0; k < e[i]; ++k) t = t * lin[i];
    out += t;
  });
  return out;
}

// the ideal moved by f, given its inverse
ImplicitIdeal moved(const ImplicitIdeal& id, const std::function<Vec3q(const Vec3q&)>& inv) {
  Vec3q o = inv(Vec3q(0, 0, 0));
  std::array<Vec3q, 3> ax = {inv(Vec3q(1, 0, 0)), inv(Vec3q(0, 1, 0)), inv(Vec3q(0, 0, 1))};
  ImplicitIdeal out;
  for (std::size_t i = 0; i < 3; ++i) out.q[i] = Quadric::from(pullback(id.q[i].exact, o, ax));
  return out;
}

}  // namespace

TEST(MuBasis, TwistedCubicPlanesFollowCurve) {
  auto b = twisted_cubic_bezier();
  auto planes = mu_basis_cubic(b);
  for (const auto& L : planes) {
    EXPECT_EQ(L.degree(), 1);
    EXPECT_TRUE(L.follows(b.numerators(), b.denominator()));
  }
  // independent at a generic parameter
  std::vector<std::vector<Rational>> m;
  for (const auto& L : planes) {
    std::vector<Rational> row;
    for (const auto& c : L.c) row.push_back(c.eval(Rational(2, 7)));
    m.push_back(row);
  }
  EXPECT_EQ(rank(m), 3u);
}

TEST(MuBasis, PlanarDataRejected) {
  RationalCubicBezier flat({Vec3q(0, 0, 0), Vec3q(1, 0, 0), Vec3q(1, 1, 0), Vec3q(0, 1, 0)}, 1, 2);
  EXPECT_THROW(mu_basis_cubic(flat), UnsupportedCurve);
}

TEST(ImplicitIdeal, TwistedCubicSpansClassicalQuadrics) {
  auto id = implicit_ideal(twisted_cubic_bezier());
  std::vector<std::vector<Rational>> classical = {
      coeff_vector(quad({{{2, 0, 0}, 1}, {{0, 1, 0}, -1}})),
      coeff_vector(quad({{{1, 1, 0}, 1}, {{0, 0, 1}, -1}})),
      coeff_vector(quad({{{0, 2, 0}, 1}, {{1, 0, 1}, -1}})),
  };
  EXPECT_EQ(rank(classical), 3u);
  std::vector<std::vector<Rational>> ours;
  for (const auto& q : id.q) ours.push_back(coeff_vector(q.exact));
  EXPECT_EQ(rank(ours), 3u);
  auto both = classical;
  both.insert(both.end(), ours.begin(), ours.end());
  EXPECT_EQ(rank(both), 3u);
}

TEST(ImplicitIdeal, OffCurvePointHasPositiveError) {
  auto id = implicit_ideal(twisted_cubic_bezier());
  EXPECT_GT(error_at(id, Vec3d(0.5, 0.5, 0.5)), 0.1);
  EXPECT_EQ(error_at(id, Vec3d(0.5, 0.25, 0.125)), 0);
}

TEST(ImplicitIdeal, FloatMirrorIsNormalised) {
  auto id = implicit_ideal(twisted_cubic_bezier());
  for (const auto& q : id.q) {
    double mx = 0;
    for (double c : q.c) mx = std::max(mx, std::abs(c));
    EXPECT_EQ(mx, 1);
  }
}

TEST(ImplicitIdeal, ErrorOfCurveAgainstItselfVanishes) {
  auto b = twisted_cubic_bezier();
  auto rep = error_functional(implicit_ideal(b), b.to_curve(), 0, 1);
  EXPECT_EQ(rep.m, 300);
  EXPECT_EQ(rep.samples.size(), 301u);
  EXPECT_LT(rep.max_error, 1e-14);
  EXPECT_FALSE(rep.flagged());
}

TEST(ImplicitIdeal, ErrorFunctionalArguments) {
  auto b = twisted_cubic_bezier();
  EXPECT_THROW(error_functional(implicit_ideal(b), b.to_curve(), 0, 1, 1), DomainError);
}

TEST(ImplicitizeProperty, IdealVanishesOnRandomBeziers) {
  std::mt19937 rng(5);
  for (int k = 0; k < 30; ++k) {
    auto b = random_bezier(rng);
    auto id = implicit_ideal(b);
    EXPECT_TRUE(vanishes_on(id, b));
    auto other = random_bezier(rng);
    EXPECT_FALSE(vanishes_on(id, other));
  }
}

TEST(ImplicitizeProperty, TranslationGivesIdenticalReport) {
  std::mt19937 rng(11);
  auto b = random_bezier(rng), c = random_bezier(rng);
  auto id = implicit_ideal(b);
  auto shift = [](const Vec3q& v) { return v + Vec3q(10, 10, 10); };
  auto back = [](const Vec3q& v) { return v - Vec3q(10, 10, 10); };
  auto r0 = error_functional(id, c.to_curve(), 0, 1);
  auto r1 = error_functional(moved(id, back), transformed(c, shift).to_curve(), 0, 1);
  ASSERT_EQ(r0.samples.size(), r1.samples.size());
  for (std::size_t i = 0; i < r0.samples.size(); ++i) EXPECT_NEAR(r1.samples[i].e, r0.samples[i].e, 1e-10);
  EXPECT_NEAR(r1.max_error, r0.max_error, 1e-10);
  EXPECT_EQ(r1.argmax_t, r0.argmax_t);
}

TEST(ImplicitizeProperty, ErrorInvariantUnderRigidMotion) {
  std::mt19937 rng(17);
  for (int k = 0; k < 10; ++k) {
    auto b = random_bezier(rng), c = random_bezier(rng);
    auto id = implicit_ideal(b);
    auto r0 = error_functional(id, c.to_curve(), 0, 1, 100);
    auto r1 = error_functional(moved(id, inverse_rotate), transformed(c, rotate).to_curve(), 0, 1, 100);
    for (std::size_t i = 0; i < r0.samples.size(); ++i) EXPECT_NEAR(r1.samples[i].e, r0.samples[i].e, 1e-10);
  }
}

TEST(ImplicitizeProperty, FirstOrderDistance) {
  std::mt19937 rng(23);
  for (int k = 0; k < 10; ++k) {
    auto b = random_bezier(rng);
    auto id = implicit_ideal(b);
    for (double s : {0.2, 0.5, 0.8}) {
      Vec3d x = b.eval(s);
      for (const auto& q : id.q) {
        Vec3d g = q.gradient(x);
        if (norm(g) < 1e-6) continue;
        const double eps = 1e-6;
        Vec3d y = x + eps * normalized(g);
        double ratio = std::abs(q.value(y)) / norm(q.gradient(y)) / eps;
        EXPECT_GE(ratio, 0.9);
        EXPECT_LE(ratio, 1.1);
      }
    }
  }
}
