#include <gtest/gtest.h>

#include <map>
#include <random>

#include "certicurve/errors.hpp"
#include "test_support.hpp"

using namespace certicurve;
using certicurve::testing::load_curve;
using certicurve::testing::polynomial_curve;
using certicurve::testing::twisted_cubic;

namespace {

const std::vector<QuasiCubicSegment>& segments_of(const std::string& name) {
  static std::map<std::string, std::vector<QuasiCubicSegment>> cache;
  auto it = cache.find(name);
  if (it == cache.end()) {
    auto c = load_curve(name);
    it = cache.emplace(name, segment_curve(c, build_vertex_list(*c))).first;
  }
  return it->second;
}

bool has_param(const std::vector<QuasiCubicSegment>& segs, const Rational& t) {
  for (const auto& s : segs)
    if (s.t0 == t || s.t1 == t) return true;
  return false;
}

Rational lerp(const Rational& a, const Rational& b, const Rational& u) { return a + (b - a) * u; }

template <class F>
void for_each_segment(F f) {
  for (const char* name : {"r1", "r2", "r3"})
    for (const auto& s : segments_of(name)) f(name, s);
}

}  // namespace

TEST(Tetrahedron, TwistedCubic) {
  auto t = associated_tetrahedron(*twisted_cubic(), 0, 1);
  EXPECT_EQ(t.v[0], Vec3q(0, 0, 0));
  EXPECT_EQ(t.v[1], Vec3q(Rational(1, 3), 0, 0));
  EXPECT_EQ(t.v[2], Vec3q(Rational(2, 3), Rational(1, 3), 0));
  EXPECT_EQ(t.v[3], Vec3q(1, 1, 1));
}

TEST(Tetrahedron, ReversedOrientationMirrorsRoles) {
  auto fwd = associated_tetrahedron(*twisted_cubic(), 0, 1);
  auto rev = polynomial_curve(UPoly{1, -1}, UPoly{1, -2, 1}, UPoly{1, -3, 3, -1}, 0, 1);
  auto t = associated_tetrahedron(*rev, 0, 1);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(t.v[i], fwd.v[3 - i]);
}

TEST(Tetrahedron, PlanarFramesAreDegenerate) {
  EXPECT_THROW(tetrahedron_from_frames(Vec3q(0, 0, 0), Vec3q(1, 0, 0), Vec3q(0, 0, 1), Vec3q(1, 1, 0),
                                       Vec3q(0, 1, 0), Vec3q(0, 0, 1)),
               DegenerateTetrahedron);
}

TEST(Tetrahedron, ExactContainmentAndBarycentric) {
  Tetrahedron t{{Vec3q(0, 0, 0), Vec3q(1, 0, 0), Vec3q(0, 1, 0), Vec3q(0, 0, 1)}};
  EXPECT_TRUE(t.contains(Vec3q(Rational(1, 4), Rational(1, 4), Rational(1, 4))));
  EXPECT_TRUE(t.contains(Vec3q(1, 0, 0)));
  EXPECT_FALSE(t.contains(Vec3q(1, 1, 0)));
  auto b = t.barycentric(Vec3q(Rational(1, 2), Rational(1, 4), 0));
  EXPECT_EQ(b[0], Rational(1, 4));
  EXPECT_EQ(b[1], Rational(1, 2));
  EXPECT_EQ(b[2], Rational(1, 4));
  EXPECT_EQ(b[3], 0);
}

TEST(ConditionBounds, TwistedCubicCertifiesWholeInterval) {
  auto c = twisted_cubic();
  SegmentationContext ctx(c, build_vertex_list(*c));
  for (int k = 1; k <= 4; ++k) {
    auto b = condition_bound(ctx, k, 0, 1);
    EXPECT_EQ(b.t_star, 1) << "condition " << k;
    EXPECT_EQ(b.halvings, 0);
  }
  EXPECT_EQ(condition_I_bound(ctx, 0, 1).t_star, 1);
  EXPECT_EQ(condition_II_bound(ctx, 0, 1).t_star, 1);
  EXPECT_EQ(condition_III_bound(ctx, 0, 1).t_star, 1);
  EXPECT_EQ(condition_IV_bound(ctx, 0, 1).t_star, 1);
}

TEST(ConditionBounds, StopsBeforeTorsionZero) {
  // tau vanishes at t = 1/4 only
  auto c = polynomial_curve(UPoly{0, 1}, UPoly{0, 0, 1}, UPoly{0, 0, 0, 1, -1}, 0, Rational(1, 2));
  auto flats = find_flats(*c, Rational(1, 1000000000));
  ASSERT_EQ(flats.torsion_zeros.size(), 1u);
  const Rational root = flats.torsion_zeros[0].value;
  EXPECT_EQ(root, Rational(1, 4));
  SegmentationContext ctx(c, build_vertex_list(*c));
  Rational cap(1, 2);
  for (int k = 1; k <= 4; ++k) cap = condition_bound(ctx, k, 0, cap).t_star;
  EXPECT_LT(cap, root);
  EXPECT_GT(cap, 0);
}

TEST(ConditionBounds, TinyCapIsCertifiedImmediately) {
  auto c = load_curve("r3");
  SegmentationContext ctx(c, build_vertex_list(*c));
  Rational t0(1, 2), cap = t0 + Rational(1, 1000000);
  for (int k = 1; k <= 4; ++k) {
    auto b = condition_bound(ctx, k, t0, cap);
    EXPECT_EQ(b.t_star, cap);
    EXPECT_EQ(b.halvings, 0);
  }
}

TEST(ConditionBounds, ShallowCertificatesForceHalvings) {
  auto c = load_curve("r3");
  SegmentationOptions o;
  o.max_depth = 1;
  auto segs = segment_curve(c, build_vertex_list(*c), o);
  int halvings = 0;
  for (const auto& s : segs)
    for (const auto& b : s.cert.searches) halvings += b.halvings;
  EXPECT_GE(halvings, 1);
  EXPECT_GT(segs.size(), segments_of("r3").size());
  for (std::size_t i = 1; i < segs.size(); ++i) EXPECT_EQ(segs[i - 1].t1, segs[i].t0);
}

TEST(ConditionBounds, EmptyIntervalRejected) {
  auto c = twisted_cubic();
  SegmentationContext ctx(c, build_vertex_list(*c));
  EXPECT_THROW(condition_bound(ctx, 1, 1, 1), DomainError);
}

TEST(Segmentation, TwistedCubicIsOneSegment) {
  auto c = twisted_cubic();
  auto segs = segment_curve(c, build_vertex_list(*c));
  ASSERT_EQ(segs.size(), 1u);
  EXPECT_EQ(segs[0].t0, 0);
  EXPECT_EQ(segs[0].t1, 1);
  for (bool h : segs[0].cert.holds) EXPECT_TRUE(h);
}

TEST(Segmentation, R2CutsAtCharacterParameters) {
  const auto& segs = segments_of("r2");
  EXPECT_TRUE(has_param(segs, 0));
  EXPECT_TRUE(has_param(segs, 1));
  EXPECT_EQ(segs.front().t0, Rational(-1, 16));
  EXPECT_EQ(segs.back().t1, Rational(3, 2));
}

TEST(Segmentation, R1CutsAtSingularParameters) {
  const auto& segs = segments_of("r1");
  EXPECT_TRUE(has_param(segs, -1));
  EXPECT_TRUE(has_param(segs, 1));
}

TEST(Segmentation, LineRestrictedModeAlsoSegments) {
  auto c = load_curve("r2");
  SegmentationOptions o;
  o.mode = CertificationMode::LineRestricted;
  auto segs = segment_curve(c, build_vertex_list(*c), o);
  EXPECT_TRUE(has_param(segs, 0));
  EXPECT_TRUE(has_param(segs, 1));
  for (const auto& s : segs) EXPECT_EQ(s.cert.mode, CertificationMode::LineRestricted);
}

TEST(SegmentationProperty, SegmentsAreContiguous) {
  for (const char* name : {"r1", "r2", "r3"}) {
    const auto& segs = segments_of(name);
    for (std::size_t i = 1; i < segs.size(); ++i) EXPECT_EQ(segs[i - 1].t1, segs[i].t0);
  }
}

TEST(SegmentationProperty, CurveStaysInsideTetrahedron) {
  for_each_segment([](const std::string& name, const QuasiCubicSegment& s) {
    double a = s.t0.get_d(), b = s.t1.get_d();
    for (int i = 0; i <= 1000; ++i) {
      auto bc = s.tet.barycentric(s.curve->point(a + (b - a) * i / 1000.0));
      for (double x : bc) ASSERT_GE(x, -1e-9) << name << " [" << a << "," << b << "]";
      for (double x : bc) ASSERT_LE(x, 1 + 1e-9);
    }
  });
}

TEST(SegmentationProperty, HermiteData) {
  for_each_segment([](const std::string& name, const QuasiCubicSegment& s) {
    const auto& v = s.tet.v;
    EXPECT_LE(norm(cross(s.start.alpha_plus, unit(v[1] - v[0]))), 1e-10) << name;
    EXPECT_LE(norm(cross(s.end.alpha_minus, unit(v[3] - v[2]))), 1e-10) << name;
    EXPECT_TRUE(same_direction(s.start.tangent_plus, v[1] - v[0]));
    EXPECT_TRUE(same_direction(s.end.tangent_minus, v[3] - v[2]));
    // the end osculating planes contain faces r0 r1 r2 and r1 r2 r3
    EXPECT_EQ(s.start.osc_plane_plus.side(v[1]), 0);
    EXPECT_EQ(s.start.osc_plane_plus.side(v[2]), 0);
    EXPECT_EQ(s.end.osc_plane_minus.side(v[1]), 0);
    EXPECT_EQ(s.end.osc_plane_minus.side(v[2]), 0);
  });
}

TEST(SegmentationProperty, NoCharacterInsideSegment) {
  for (const char* name : {"r1", "r2", "r3"}) {
    auto c = load_curve(name);
    auto vl = build_vertex_list(*c);
    for (const auto& s : segments_of(name))
      for (const auto& p : vl.all_params) EXPECT_FALSE(p.value > s.t0 && p.value < s.t1) << name;
  }
}

TEST(SegmentationProperty, OsculatingRatiosMonotone) {
  for_each_segment([](const std::string& name, const QuasiCubicSegment& s) {
    std::array<Rational, 3> prev;
    int dir[3] = {0, 0, 0};
    for (int i = 1; i <= 50; ++i) {
      auto k = osculating_ratios(s, lerp(s.t0, s.t1, Rational(i, 51)));
      for (std::size_t j = 0; j < 3; ++j) {
        ASSERT_GT(k[j], 0) << name;
        ASSERT_LT(k[j], 1) << name;
        if (i > 1) {
          int d = sign(k[j] - prev[j]);
          ASSERT_NE(d, 0);
          if (dir[j] == 0) dir[j] = d;
          ASSERT_EQ(d, dir[j]) << name << " ratio " << j;
        }
      }
      prev = k;
    }
  });
}

TEST(SegmentationProperty, SubTetrahedraAreNested) {
  std::mt19937 rng(4);
  std::uniform_int_distribution<int> u(1, 999);
  for_each_segment([&](const std::string& name, const QuasiCubicSegment& s) {
    for (int i = 0; i < 20; ++i) {
      Rational a(u(rng), 1000), b(u(rng), 1000);
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      auto sub = make_segment(s.curve, lerp(s.t0, s.t1, a), lerp(s.t0, s.t1, b));
      for (const auto& v : sub.tet.v)
        for (double x : s.tet.barycentric(to_double(v))) {
          ASSERT_GE(x, -1e-9) << name;
          ASSERT_LE(x, 1 + 1e-9) << name;
        }
    }
  });
}

TEST(SegmentationProperty, UniqueParallelPointPerFace) {
  for_each_segment([](const std::string& name, const QuasiCubicSegment& s) {
    const auto& v = s.tet.v;
    for (const Vec3q& n : {cross(v[2] - v[0], v[3] - v[0]), cross(v[1] - v[0], v[3] - v[0])}) {
      const auto& D = s.curve->hodograph();
      UPoly f = D[0] * n[0] + D[1] * n[1] + D[2] * n[2];
      EXPECT_EQ(count_roots_open(f, s.t0, s.t1), 1u) << name;
    }
  });
}
