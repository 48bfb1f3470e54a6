#pragma once

#include <array>
#include <memory>
#include <optional>
#include <vector>

#include "certicurve/bernstein.hpp"
#include "certicurve/characters.hpp"
#include "certicurve/mpoly.hpp"
#include "certicurve/tetrahedron.hpp"

namespace certicurve {

// r0, r3 the end points, r1 = T+(t0) meet O-(t1), r2 = T-(t1) meet O+(t0).
Tetrahedron associated_tetrahedron(const RationalCurve& c, const Rational& t0, const Rational& t1);

enum class CertificationMode {
  FullBox,    // Bernstein certificate on the whole parameter square / cube
  LineRestricted,  // edge, diagonal and far-line restrictions only
};

struct BoundarySearch {
  Rational delta1_star;  // first zero along the diagonal restriction (or the cap)
  Rational delta2_star;  // first zero along the edge restriction (or the cap)
  Rational t_star;       // certified end parameter
  int halvings = 0;
  std::size_t boxes = 0;  // Bernstein boxes examined
};

struct SegmentationOptions {
  CertificationMode mode = CertificationMode::FullBox;
  int max_halvings = 40;
  int extend_steps = 3;
  int max_depth = 40;
  std::size_t max_boxes = 3000;
  // relative size of the corner neighbourhood left uncertified at characteristic vertices
  Rational corner_zone = Rational(1, 1000000000);
};

// Per-curve condition polynomials and certification state.
class SegmentationContext {
 public:
  SegmentationContext(std::shared_ptr<const RationalCurve> curve, VertexList vertices,
                      SegmentationOptions opts = {});

  const RationalCurve& curve() const { return *curve_; }
  std::shared_ptr<const RationalCurve> curve_ptr() const { return curve_; }
  const VertexList& vertices() const { return vertices_; }
  const SegmentationOptions& options() const { return opts_; }

  // f_I(s1, s2) = Dr(s1) . Br(s2), f_II = det(Dr(s1), chord, Dr(s2)),
  // f_III = chord . Br(s2), f_IV = det(Dr(s1), Dr(s2), Dr(s3)); each with
  // the diagonal factors divided out.
  const MPoly& condition(int k) const { return cond_[static_cast<std::size_t>(k - 1)]; }

  // Whether condition k holds on the closed square/cube over [t0, t1].
  bool certify(int k, const Rational& t0, const Rational& t1, std::size_t* boxes = nullptr) const;

 private:
  std::shared_ptr<const RationalCurve> curve_;
  VertexList vertices_;
  SegmentationOptions opts_;
  std::array<MPoly, 4> cond_;
};

BoundarySearch condition_I_bound(const SegmentationContext& ctx, const Rational& t0, const Rational& cap);
BoundarySearch condition_II_bound(const SegmentationContext& ctx, const Rational& t0, const Rational& cap);
BoundarySearch condition_III_bound(const SegmentationContext& ctx, const Rational& t0, const Rational& cap);
BoundarySearch condition_IV_bound(const SegmentationContext& ctx, const Rational& t0, const Rational& cap);
BoundarySearch condition_bound(const SegmentationContext& ctx, int k, const Rational& t0, const Rational& cap);

struct SegmentCertificate {
  std::array<bool, 4> holds{};
  std::array<BoundarySearch, 4> searches;
  CertificationMode mode = CertificationMode::FullBox;
};

struct QuasiCubicSegment {
  std::shared_ptr<const RationalCurve> curve;
  Rational t0, t1;
  Tetrahedron tet;
  FrenetData start, end;  // frames at t0 and t1
  SegmentCertificate cert;

  Vec3q point_at(const Rational& t) const { return curve->point(t); }
};

// Segment over [t0, t1] with its tetrahedron; the certificate is left empty.
QuasiCubicSegment make_segment(std::shared_ptr<const RationalCurve> c, const Rational& t0, const Rational& t1);

std::vector<QuasiCubicSegment> segment_curve(const SegmentationContext& ctx);
std::vector<QuasiCubicSegment> segment_curve(std::shared_ptr<const RationalCurve> c, const VertexList& vl,
                                             const SegmentationOptions& opts = {});

// k1, k2, k3 for the osculating plane at t.
std::array<Rational, 3> osculating_ratios(const QuasiCubicSegment& seg, const Rational& t);

}  // namespace certicurve
