#pragma once

#include <array>
#include <string>
#include <utility>

#include "certicurve/curve.hpp"
#include "certicurve/roots.hpp"
#include "certicurve/tetrahedron.hpp"

namespace certicurve {

// Rational cubic Bezier curve. The usual form keeps w0 = w3 = 1; curves
// produced by subdivision carry general end weights.
class RationalCubicBezier {
 public:
  RationalCubicBezier() = default;
  // Standard form (1, w1, w2, 1). Throws DomainError for non-positive weights.
  RationalCubicBezier(std::array<Vec3q, 4> p, Rational w1, Rational w2);
  RationalCubicBezier(std::array<Vec3q, 4> p, std::array<Rational, 4> w);

  const std::array<Vec3q, 4>& points() const { return p_; }
  const Vec3q& point(std::size_t i) const { return p_[i]; }
  const std::array<Rational, 4>& weights() const { return w_; }
  const Rational& w1() const { return w_[1]; }
  const Rational& w2() const { return w_[2]; }
  bool standard() const { return w_[0] == 1 && w_[3] == 1; }

  Vec3q eval(const Rational& s) const;
  Vec3d eval(double s) const;
  Vec3d derivative(double s) const;

  // Homogeneous polynomial form: numerators X(s) and denominator W(s).
  VecPoly numerators() const;
  UPoly denominator() const;

  Tetrahedron control_tetrahedron() const { return {p_}; }
  // Same curve traversed from p3 to p0.
  RationalCubicBezier reversed() const;
  // The Bezier as a rational curve on [0, 1]. Throws UnsupportedCurve for planar data.
  RationalCurve to_curve(std::string name = {}) const;

  friend bool operator==(const RationalCubicBezier& a, const RationalCubicBezier& b) {
    return a.p_ == b.p_ && a.w_ == b.w_;
  }

 private:
  std::array<Vec3q, 4> p_;
  std::array<Rational, 4> w_{1, 1, 1, 1};
};

// Homogeneous de Casteljau split at s in (0, 1).
std::pair<RationalCubicBezier, RationalCubicBezier> decasteljau_split(const RationalCubicBezier& b,
                                                                      const Rational& s);

struct ShoulderPoint {
  Vec3q s;
  Rational lambda1, lambda2;
  Rational param;
  bool exact = true;  // param is the exact intersection parameter
};

// lambda_i = 3 w_i / (2 + 3 w1 + 3 w2)
std::array<Rational, 2> shoulder_lambdas(const Rational& w1, const Rational& w2);
// Inverse of shoulder_lambdas; throws DomainError unless lambda1, lambda2 > 0
// and lambda1 + lambda2 < 1.
std::array<Rational, 2> weights_from_lambdas(const Rational& lambda1, const Rational& lambda2);
// Coordinates (lambda1, lambda2) of the orthogonal projection of x onto the
// plane p1 p2 pm, relative to the triangle p1 p2 pm.
std::array<Rational, 2> triangle_coordinates(const Vec3q& p1, const Vec3q& p2, const Vec3q& pm, const Vec3q& x);

// Shoulder point p(1/2) of a standard-form Bezier. Throws DomainError otherwise.
ShoulderPoint shoulder_point_bezier(const RationalCubicBezier& b);

// Faces of the control tetrahedron: P1 = p0 p2 p3, P2 = p0 p1 p3.
enum class Face { P1, P2 };

struct ParallelPoint {
  RootInterval root;
  Rational param;  // exact root or the simplest rational in its interval
  bool exact = false;
  Vec3d point;
};

// Cleared closed-form constraint for the parallel-point parameter:
// weight 1: 3t^3 - 6t^2 + 6t - 2 - 3 w t (t - 1)^2,
// weight 2: 3t^3 - 3t^2 + 3t - 1 - 3 w t^2 (t - 1).
UPoly parallel_constraint(int weight_index, const Rational& w);
// Unique root in (0, 1) of parallel_constraint.
ParallelPoint parallel_constraint_root(int weight_index, const Rational& w, const Rational& width);

// Point where the tangent is parallel to the given face (farthest from it).
ParallelPoint parallel_point(const RationalCubicBezier& b, Face face, const Rational& width = Rational(1, 1000000000));

// Ratios k1, k2, k3 of the osculating plane at t on the edges p1p0, p2p1, p3p2.
std::array<Rational, 3> mono_osculating_ratios(const RationalCubicBezier& b, const Rational& t);

}  // namespace certicurve
