#pragma once

#include <array>
#include <vector>

#include "certicurve/bezier.hpp"
#include "certicurve/mpoly.hpp"

namespace certicurve {

// L(t) . (x, y, z, w): a plane moving with the parameter.
struct MovingPlane {
  std::array<UPoly, 4> c;

  // c . (X, W), the zero polynomial for a plane following the curve.
  UPoly apply(const VecPoly& X, const UPoly& W) const;
  bool follows(const VecPoly& X, const UPoly& W) const { return apply(X, W).is_zero(); }
  int degree() const;
};

// Three degree-one moving planes following a rational cubic in homogeneous
// form (X, W). Throws UnsupportedCurve for planar or lower-degree data.
std::array<MovingPlane, 3> mu_basis_cubic(const VecPoly& X, const UPoly& W);
std::array<MovingPlane, 3> mu_basis_cubic(const RationalCubicBezier& b);

struct Quadric {
  MPoly exact{3};  // in x, y, z
  // float mirror on 1, x, y, z, x^2, xy, xz, y^2, yz, z^2, largest |c| = 1
  std::array<double, 10> c{};

  static Quadric from(MPoly q);
  double value(const Vec3d& x) const;
  Vec3d gradient(const Vec3d& x) const;
};

struct ImplicitIdeal {
  std::array<Quadric, 3> q;  // f, g, h
};

// Pairwise resultants of the planes in t, dehomogenised at w = 1.
// Throws Error when a resultant vanishes identically.
ImplicitIdeal implicit_ideal(const std::array<MovingPlane, 3>& planes);
ImplicitIdeal implicit_ideal(const RationalCubicBezier& b);

// Exact test that q(X/W, Y/W, Z/W) is identically zero.
bool vanishes_on(const MPoly& q, const VecPoly& X, const UPoly& W);
bool vanishes_on(const ImplicitIdeal& ideal, const RationalCubicBezier& b);

struct ErrorSample {
  double t = 0;
  double e = 0;
  bool valid = true;
};

struct ErrorReport {
  std::vector<ErrorSample> samples;
  double max_error = 0;
  double argmax_t = 0;
  int m = 0;
  std::size_t invalid = 0;

  bool flagged() const { return invalid > 0; }
};

// Sum over the quadrics of |q| / |grad q| at x. A quadric with q(x) = 0
// contributes 0; a vanishing gradient elsewhere makes the value invalid.
double error_at(const ImplicitIdeal& ideal, const Vec3d& x, bool* valid = nullptr);

// e(t) at t_i = t0 + (t1 - t0) i / m, i = 0..m. Throws DomainError for m < 2
// and Error when every sample is invalid.
ErrorReport error_functional(const ImplicitIdeal& ideal, const RationalCurve& c, const Rational& t0,
                             const Rational& t1, int m = 300);

}  // namespace certicurve
