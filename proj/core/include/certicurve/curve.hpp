#pragma once

#include <array>
#include <string>

#include "certicurve/poly.hpp"
#include "certicurve/vec3.hpp"

namespace certicurve {

// num / den in lowest terms with monic denominator.
class RationalFn {
 public:
  RationalFn() : num_(), den_(UPoly::constant(1)) {}
  RationalFn(UPoly num, UPoly den);
  explicit RationalFn(UPoly num) : RationalFn(std::move(num), UPoly::constant(1)) {}

  const UPoly& num() const { return num_; }
  const UPoly& den() const { return den_; }
  int degree() const { return std::max(num_.degree(), den_.degree()); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() <= 0; }

  Rational eval(const Rational& t) const;
  double eval(double t) const;
  RationalFn derivative() const;
  // f(a + b t)
  RationalFn affine(const Rational& a, const Rational& b) const;

  friend bool operator==(const RationalFn& a, const RationalFn& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  UPoly num_, den_;
};

using VecPoly = std::array<UPoly, 3>;

Vec3q eval(const VecPoly& v, const Rational& t);
Vec3d eval(const VecPoly& v, double t);
VecPoly derivative(const VecPoly& v);
VecPoly cross(const VecPoly& a, const VecPoly& b);
UPoly dot(const VecPoly& a, const VecPoly& b);
UPoly det3(const VecPoly& a, const VecPoly& b, const VecPoly& c);
// Monic gcd of the components.
UPoly content(const VecPoly& v);
VecPoly divide(const VecPoly& v, const UPoly& g);

// kappa^2 = kappa_num / kappa_den and tau = tau_num / sqrt(tau_den).
struct CurvatureTorsionProfile {
  UPoly kappa_num, kappa_den;
  UPoly tau_num, tau_den;

  double kappa(double t) const;
  double tau(double t) const;
};

struct Plane {
  Vec3q point_exact;
  Vec3q normal_exact;
  Vec3d normal;  // unit
  double offset = 0;  // normal . x = offset

  double signed_distance(const Vec3d& x) const { return dot(normal, x) - offset; }
  // exact side: sign of normal . (x - point)
  int side(const Vec3q& x) const { return sign(dot(normal_exact, x - point_exact)); }
};

Plane make_plane(const Vec3q& point, const Vec3q& normal);

// One-sided Frenet frames at a parameter; "minus" is the limit from below.
struct FrenetData {
  Rational t;
  Vec3q point_exact;
  Vec3d point;
  Vec3d alpha_minus, alpha_plus;
  Vec3d beta_minus, beta_plus;
  Vec3d gamma_minus, gamma_plus;
  // exact directions (not normalised) of the one-sided tangents and binormals
  Vec3q tangent_minus, tangent_plus;
  Vec3q binormal_minus, binormal_plus;
  Plane osc_plane_minus, osc_plane_plus;
  int tangent_order = 0;   // vanishing order of r' at t
  int binormal_order = 0;  // vanishing order of r' x r'' at t
};

class RationalCurve {
 public:
  // Throws DomainError if a denominator vanishes on [lo, hi] or lo >= hi,
  // UnsupportedCurve for planar or straight inputs.
  RationalCurve(RationalFn x, RationalFn y, RationalFn z, Rational lo, Rational hi, std::string name = {});

  const RationalFn& component(int i) const { return comp_[static_cast<std::size_t>(i)]; }
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  const std::string& name() const { return name_; }
  bool contains(const Rational& t) const { return t >= lo_ && t <= hi_; }
  int degree() const;

  // Homogeneous form r = X / W with a common denominator W.
  const VecPoly& numerators() const { return X_; }
  const UPoly& denominator() const { return W_; }
  // D = X'W - XW' is r' W^2.
  const VecPoly& hodograph() const { return D_; }
  // D x D', parallel to r' x r''.
  const VecPoly& hodograph_cross() const { return DxD_; }
  // D = g * Dr with g the gcd of the components of D.
  const UPoly& cusp_factor() const { return g_; }
  const VecPoly& reduced_tangent() const { return Dr_; }
  // Dr x Dr' = h * Br.
  const UPoly& inflection_factor() const { return h_; }
  const VecPoly& reduced_binormal() const { return Br_; }
  // Br . Dr'', vanishing exactly at torsion zeros away from inflections.
  const UPoly& torsion_factor() const { return torsion_; }
  const CurvatureTorsionProfile& profile() const { return profile_; }

  Vec3q point(const Rational& t) const;
  Vec3d point(double t) const;
  Vec3d derivative(double t) const;
  // Homogeneous coordinates (X(t), W(t)) in floating point.
  void homogeneous(double t, Vec3d& X, double& W) const;

  // Same curve over [0, 1] via t = lo + (hi - lo) u.
  RationalCurve reparametrized_to_unit() const;
  // Same polynomials over a different parameter range.
  RationalCurve with_domain(const Rational& lo, const Rational& hi) const;

 private:
  std::array<RationalFn, 3> comp_;
  Rational lo_, hi_;
  std::string name_;
  VecPoly X_;
  UPoly W_;
  VecPoly D_, DxD_, Dr_, Br_;
  UPoly g_, h_, torsion_;
  CurvatureTorsionProfile profile_;
  std::array<std::vector<double>, 3> Xd_, Dd_;
  std::vector<double> Wd_;
};

// Exact derivative of order k (0..3) at t.
Vec3q evaluate(const RationalCurve& c, const Rational& t, int order);

// Symbolic curvature/torsion numerators and denominators.
// Throws UnsupportedCurve for a straight line or a planar curve.
CurvatureTorsionProfile curvature_torsion_profile(const RationalFn& x, const RationalFn& y, const RationalFn& z);
const CurvatureTorsionProfile& curvature_torsion_profile(const RationalCurve& c);

FrenetData frenet(const RationalCurve& c, const Rational& t);

}  // namespace certicurve
