#include "certicurve/curve.hpp"

#include <cmath>
#include <stdexcept>

#include "certicurve/errors.hpp"
#include "certicurve/roots.hpp"

namespace certicurve {

RationalFn::RationalFn(UPoly num, UPoly den) {
  if (den.is_zero()) throw DomainError("rational function with zero denominator");
  if (num.is_zero()) {
    num_ = UPoly{};
    den_ = UPoly::constant(1);
    return;
  }
  UPoly g = gcd(num, den);
  if (g.degree() > 0) {
    num = exact_div(num, g);
    den = exact_div(den, g);
  }
  Rational l = den.lead();
  num_ = num * Rational(1 / l);
  den_ = den * Rational(1 / l);
}

Rational RationalFn::eval(const Rational& t) const {
  Rational d = den_.eval(t);
  if (d == 0) throw DomainError("denominator vanishes at t = " + to_string(t));
  return num_.eval(t) / d;
}

double RationalFn::eval(double t) const { return num_.eval(t) / den_.eval(t); }

RationalFn RationalFn::derivative() const {
  return RationalFn(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RationalFn RationalFn::affine(const Rational& a, const Rational& b) const {
  return RationalFn(num_.affine(a, b), den_.affine(a, b));
}

Vec3q eval(const VecPoly& v, const Rational& t) { return {v[0].eval(t), v[1].eval(t), v[2].eval(t)}; }

Vec3d eval(const VecPoly& v, double t) { return {v[0].eval(t), v[1].eval(t), v[2].eval(t)}; }

VecPoly derivative(const VecPoly& v) { return {v[0].derivative(), v[1].derivative(), v[2].derivative()}; }

VecPoly cross(const VecPoly& a, const VecPoly& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

UPoly dot(const VecPoly& a, const VecPoly& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

UPoly det3(const VecPoly& a, const VecPoly& b, const VecPoly& c) { return dot(a, cross(b, c)); }

UPoly content(const VecPoly& v) { return gcd(std::vector<UPoly>{v[0], v[1], v[2]}); }

VecPoly divide(const VecPoly& v, const UPoly& g) {
  return {exact_div(v[0], g), exact_div(v[1], g), exact_div(v[2], g)};
}

namespace {

bool is_zero(const VecPoly& v) { return v[0].is_zero() && v[1].is_zero() && v[2].is_zero(); }

struct Homogeneous {
  VecPoly X;
  UPoly W;
  VecPoly D;
};

Homogeneous homogeneous_form(const std::array<RationalFn, 3>& comp) {
  Homogeneous h;
  h.W = UPoly::constant(1);
  for (const auto& f : comp) h.W = lcm(h.W, f.den());
  for (int i = 0; i < 3; ++i) {
    const auto& f = comp[static_cast<std::size_t>(i)];
    h.X[static_cast<std::size_t>(i)] = f.num() * exact_div(h.W, f.den());
  }
  UPoly Wp = h.W.derivative();
  for (std::size_t i = 0; i < 3; ++i) h.D[i] = h.X[i].derivative() * h.W - h.X[i] * Wp;
  return h;
}

CurvatureTorsionProfile profile_from(const Homogeneous& h) {
  if (is_zero(h.D)) throw UnsupportedCurve("constant curve unsupported");
  VecPoly D1 = derivative(h.D);
  VecPoly C = cross(h.D, D1);
  if (is_zero(C)) throw UnsupportedCurve("straight line unsupported");
  UPoly T = dot(C, derivative(D1));
  if (T.is_zero()) throw UnsupportedCurve("planar curve unsupported");
  CurvatureTorsionProfile p;
  UPoly W2 = h.W * h.W;
  UPoly W4 = W2 * W2;
  UPoly C2 = dot(C, C);
  UPoly D2 = dot(h.D, h.D);
  p.kappa_num = C2 * W4;
  p.kappa_den = D2 * D2 * D2;
  p.tau_num = T * W2;
  p.tau_den = C2 * C2;
  return p;
}

std::pair<int, VecPoly> factor_root(VecPoly v, const Rational& t) {
  int k = 0;
  for (;;) {
    bool all = true;
    for (const auto& p : v)
      if (!p.is_zero() && p.eval(t) != 0) all = false;
    if (all && !is_zero(v)) {
      for (auto& p : v)
        if (!p.is_zero()) p = exact_div(p, UPoly::linear_root(t));
      ++k;
    } else {
      break;
    }
  }
  return {k, v};
}

std::vector<double> doubles(const UPoly& p) { return p.to_double(); }

double horner(const std::vector<double>& c, double t) {
  double r = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * t + *it;
  return r;
}

}  // namespace

// Evaluated exactly at the binary value of t; the cleared polynomials are
// too ill-conditioned for Horner in double near singular parameters.
double CurvatureTorsionProfile::kappa(double t) const {
  Rational x = from_double(t);
  Rational k2 = kappa_num.eval(x) / kappa_den.eval(x);
  return std::sqrt(std::max(0.0, k2.get_d()));
}

double CurvatureTorsionProfile::tau(double t) const {
  Rational x = from_double(t);
  Rational n = tau_num.eval(x);
  Rational t2 = n * n / tau_den.eval(x);
  return sign(n) * std::sqrt(t2.get_d());
}

CurvatureTorsionProfile curvature_torsion_profile(const RationalFn& x, const RationalFn& y, const RationalFn& z) {
  return profile_from(homogeneous_form({x, y, z}));
}

const CurvatureTorsionProfile& curvature_torsion_profile(const RationalCurve& c) { return c.profile(); }

Plane make_plane(const Vec3q& point, const Vec3q& normal) {
  Plane p;
  p.point_exact = point;
  p.normal_exact = normal;
  p.normal = unit(normal);
  p.offset = dot(p.normal, to_double(point));
  return p;
}

RationalCurve::RationalCurve(RationalFn x, RationalFn y, RationalFn z, Rational lo, Rational hi, std::string name)
    : comp_{std::move(x), std::move(y), std::move(z)}, lo_(std::move(lo)), hi_(std::move(hi)), name_(std::move(name)) {
  if (!(lo_ < hi_)) throw DomainError("empty parameter interval");
  for (const auto& f : comp_) {
    if (f.den().degree() <= 0) continue;
    auto roots = isolate_real_roots(f.den(), lo_, hi_, hi_ - lo_);
    if (!roots.empty()) throw DomainError("denominator vanishes inside the parameter interval");
  }
  Homogeneous h = homogeneous_form(comp_);
  X_ = h.X;
  W_ = h.W;
  D_ = h.D;
  profile_ = profile_from(h);
  DxD_ = cross(D_, certicurve::derivative(D_));
  g_ = content(D_);
  Dr_ = divide(D_, g_);
  VecPoly Dr1 = certicurve::derivative(Dr_);
  VecPoly C = cross(Dr_, Dr1);
  h_ = content(C);
  Br_ = divide(C, h_);
  torsion_ = dot(Br_, certicurve::derivative(Dr1));
  for (std::size_t i = 0; i < 3; ++i) Xd_[i] = doubles(X_[i]);
  Wd_ = doubles(W_);
  for (std::size_t i = 0; i < 3; ++i) Dd_[i] = doubles(D_[i]);
}

int RationalCurve::degree() const {
  int d = W_.degree();
  for (const auto& x : X_) d = std::max(d, x.degree());
  return d;
}

Vec3q RationalCurve::point(const Rational& t) const {
  Rational w = W_.eval(t);
  if (w == 0) throw DomainError("denominator vanishes at t = " + to_string(t));
  return {X_[0].eval(t) / w, X_[1].eval(t) / w, X_[2].eval(t) / w};
}

Vec3d RationalCurve::point(double t) const {
  double w = horner(Wd_, t);
  return {horner(Xd_[0], t) / w, horner(Xd_[1], t) / w, horner(Xd_[2], t) / w};
}

Vec3d RationalCurve::derivative(double t) const {
  double w = horner(Wd_, t);
  double w2 = w * w;
  return {horner(Dd_[0], t) / w2, horner(Dd_[1], t) / w2, horner(Dd_[2], t) / w2};
}

void RationalCurve::homogeneous(double t, Vec3d& X, double& W) const {
  W = horner(Wd_, t);
  X = {horner(Xd_[0], t), horner(Xd_[1], t), horner(Xd_[2], t)};
}

RationalCurve RationalCurve::reparametrized_to_unit() const {
  Rational len = hi_ - lo_;
  return RationalCurve(comp_[0].affine(lo_, len), comp_[1].affine(lo_, len), comp_[2].affine(lo_, len), 0, 1, name_);
}

RationalCurve RationalCurve::with_domain(const Rational& lo, const Rational& hi) const {
  return RationalCurve(comp_[0], comp_[1], comp_[2], lo, hi, name_);
}

Vec3q evaluate(const RationalCurve& c, const Rational& t, int order) {
  if (!c.contains(t)) throw DomainError("parameter outside the curve domain");
  if (order < 0 || order > 3) throw std::invalid_argument("derivative order must be 0..3");
  Vec3q r;
  for (int i = 0; i < 3; ++i) {
    RationalFn f = c.component(i);
    for (int k = 0; k < order; ++k) f = f.derivative();
    r[static_cast<std::size_t>(i)] = f.eval(t);
  }
  return r;
}

FrenetData frenet(const RationalCurve& c, const Rational& t) {
  if (!c.contains(t)) throw DomainError("parameter outside the curve domain");
  FrenetData f;
  f.t = t;
  f.point_exact = c.point(t);
  f.point = to_double(f.point_exact);
  auto [k, Dh] = factor_root(c.hodograph(), t);
  auto [m, Ch] = factor_root(c.hodograph_cross(), t);
  f.tangent_order = k;
  f.binormal_order = m;
  f.tangent_plus = eval(Dh, t);
  f.tangent_minus = (k % 2) ? Vec3q(-f.tangent_plus) : f.tangent_plus;
  f.binormal_plus = eval(Ch, t);
  f.binormal_minus = (m % 2) ? Vec3q(-f.binormal_plus) : f.binormal_plus;
  f.alpha_plus = unit(f.tangent_plus);
  f.alpha_minus = unit(f.tangent_minus);
  f.gamma_plus = unit(f.binormal_plus);
  f.gamma_minus = unit(f.binormal_minus);
  f.beta_plus = normalized(cross(f.gamma_plus, f.alpha_plus));
  f.beta_minus = normalized(cross(f.gamma_minus, f.alpha_minus));
  f.osc_plane_plus = make_plane(f.point_exact, f.binormal_plus);
  f.osc_plane_minus = make_plane(f.point_exact, f.binormal_minus);
  return f;
}

}  // namespace certicurve
