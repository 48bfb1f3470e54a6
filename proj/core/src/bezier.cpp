#include "certicurve/bezier.hpp"

#include "certicurve/errors.hpp"

namespace certicurve {

namespace {

const std::array<UPoly, 4>& bernstein_basis() {
  static const std::array<UPoly, 4> b = [] {
    UPoly t = UPoly::x(), u = UPoly{1, -1};
    return std::array<UPoly, 4>{u.pow(3), 3 * t * u.pow(2), 3 * t.pow(2) * u, t.pow(3)};
  }();
  return b;
}

void check_weights(const std::array<Rational, 4>& w) {
  for (const auto& x : w)
    if (x <= 0) throw DomainError("Bezier weights must be positive");
}

}  // namespace

RationalCubicBezier::RationalCubicBezier(std::array<Vec3q, 4> p, Rational w1, Rational w2)
    : RationalCubicBezier(std::move(p), {Rational(1), std::move(w1), std::move(w2), Rational(1)}) {}

RationalCubicBezier::RationalCubicBezier(std::array<Vec3q, 4> p, std::array<Rational, 4> w)
    : p_(std::move(p)), w_(std::move(w)) {
  check_weights(w_);
}

Vec3q RationalCubicBezier::eval(const Rational& s) const {
  Rational u = 1 - s;
  std::array<Rational, 4> b{u * u * u, 3 * s * u * u, 3 * s * s * u, s * s * s};
  Vec3q num;
  Rational den = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    Rational c = w_[i] * b[i];
    num += p_[i] * c;
    den += c;
  }
  return num / den;
}

Vec3d RationalCubicBezier::eval(double s) const {
  double u = 1 - s;
  std::array<double, 4> b{u * u * u, 3 * s * u * u, 3 * s * s * u, s * s * s};
  Vec3d num;
  double den = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    double c = w_[i].get_d() * b[i];
    num += to_double(p_[i]) * c;
    den += c;
  }
  return num / den;
}

Vec3d RationalCubicBezier::derivative(double s) const {
  VecPoly X = numerators();
  UPoly W = denominator();
  double w = W.eval(s), dw = W.derivative().eval(s);
  Vec3d out;
  for (std::size_t i = 0; i < 3; ++i) out[i] = (X[i].derivative().eval(s) * w - X[i].eval(s) * dw) / (w * w);
  return out;
}

VecPoly RationalCubicBezier::numerators() const {
  const auto& B = bernstein_basis();
  VecPoly X;
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < 4; ++i) X[k] += B[i] * (w_[i] * p_[i][k]);
  return X;
}

UPoly RationalCubicBezier::denominator() const {
  const auto& B = bernstein_basis();
  UPoly W;
  for (std::size_t i = 0; i < 4; ++i) W += B[i] * w_[i];
  return W;
}

RationalCubicBezier RationalCubicBezier::reversed() const {
  return RationalCubicBezier({p_[3], p_[2], p_[1], p_[0]}, {w_[3], w_[2], w_[1], w_[0]});
}

RationalCurve RationalCubicBezier::to_curve(std::string name) const {
  VecPoly X = numerators();
  UPoly W = denominator();
  return RationalCurve(RationalFn(X[0], W), RationalFn(X[1], W), RationalFn(X[2], W), 0, 1, std::move(name));
}

std::pair<RationalCubicBezier, RationalCubicBezier> decasteljau_split(const RationalCubicBezier& b,
                                                                      const Rational& s) {
  if (!(s > 0 && s < 1)) throw DomainError("split parameter must lie in (0, 1)");
  // homogeneous points (w p, w)
  std::array<std::array<Rational, 4>, 4> q;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t k = 0; k < 3; ++k) q[i][k] = b.weights()[i] * b.point(i)[k];
    q[i][3] = b.weights()[i];
  }
  std::array<std::array<Rational, 4>, 4> left, right;
  auto level = q;
  const Rational u = 1 - s;
  for (std::size_t r = 0; r < 4; ++r) {
    left[r] = level[0];
    right[3 - r] = level[3 - r];
    for (std::size_t i = 0; i + r + 1 < 4; ++i)
      for (std::size_t k = 0; k < 4; ++k) level[i][k] = u * level[i][k] + s * level[i + 1][k];
  }
  auto make = [](const std::array<std::array<Rational, 4>, 4>& h) {
    std::array<Vec3q, 4> p;
    std::array<Rational, 4> w;
    for (std::size_t i = 0; i < 4; ++i) {
      w[i] = h[i][3];
      p[i] = Vec3q(h[i][0], h[i][1], h[i][2]) / w[i];
    }
    return RationalCubicBezier(p, w);
  };
  return {make(left), make(right)};
}

std::array<Rational, 2> shoulder_lambdas(const Rational& w1, const Rational& w2) {
  Rational S = 2 + 3 * w1 + 3 * w2;
  return {3 * w1 / S, 3 * w2 / S};
}

std::array<Rational, 2> weights_from_lambdas(const Rational& l1, const Rational& l2) {
  if (!(l1 > 0 && l2 > 0 && l1 + l2 < 1)) throw DomainError("shoulder coordinates outside the triangle");
  Rational S = 2 / (1 - l1 - l2);
  return {l1 * S / 3, l2 * S / 3};
}

std::array<Rational, 2> triangle_coordinates(const Vec3q& p1, const Vec3q& p2, const Vec3q& pm, const Vec3q& x) {
  Vec3q u = p1 - pm, v = p2 - pm, d = x - pm;
  Rational uu = dot(u, u), uv = dot(u, v), vv = dot(v, v), du = dot(d, u), dv = dot(d, v);
  Rational det = uu * vv - uv * uv;
  if (det == 0) throw DegenerateTetrahedron("shoulder triangle is degenerate");
  return {(du * vv - dv * uv) / det, (dv * uu - du * uv) / det};
}

ShoulderPoint shoulder_point_bezier(const RationalCubicBezier& b) {
  if (!b.standard()) throw DomainError("shoulder point formula needs end weights 1");
  ShoulderPoint sp;
  sp.param = Rational(1, 2);
  sp.s = b.eval(sp.param);
  auto l = shoulder_lambdas(b.w1(), b.w2());
  sp.lambda1 = l[0];
  sp.lambda2 = l[1];
  return sp;
}

UPoly parallel_constraint(int weight_index, const Rational& w) {
  UPoly t = UPoly::x(), tm1 = UPoly{-1, 1};
  if (weight_index == 1) return UPoly{-2, 6, -6, 3} - 3 * w * t * tm1.pow(2);
  if (weight_index == 2) return UPoly{-1, 3, -3, 3} - 3 * w * t.pow(2) * tm1;
  throw DomainError("weight index must be 1 or 2");
}

namespace {

ParallelPoint unique_root(const UPoly& p, const Rational& width) {
  std::vector<RootInterval> rs;
  for (auto& r : isolate_real_roots(p, 0, 1, width))
    if (!(r.exact() && (r.lo == 0 || r.lo == 1))) rs.push_back(r);
  if (rs.size() != 1) throw Error("parallel point is not unique");
  ParallelPoint pp;
  pp.root = rs.front();
  if (auto q = exact_rational_root(pp.root)) {
    pp.param = *q;
    pp.exact = true;
  } else {
    pp.param = simplest_between(pp.root.lo, pp.root.hi);
  }
  return pp;
}

}  // namespace

ParallelPoint parallel_constraint_root(int weight_index, const Rational& w, const Rational& width) {
  return unique_root(parallel_constraint(weight_index, w), width);
}

ParallelPoint parallel_point(const RationalCubicBezier& b, Face face, const Rational& width) {
  // the barycentric coordinate of the vertex opposite the face is stationary
  const std::size_t i = face == Face::P1 ? 1 : 2;
  const auto& B = bernstein_basis();
  UPoly W = b.denominator();
  UPoly Bi = B[i] * b.weights()[i];
  UPoly num = Bi.derivative() * W - Bi * W.derivative();
  // drop the forced roots at the ends
  num = num.factor_root(0).second.factor_root(1).second;
  ParallelPoint pp = unique_root(num, width);
  pp.point = b.eval(pp.param.get_d());
  return pp;
}

std::array<Rational, 3> mono_osculating_ratios(const RationalCubicBezier& b, const Rational& t) {
  if (!(t > 0 && t < 1)) throw DomainError("parameter must lie in (0, 1)");
  RationalCurve c = b.to_curve();
  FrenetData f = frenet(c, t);
  return osculating_ratios(b.control_tetrahedron(), f.point_exact, f.binormal_plus);
}

}  // namespace certicurve
