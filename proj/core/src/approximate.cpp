#include "certicurve/approximate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>

#include "certicurve/errors.hpp"
#include "certicurve/resultant.hpp"

namespace certicurve {

const char* to_string(WeightMethod m) { return m == WeightMethod::ClosedForm ? "ClosedForm" : "Fallback"; }

const char* to_string(SplitStrategy s) {
  return s == SplitStrategy::ShoulderSplit ? "ShoulderSplit" : "ArcLengthMidpoint";
}

AssociatedCubic associated_cubic(const QuasiCubicSegment& seg) { return {seg.tet}; }

ShoulderPoint shoulder_point_segment(const QuasiCubicSegment& seg) {
  Rational w(1);
  mpz_mul_2exp(w.get_den_mpz_t(), w.get_den_mpz_t(), 50);
  return shoulder_point_segment(seg, w);
}

ShoulderPoint shoulder_point_segment(const QuasiCubicSegment& seg, const Rational& rel_width) {
  const RationalCurve& c = *seg.curve;
  const auto& v = seg.tet.v;
  const Vec3q rm = (v[0] + v[3]) / Rational(2);
  const Vec3q n = cross(v[2] - v[1], rm - v[1]);
  if (n.is_zero()) throw DegenerateTetrahedron("shoulder triangle is degenerate");
  const VecPoly& X = c.numerators();
  UPoly p = X[0] * n[0] + X[1] * n[1] + X[2] * n[2] - c.denominator() * dot(n, rm);
  if (p.is_zero()) throw Error("segment lies in the shoulder plane");
  std::vector<ShoulderPoint> found;
  for (const auto& r : isolate_real_roots(p, seg.t0, seg.t1, (seg.t1 - seg.t0) * rel_width)) {
    if (r.exact() && (r.lo == seg.t0 || r.lo == seg.t1)) continue;
    ShoulderPoint sp;
    if (auto q = exact_rational_root(r)) {
      sp.param = *q;
    } else {
      sp.param = simplest_between(r.lo, r.hi);
      sp.exact = false;
    }
    if (!(sp.param > seg.t0 && sp.param < seg.t1)) continue;
    sp.s = c.point(sp.param);
    auto l = triangle_coordinates(v[1], v[2], rm, sp.s);
    sp.lambda1 = l[0];
    sp.lambda2 = l[1];
    if (l[0] >= 0 && l[1] >= 0 && l[0] + l[1] <= 1) found.push_back(std::move(sp));
  }
  if (found.size() != 1)
    throw Error("segment [" + to_string(seg.t0) + ", " + to_string(seg.t1) + "] has " +
                std::to_string(found.size()) + " shoulder points");
  return found.front();
}

namespace {

Rational shoulder_distance(const Tetrahedron& tet, const Vec3q& target, const Rational& w1, const Rational& w2) {
  const Vec3q pm = (tet.v[0] + tet.v[3]) / Rational(2);
  auto l = shoulder_lambdas(w1, w2);
  Vec3q sp = pm + (tet.v[1] - pm) * l[0] + (tet.v[2] - pm) * l[1];
  Vec3q d = sp - target;
  return dot(d, d);
}

// Cauchy bound on the absolute value of real roots.
Rational root_bound(const UPoly& p) {
  Rational m = 0;
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, Rational(abs(p.coeff(i) / p.lead())));
  return m + 1;
}

std::vector<Rational> positive_rational_roots(const UPoly& p) {
  std::vector<Rational> out;
  if (p.degree() <= 0) return out;
  Rational b = root_bound(p);
  for (const auto& r : isolate_real_roots(p, 0, b, b / 1024)) {
    if (r.exact() && r.lo == 0) continue;
    if (auto q = exact_rational_root(r))
      if (*q > 0) out.push_back(*q);
  }
  return out;
}

}  // namespace

WeightSolution solve_weights(const Tetrahedron& tet, const Vec3q& target) {
  const Vec3q pm = (tet.v[0] + tet.v[3]) / Rational(2);
  const Vec3q u = tet.v[1] - pm, v = tet.v[2] - pm, d = target - pm;
  const MPoly w1 = MPoly::variable(2, 0), w2 = MPoly::variable(2, 1);
  const MPoly S = MPoly::constant(2, 2) + w1 * Rational(3) + w2 * Rational(3);
  // D = |a|^2 / S^2 with a = 3 w1 u + 3 w2 v - S d
  std::array<MPoly, 3> a;
  for (std::size_t k = 0; k < 3; ++k) a[k] = w1 * Rational(3 * u[k]) + w2 * Rational(3 * v[k]) - S * d[k];
  MPoly aa(2), au(2), av(2);
  for (std::size_t k = 0; k < 3; ++k) {
    aa += a[k] * a[k];
    au += a[k] * Rational(3 * (u[k] - d[k]));
    av += a[k] * Rational(3 * (v[k] - d[k]));
  }
  // numerators of dD/dw1 and dD/dw2 (times S^3)
  const MPoly N1 = S * au - aa * Rational(3);
  const MPoly N2 = S * av - aa * Rational(3);

  auto stationary = [&](const Rational& x, const Rational& y) {
    std::array<Rational, 2> pt{x, y};
    return N1.eval(pt) == 0 && N2.eval(pt) == 0;
  };

  WeightSolution best;
  // The map (w1, w2) -> (lambda1, lambda2) has an invertible Jacobian for
  // positive weights, so the stationary point comes from the projection of
  // the target onto the shoulder triangle's plane.
  std::optional<std::array<Rational, 2>> cand;
  try {
    auto l = triangle_coordinates(tet.v[1], tet.v[2], pm, target);
    cand = weights_from_lambdas(l[0], l[1]);
  } catch (const Error&) {
  }
  if (cand && stationary((*cand)[0], (*cand)[1])) {
    best = {(*cand)[0], (*cand)[1], shoulder_distance(tet, target, (*cand)[0], (*cand)[1]), WeightMethod::ClosedForm};
    return best;
  }
  // otherwise eliminate w2 and look for positive rational solutions
  bool have = false;
  if (!N1.is_zero() && !N2.is_zero() && N1.degree(1) > 0 && N2.degree(1) > 0) {
    UPoly R = resultant(N1, N2, 1).to_univariate(0);
    if (!R.is_zero()) {
      for (const auto& x : positive_rational_roots(R)) {
        UPoly g = gcd(N1.substitute(0, x).to_univariate(1), N2.substitute(0, x).to_univariate(1));
        for (const auto& y : positive_rational_roots(g)) {
          Rational D = shoulder_distance(tet, target, x, y);
          if (!have || D < best.D) {
            best = {x, y, D, WeightMethod::ClosedForm};
            have = true;
          }
        }
      }
    }
  }
  if (have) return best;
  best.method = WeightMethod::Fallback;
  if (cand) {
    best.w1 = (*cand)[0];
    best.w2 = (*cand)[1];
  }
  best.D = shoulder_distance(tet, target, best.w1, best.w2);
  return best;
}

WeightSolution solve_weights(const QuasiCubicSegment& seg, const ShoulderPoint& shoulder) {
  return solve_weights(seg.tet, shoulder.s);
}

double SegmentApproximation::max_error() const {
  double m = 0;
  for (const auto& p : pieces) m = std::max(m, p.error.max_error);
  return m;
}

ApproxPiece fit_segment(const QuasiCubicSegment& seg, int samples) {
  ApproxPiece p;
  p.segment = seg;
  p.shoulder = shoulder_point_segment(seg);
  p.weights = solve_weights(seg.tet, p.shoulder.s);
  p.bezier = RationalCubicBezier(seg.tet.v, p.weights.w1, p.weights.w2);
  p.ideal = implicit_ideal(p.bezier);
  p.error = error_functional(p.ideal, *seg.curve, seg.t0, seg.t1, samples);
  return p;
}

SegmentApproximation approximate_segment(const QuasiCubicSegment& seg, const ApproximationOptions& opts) {
  if (!(opts.delta > 0)) throw DomainError("delta must be positive");
  SegmentApproximation out;
  out.segment = seg;
  out.strategy = opts.strategy;
  std::function<void(ApproxPiece, int, double)> run = [&](ApproxPiece piece, int stall, double parent_error) {
    out.depth = std::max(out.depth, piece.depth);
    if (piece.error.max_error < opts.delta) {
      out.pieces.push_back(std::move(piece));
      return;
    }
    if (piece.depth >= opts.max_depth)
      throw NonConvergent("error " + std::to_string(piece.error.max_error) + " above " +
                          std::to_string(opts.delta) + " at depth " + std::to_string(piece.depth) + " on [" +
                          to_string(piece.segment.t0) + ", " + to_string(piece.segment.t1) + "]");
    if (piece.error.max_error >= parent_error) ++stall;
    const QuasiCubicSegment& s = piece.segment;
    Rational tm;
    if (opts.strategy == SplitStrategy::ArcLengthMidpoint || stall >= opts.stall_limit) {
      tm = arc_length_midpoint(*s.curve, s.t0, s.t1);
      ++out.arc_length_splits;
    } else {
      tm = piece.shoulder.param;
      ++out.shoulder_splits;
    }
    const double err = piece.error.max_error;
    for (auto [a, b] : {std::pair<Rational, Rational>{s.t0, tm}, {tm, s.t1}}) {
      ApproxPiece child = fit_segment(make_segment(s.curve, a, b), opts.samples);
      child.depth = piece.depth + 1;
      run(std::move(child), stall, err);
    }
  };
  ApproxPiece root = fit_segment(seg, opts.samples);
  run(std::move(root), 0, INFINITY);
  return out;
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
               double whole, double eps, int depth) {
  const double m = (a + b) / 2, lm = (a + m) / 2, rm = (m + b) / 2;
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6 * (fa + 4 * flm + fm), right = (b - m) / 6 * (fm + 4 * frm + fb);
  const double diff = left + right - whole;
  if (depth <= 0 || std::fabs(diff) <= 15 * eps) return left + right + diff / 15;
  return simpson(f, a, m, fa, flm, fm, left, eps / 2, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, eps / 2, depth - 1);
}

}  // namespace

double arc_length(const RationalCurve& c, double a, double b) {
  if (a == b) return 0;
  auto speed = [&](double t) { return norm(c.derivative(t)); };
  // coarse panels first so that short features are not skipped
  const int panels = 16;
  double total = 0;
  for (int i = 0; i < panels; ++i) {
    double x0 = a + (b - a) * i / panels, x1 = i + 1 == panels ? b : a + (b - a) * (i + 1) / panels;
    double f0 = speed(x0), f1 = speed(x1), fm = speed((x0 + x1) / 2);
    double whole = (x1 - x0) / 6 * (f0 + 4 * fm + f1);
    total += simpson(speed, x0, x1, f0, fm, f1, whole, 1e-14 * std::max(1.0, std::fabs(whole)), 40);
  }
  return total;
}

Rational arc_length_midpoint(const RationalCurve& c, const Rational& t0, const Rational& t1) {
  const double a = t0.get_d(), b = t1.get_d();
  const double half = arc_length(c, a, b) / 2;
  double lo = a, hi = b;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * (b - a); ++i) {
    double mid = (lo + hi) / 2;
    if (arc_length(c, a, mid) < half)
      lo = mid;
    else
      hi = mid;
  }
  const double tm = (lo + hi) / 2;
  const double eps = 1e-11 * (b - a);
  Rational q = simplest_between(from_double(tm - eps), from_double(tm + eps));
  if (!(q > t0 && q < t1)) q = (t0 + t1) / 2;
  return q;
}

Rational arc_length_midpoint(const QuasiCubicSegment& seg) { return arc_length_midpoint(*seg.curve, seg.t0, seg.t1); }

}  // namespace certicurve
