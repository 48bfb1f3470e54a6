#include "certicurve/segmentation.hpp"

#include <algorithm>

#include "certicurve/errors.hpp"
#include "certicurve/roots.hpp"

namespace certicurve {

Tetrahedron associated_tetrahedron(const RationalCurve& c, const Rational& t0, const Rational& t1) {
  if (!(t0 < t1)) throw DomainError("segment parameters out of order");
  FrenetData f0 = frenet(c, t0), f1 = frenet(c, t1);
  return tetrahedron_from_frames(f0.point_exact, f0.tangent_plus, f0.binormal_plus, f1.point_exact, f1.tangent_minus,
                                 f1.binormal_minus);
}

namespace {

// Positive rescaling to integer coefficients with unit content.
VecPoly normalize(VecPoly v) {
  Integer l = 1, g = 0;
  for (const auto& p : v)
    for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  for (const auto& p : v)
    for (const auto& c : p.coeffs()) {
      Integer n = c.get_num() * (l / c.get_den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    }
  if (g == 0) return v;
  Rational s(l, g);
  s.canonicalize();
  for (auto& p : v) p *= s;
  return v;
}

using MVec = std::array<MPoly, 3>;

MVec lift(const VecPoly& v, std::size_t nvars, std::size_t var) {
  return {MPoly::from_univariate(v[0], nvars, var), MPoly::from_univariate(v[1], nvars, var),
          MPoly::from_univariate(v[2], nvars, var)};
}

MPoly mdot(const MVec& a, const MVec& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

MVec mcross(const MVec& a, const MVec& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Smallest root in (min_delta, max_delta], else len.
Rational first_positive_root(const UPoly& p, const Rational& min_delta, const Rational& max_delta,
                             const Rational& len) {
  if (p.is_zero()) return 0;
  auto rs = isolate_real_roots(p, 0, len, len / 1024);
  // whether the root of r lies in (x, r.hi] when r.lo <= x < r.hi
  auto above = [](const RootInterval& r, const Rational& x) {
    int sx = sign(r.poly.eval(x));
    return sx != 0 && sx == sign(r.poly.eval(r.lo));
  };
  for (const auto& r : rs) {
    if (r.hi <= min_delta) continue;
    if (r.lo <= min_delta && !r.exact() && !above(r, min_delta)) continue;
    if (r.lo > max_delta) break;
    if (r.lo <= max_delta && r.hi > max_delta && !r.exact() && above(r, max_delta)) break;
    return r.lo > min_delta ? r.lo : min_delta;
  }
  return len;
}

Rational snap(const Rational& t0, const Rational& delta) {
  return simplest_between(t0 + delta * Rational(63, 64), t0 + delta);
}

}  // namespace

SegmentationContext::SegmentationContext(std::shared_ptr<const RationalCurve> curve, VertexList vertices,
                                         SegmentationOptions opts)
    : curve_(std::move(curve)), vertices_(std::move(vertices)), opts_(std::move(opts)) {
  const RationalCurve& c = *curve_;
  VecPoly Dr = normalize(c.reduced_tangent());
  VecPoly Br = normalize(c.reduced_binormal());
  // chord(s1, s2) = X(s2) W(s1) - X(s1) W(s2)
  auto chord = [&](std::size_t nv) {
    MVec X1 = lift(c.numerators(), nv, 0), X2 = lift(c.numerators(), nv, 1);
    MPoly W1 = MPoly::from_univariate(c.denominator(), nv, 0), W2 = MPoly::from_univariate(c.denominator(), nv, 1);
    MVec ch;
    for (std::size_t i = 0; i < 3; ++i) ch[i] = X2[i] * W1 - X1[i] * W2;
    return ch;
  };
  MVec D1 = lift(Dr, 2, 0), D2 = lift(Dr, 2, 1), B2 = lift(Br, 2, 1);
  MVec ch = chord(2);
  cond_[0] = mdot(D1, B2);
  cond_[1] = mdot(D1, mcross(ch, D2));
  cond_[2] = mdot(ch, B2);
  MVec E1 = lift(Dr, 3, 0), E2 = lift(Dr, 3, 1), E3 = lift(Dr, 3, 2);
  cond_[3] = mdot(E1, mcross(E2, E3));
  for (int k = 0; k < 3; ++k) cond_[static_cast<std::size_t>(k)].strip_difference(0, 1);
  cond_[3].strip_difference(0, 1);
  cond_[3].strip_difference(0, 2);
  cond_[3].strip_difference(1, 2);
  for (const auto& p : cond_)
    if (p.is_zero()) throw UnsupportedCurve("segmentation condition vanishes identically");
}

bool SegmentationContext::certify(int k, const Rational& t0, const Rational& t1, std::size_t* boxes) const {
  const MPoly& f = condition(k);
  const std::size_t dim = f.nvars();
  const Rational len = t1 - t0;
  if (len <= 0) return false;
  SignCertificateOptions o;
  o.max_depth = opts_.max_depth;
  o.max_boxes = opts_.max_boxes;
  o.zero_corners = {std::vector<bool>(dim, false), std::vector<bool>(dim, true)};
  Rational zone = opts_.corner_zone * (curve_->hi() - curve_->lo()) / len;
  if (vertices_.is_character_param(t0)) o.excluded_corners.push_back(std::vector<bool>(dim, false));
  if (vertices_.is_character_param(t1)) o.excluded_corners.push_back(std::vector<bool>(dim, true));
  o.exclusion_zone = zone;
  o.ordered = true;

  if (opts_.mode == CertificationMode::LineRestricted) {
    // far line (2D) or far face (3D) only
    MPoly g = f.substitute(dim - 1, t1);
    if (dim == 2) {
      UPoly u = g.to_univariate(0);
      if (u.is_zero()) return false;
      // roots inside the corner zone of a characteristic end are not examined
      Rational edge = vertices_.is_character_param(t1) ? Rational(t1 - zone * len) : Rational(t1);
      for (auto& r : isolate_real_roots(u, t0, t1, len / 1024)) {
        if (r.exact() && r.lo == t1) continue;
        if (r.hi > edge && r.lo < edge) refine(r, zone * len / 4);
        if (r.lo >= edge) continue;
        return false;
      }
      return true;
    }
    std::vector<std::size_t> map{0, 1, 2};
    MPoly g2 = g.remap(2, std::span<const std::size_t>(map.data(), 3));
    Box b{{{t0, t1}, {t0, t1}}};
    SignCertificateOptions o2 = o;
    o2.zero_corners = {{false, false}, {true, true}};
    o2.excluded_corners.clear();
    for (const auto& ec : o.excluded_corners) o2.excluded_corners.push_back({ec[0], ec[1]});
    auto res = certify_sign(g2, b, o2);
    if (boxes) *boxes += res.boxes;
    return res.verdict != SignVerdict::Indeterminate;
  }
  Box b;
  for (std::size_t d = 0; d < dim; ++d) b.ranges.emplace_back(t0, t1);
  auto res = certify_sign(f, b, o);
  if (boxes) *boxes += res.boxes;
  return res.verdict != SignVerdict::Indeterminate;
}

BoundarySearch condition_bound(const SegmentationContext& ctx, int k, const Rational& t0, const Rational& cap) {
  if (!(t0 < cap)) throw DomainError("empty search interval");
  const MPoly& f = ctx.condition(k);
  const std::size_t dim = f.nvars();
  const Rational L = cap - t0;
  const RationalCurve& c = ctx.curve();
  const Rational zone = ctx.options().corner_zone * (c.hi() - c.lo());
  Rational min_delta = ctx.vertices().is_character_param(t0) ? zone : Rational(0);
  Rational max_delta = ctx.vertices().is_character_param(cap) ? Rational(L - zone) : L;

  // restriction to the edge s_1 = ... = s_{dim-1} = t0
  MPoly e = f;
  for (std::size_t d = 0; d + 1 < dim; ++d) e = e.substitute(d, t0);
  UPoly edge = e.to_univariate(dim - 1).shift(t0);
  // restriction to the diagonal
  MPoly dg = f;
  for (std::size_t d = 1; d < dim; ++d) dg = dg.identify(0, d);
  UPoly diag = dg.to_univariate(0).shift(t0);

  BoundarySearch bs;
  bs.delta2_star = first_positive_root(edge, min_delta, max_delta, L);
  bs.delta1_star = first_positive_root(diag, min_delta, max_delta, L);
  Rational delta = std::min(bs.delta1_star, bs.delta2_star);
  Rational limit = delta;  // parameters beyond t0 + limit are known to fail
  bool capped = delta < L;
  if (capped) delta = delta * Rational(15, 16);
  if (delta <= 0) throw NoCertifiedBound("condition " + std::to_string(k) + " fails at the start of the segment");

  Rational hi = capped ? snap(t0, delta) : cap;
  Rational failed = capped ? Rational(t0 + limit) : Rational(cap);
  bool ok = ctx.certify(k, t0, hi, &bs.boxes);
  while (!ok) {
    if (bs.halvings >= ctx.options().max_halvings)
      throw NoCertifiedBound("condition " + std::to_string(k) + " not certified after " +
                             std::to_string(bs.halvings) + " halvings at t0 = " + to_string(t0));
    failed = hi;
    ++bs.halvings;
    hi = snap(t0, (hi - t0) / 2);
    ok = ctx.certify(k, t0, hi, &bs.boxes);
  }
  if (hi != cap) {
    for (int s = 0; s < ctx.options().extend_steps; ++s) {
      Rational mid = simplest_between(hi + (failed - hi) * Rational(7, 16), hi + (failed - hi) / 2);
      if (mid <= hi || mid >= failed) break;
      if (ctx.certify(k, t0, mid, &bs.boxes))
        hi = mid;
      else
        failed = mid;
    }
  }
  bs.t_star = hi;
  return bs;
}

BoundarySearch condition_I_bound(const SegmentationContext& ctx, const Rational& t0, const Rational& cap) {
  return condition_bound(ctx, 1, t0, cap);
}
BoundarySearch condition_II_bound(const SegmentationContext& ctx, const Rational& t0, const Rational& cap) {
  return condition_bound(ctx, 2, t0, cap);
}
BoundarySearch condition_III_bound(const SegmentationContext& ctx, const Rational& t0, const Rational& cap) {
  return condition_bound(ctx, 3, t0, cap);
}
BoundarySearch condition_IV_bound(const SegmentationContext& ctx, const Rational& t0, const Rational& cap) {
  return condition_bound(ctx, 4, t0, cap);
}

QuasiCubicSegment make_segment(std::shared_ptr<const RationalCurve> c, const Rational& t0, const Rational& t1) {
  QuasiCubicSegment s;
  s.curve = std::move(c);
  s.t0 = t0;
  s.t1 = t1;
  s.start = frenet(*s.curve, t0);
  s.end = frenet(*s.curve, t1);
  s.tet = tetrahedron_from_frames(s.start.point_exact, s.start.tangent_plus, s.start.binormal_plus,
                                  s.end.point_exact, s.end.tangent_minus, s.end.binormal_minus);
  return s;
}

std::vector<QuasiCubicSegment> segment_curve(const SegmentationContext& ctx) {
  std::vector<QuasiCubicSegment> out;
  const auto& ps = ctx.vertices().all_params;
  for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
    const Rational a = ps[i].value, b = ps[i + 1].value;
    Rational t0 = a;
    while (t0 < b) {
      SegmentCertificate cert;
      cert.mode = ctx.options().mode;
      Rational cap = b;
      for (int k = 1; k <= 4; ++k) {
        cert.searches[static_cast<std::size_t>(k - 1)] = condition_bound(ctx, k, t0, cap);
        cap = cert.searches[static_cast<std::size_t>(k - 1)].t_star;
        cert.holds[static_cast<std::size_t>(k - 1)] = true;
      }
      Rational t1 = cap;
      std::optional<QuasiCubicSegment> seg;
      for (int tries = 0; tries < 20 && !seg; ++tries) {
        try {
          seg = make_segment(ctx.curve_ptr(), t0, t1);
        } catch (const DegenerateTetrahedron&) {
          t1 = snap(t0, (t1 - t0) / 2);
        }
      }
      if (!seg) throw DegenerateTetrahedron("no non-degenerate tetrahedron near t0 = " + to_string(t0));
      seg->cert = cert;
      out.push_back(std::move(*seg));
      t0 = t1;
    }
  }
  return out;
}

std::vector<QuasiCubicSegment> segment_curve(std::shared_ptr<const RationalCurve> c, const VertexList& vl,
                                             const SegmentationOptions& opts) {
  SegmentationContext ctx(std::move(c), vl, opts);
  return segment_curve(ctx);
}

std::array<Rational, 3> osculating_ratios(const QuasiCubicSegment& seg, const Rational& t) {
  FrenetData f = frenet(*seg.curve, t);
  return osculating_ratios(seg.tet, f.point_exact, f.binormal_plus);
}

}  // namespace certicurve
