#include "certicurve/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "certicurve/errors.hpp"
#include "certicurve/parallel.hpp"

namespace certicurve {

const char* to_string(PairVerdict v) {
  switch (v) {
    case PairVerdict::Disjoint:
      return "Disjoint";
    case PairVerdict::FirstCase:
      return "FirstCase";
    case PairVerdict::Colliding:
      return "Colliding";
  }
  return "?";
}

bool adjacent_pieces(std::size_t i, std::size_t j) { return i + 1 == j || j + 1 == i || i == j; }

bool first_case_holds(const RationalCubicBezier& a, const RationalCubicBezier& b) {
  for (std::size_t ea : {0u, 3u})
    for (std::size_t eb : {0u, 3u}) {
      if (a.point(ea) != b.point(eb)) continue;
      RationalCubicBezier A = ea == 0 ? a : a.reversed();
      RationalCubicBezier B = eb == 0 ? b : b.reversed();
      const Vec3q& P = A.point(0);
      Vec3q ra = A.point(1) - P, rb = B.point(1) - P;
      if (ra.is_zero() || !same_direction(ra, rb)) continue;
      Vec3q n = cross(ra, A.point(3) - P);
      int sa = sign(dot(n, A.point(2) - P));
      int sb = sign(dot(n, B.point(2) - P));
      if (sa != 0 && sa == sb) return true;
    }
  return false;
}

TopologyReport check_topology(const std::vector<TopologyPiece>& pieces,
                              const std::vector<std::pair<std::size_t, std::size_t>>* pairs) {
  std::vector<std::pair<std::size_t, std::size_t>> all;
  if (pairs) {
    all = *pairs;
  } else {
    for (std::size_t i = 0; i < pieces.size(); ++i)
      for (std::size_t j = i + 2; j < pieces.size(); ++j) all.emplace_back(i, j);
  }
  TopologyReport rep;
  rep.checks.resize(all.size());
  parallel_for(all.size(), [&](std::size_t k) {
    auto [i, j] = all[k];
    if (i > j) std::swap(i, j);
    if (j >= pieces.size()) throw std::out_of_range("piece index out of range");
    PairCheck& pc = rep.checks[k];
    pc.i = i;
    pc.j = j;
    if (interiors_disjoint(pieces[i].tet, pieces[j].tet))
      pc.verdict = PairVerdict::Disjoint;
    else if (first_case_holds(pieces[i].bezier, pieces[j].bezier))
      pc.verdict = PairVerdict::FirstCase;
    else
      pc.verdict = PairVerdict::Colliding;
  });
  for (const auto& pc : rep.checks)
    if (pc.verdict == PairVerdict::Colliding) {
      rep.refine.push_back(pc.i);
      rep.refine.push_back(pc.j);
    }
  std::sort(rep.refine.begin(), rep.refine.end());
  rep.refine.erase(std::unique(rep.refine.begin(), rep.refine.end()), rep.refine.end());
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

template <class T>
using H = std::array<T, 4>;  // (w x, w y, w z, w)

H<Rational> lift(const Vec3q& p, const Rational& w) { return {w * p[0], w * p[1], w * p[2], w}; }

template <class T>
H<T> mix(const H<T>& a, const H<T>& b, const T& t) {
  H<T> r;
  for (int k = 0; k < 4; ++k) r[k] = (1 - t) * a[k] + t * b[k];
  return r;
}

template <class T>
H<T> de_boor(const std::vector<H<T>>& P, const std::vector<T>& U, std::size_t k, const T& u) {
  constexpr std::size_t p = 3;
  H<T> d[p + 1];
  for (std::size_t j = 0; j <= p; ++j) d[j] = P[j + k - p];
  for (std::size_t r = 1; r <= p; ++r)
    for (std::size_t j = p; j >= r; --j) {
      T a = (u - U[j + k - p]) / (U[j + 1 + k - r] - U[j + k - p]);
      d[j] = mix(d[j - 1], d[j], a);
    }
  return d[p];
}

// Index k with U[k] <= u < U[k + 1], clamped to the last non-empty span.
template <class T>
std::size_t find_span(const std::vector<T>& U, std::size_t n, const T& u) {
  if (u >= U[n]) return n - 1;
  auto it = std::upper_bound(U.begin() + 3, U.begin() + static_cast<std::ptrdiff_t>(n) + 1, u);
  return static_cast<std::size_t>(it - U.begin()) - 1;
}

}  // namespace

BSplineCurve::BSplineCurve(std::vector<Vec3q> points, std::vector<Rational> weights, std::vector<Rational> knots)
    : p_(std::move(points)), w_(std::move(weights)), u_(std::move(knots)) {
  const std::size_t n = p_.size();
  if (n < 4 || w_.size() != n || u_.size() != n + 4)
    throw DomainError("b-spline needs n >= 4 points, n weights and n + 4 knots");
  for (const auto& w : w_)
    if (sign(w) <= 0) throw DomainError("b-spline weights must be positive");
  for (std::size_t i = 1; i < u_.size(); ++i)
    if (u_[i] < u_[i - 1]) throw DomainError("knots must be nondecreasing");
  for (int i = 1; i < 4; ++i)
    if (u_[static_cast<std::size_t>(i)] != u_[0] || u_[n + static_cast<std::size_t>(i)] != u_[n])
      throw DomainError("knot vector must be clamped");
  if (!(u_[3] < u_[n])) throw DomainError("empty parameter range");
  for (std::size_t i = 4; i < n; ++i) {
    std::size_t m = 1;
    while (i + m < n && u_[i + m] == u_[i]) ++m;
    if (m > 3) throw DomainError("interior knot multiplicity exceeds 3");
  }

  // Raise every interior knot to multiplicity 3.
  std::vector<H<Rational>> P(n);
  for (std::size_t i = 0; i < n; ++i) P[i] = lift(p_[i], w_[i]);
  std::vector<Rational> U = u_;
  for (const Rational& t : breakpoints()) {
    if (t == lo() || t == hi()) continue;
    for (int m = multiplicity(t); m < 3; ++m) {
      std::size_t k = find_span(U, P.size(), t);
      std::vector<H<Rational>> Q(P.size() + 1);
      for (std::size_t i = 0; i < Q.size(); ++i) {
        if (i + 3 <= k)
          Q[i] = P[i];
        else if (i > k)
          Q[i] = P[i - 1];
        else {
          Rational a = (t - U[i]) / (U[i + 3] - U[i]);
          Q[i] = mix(P[i - 1], P[i], a);
        }
      }
      U.insert(U.begin() + static_cast<std::ptrdiff_t>(k) + 1, t);
      P = std::move(Q);
    }
  }
  for (std::size_t j = 0; j + 3 < P.size(); j += 3) {
    std::array<Vec3q, 4> pts;
    std::array<Rational, 4> ws;
    for (std::size_t k = 0; k < 4; ++k) {
      const auto& h = P[j + k];
      ws[k] = h[3];
      pts[k] = Vec3q(h[0] / h[3], h[1] / h[3], h[2] / h[3]);
    }
    pieces_.emplace_back(pts, ws);
    starts_.push_back(U[j + 3]);
  }
  starts_.push_back(hi());
}

std::vector<Rational> BSplineCurve::breakpoints() const {
  std::vector<Rational> b;
  for (const auto& u : u_)
    if (b.empty() || b.back() != u) b.push_back(u);
  return b;
}

int BSplineCurve::multiplicity(const Rational& u) const {
  return static_cast<int>(std::count(u_.begin(), u_.end(), u));
}

Vec3q BSplineCurve::eval(const Rational& u) const {
  if (u < lo() || u > hi()) throw DomainError("spline parameter out of range");
  std::vector<H<Rational>> P(p_.size());
  for (std::size_t i = 0; i < p_.size(); ++i) P[i] = lift(p_[i], w_[i]);
  auto h = de_boor(P, u_, find_span(u_, p_.size(), u), u);
  return {h[0] / h[3], h[1] / h[3], h[2] / h[3]};
}

Vec3d BSplineCurve::eval(double u) const {
  std::vector<H<double>> P(p_.size());
  for (std::size_t i = 0; i < p_.size(); ++i) {
    double w = w_[i].get_d();
    Vec3d x = to_double(p_[i]);
    P[i] = {w * x[0], w * x[1], w * x[2], w};
  }
  std::vector<double> U(u_.size());
  for (std::size_t i = 0; i < u_.size(); ++i) U[i] = u_[i].get_d();
  u = std::clamp(u, U.front(), U.back());
  auto h = de_boor(P, U, find_span(U, p_.size(), u), u);
  return {h[0] / h[3], h[1] / h[3], h[2] / h[3]};
}

std::size_t BSplineCurve::span(double u, bool from_left) const {
  std::size_t i = 0;
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    double s = starts_[k].get_d();
    if (from_left ? s < u : s <= u) i = k;
  }
  return i;
}

Vec3d BSplineCurve::derivative(double u, bool from_left) const {
  std::size_t i = span(u, from_left);
  double a = starts_[i].get_d(), b = starts_[i + 1].get_d();
  return pieces_[i].derivative((u - a) / (b - a)) / (b - a);
}

// ---------------------------------------------------------------------------

double BSplineConversion::spline_parameter(std::size_t i, double s) const {
  double r = rho[i].get_d();
  double t = s / (r * (1 - s) + s);
  double a = piece_start[i].get_d(), b = piece_end[i].get_d();
  return a + t * (b - a);
}

Rational BSplineConversion::spline_parameter(std::size_t i, const Rational& s) const {
  Rational t = s / (rho[i] * (1 - s) + s);
  return piece_start[i] + t * (piece_end[i] - piece_start[i]);
}

namespace {

Rational chord(const RationalCubicBezier& b) {
  double c = norm(to_double(b.point(3) - b.point(0)));
  if (!(c > 0)) c = norm(to_double(b.point(1) - b.point(0))) + norm(to_double(b.point(2) - b.point(1)));
  if (!(c > 0)) throw DomainError("piece has no extent");
  return simplest_between(Rational(c * (1 - 1e-9)), Rational(c * (1 + 1e-9)));
}

// v with b = v a for same-direction nonzero a, b.
Rational ratio(const Vec3q& a, const Vec3q& b) {
  for (int k = 0; k < 3; ++k)
    if (a[k] != 0) return b[k] / a[k];
  return 0;
}

}  // namespace

BSplineConversion to_bspline(const std::vector<RationalCubicBezier>& pieces) {
  return to_bspline(pieces, std::vector<JointTag>(pieces.empty() ? 0 : pieces.size() - 1, JointTag::Smooth));
}

BSplineConversion to_bspline(const std::vector<RationalCubicBezier>& pieces, const std::vector<JointTag>& tags) {
  const std::size_t n = pieces.size();
  if (n == 0) throw DomainError("no pieces to convert");
  if (tags.size() + 1 != n) throw std::invalid_argument("one joint tag per pair of neighbouring pieces");
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (pieces[i].point(3) != pieces[i + 1].point(0))
      throw DomainError("pieces " + std::to_string(i) + " and " + std::to_string(i + 1) + " do not share an endpoint");

  BSplineConversion out;
  std::vector<RationalCubicBezier> scaled{pieces[0]};
  std::vector<Rational> h{chord(pieces[0])};
  std::vector<int> mult;
  out.rho.push_back(1);

  for (std::size_t i = 0; i + 1 < n; ++i) {
    const RationalCubicBezier& A = scaled.back();
    const RationalCubicBezier& B = pieces[i + 1];
    const auto& a = A.weights();
    const auto& wb = B.weights();
    Rational c = a[3] / wb[0];
    Rational beta1 = c * wb[1];
    Vec3q da = A.point(3) - A.point(2), db = B.point(1) - B.point(0);
    bool g1 = !da.is_zero() && !db.is_zero() && same_direction(da, db);
    Rational hA = h.back(), hB = chord(B) * hA / chord(A);
    Rational rho = 1;
    JointReport jr;
    jr.tag = tags[i];
    jr.g1 = g1;
    jr.multiplicity = 3;
    if (tags[i] == JointTag::Smooth && g1) {
      Rational v = ratio(da, db);
      Rational den = a[2] * v + a[2] - a[3] * v;
      if (sign(den) > 0) {
        // homogeneous C1: the joint point drops out of the control polygon
        Rational r = a[3] * v / den;
        hB = r * hA;
        rho = r * a[2] / (v * beta1);
        jr.multiplicity = 2;
      } else {
        rho = a[2] * hB / (beta1 * v * hA);
      }
      jr.c1 = true;
    }
    std::array<Rational, 4> w;
    Rational f = c;
    for (std::size_t k = 0; k < 4; ++k) {
      w[k] = f * wb[k];
      f *= rho;
    }
    scaled.emplace_back(B.points(), w);
    h.push_back(hB);
    mult.push_back(jr.multiplicity);
    out.rho.push_back(rho);
    out.joints.push_back(jr);
  }

  Rational total = 0;
  for (const auto& x : h) total += x;
  std::vector<Vec3q> P;
  std::vector<Rational> W;
  std::vector<Rational> U(4, Rational(0));
  Rational acc = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& b = scaled[i];
    if (i == 0) {
      P.push_back(b.point(0));
      W.push_back(b.weights()[0]);
    } else if (mult[i - 1] == 2) {
      P.pop_back();
      W.pop_back();
    }
    for (std::size_t k = 1; k < 4; ++k) {
      P.push_back(b.point(k));
      W.push_back(b.weights()[k]);
    }
    out.piece_start.push_back(acc / total);
    acc += h[i];
    out.piece_end.push_back(i + 1 == n ? Rational(1) : acc / total);
    if (i + 1 < n) {
      out.joints[i].u = out.piece_end.back();
      for (int m = 0; m < mult[i]; ++m) U.push_back(out.piece_end.back());
    }
  }
  for (int m = 0; m < 4; ++m) U.emplace_back(1);
  out.spline = BSplineCurve(std::move(P), std::move(W), std::move(U));

  // The extracted spans must reproduce the rescaled pieces exactly.
  const auto& bz = out.spline.bezier_pieces();
  if (bz.size() != n) throw Error("b-spline conversion lost a piece");
  for (std::size_t i = 0; i < n; ++i) {
    Rational s = bz[i].weights()[0] / scaled[i].weights()[0];
    for (std::size_t k = 0; k < 4; ++k)
      if (bz[i].point(k) != scaled[i].point(k) || bz[i].weights()[k] != s * scaled[i].weights()[k])
        throw Error("b-spline conversion mismatch on piece " + std::to_string(i));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<ApproxPiece> split_piece(const ApproxPiece& p, const ApproximationOptions& opts) {
  const auto& seg = p.segment;
  Rational tm = p.shoulder.param;
  if (!(seg.t0 < tm && tm < seg.t1)) tm = arc_length_midpoint(seg);
  std::vector<ApproxPiece> out;
  for (auto [a, b] : {std::pair{seg.t0, tm}, std::pair{tm, seg.t1}}) {
    SegmentApproximation sa = approximate_segment(make_segment(seg.curve, a, b), opts);
    for (auto& q : sa.pieces) {
      q.depth += p.depth + 1;
      out.push_back(std::move(q));
    }
  }
  return out;
}

namespace {

template <class F>
auto run_stage(const char* stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const PipelineError&) {
    throw;
  } catch (const std::exception& e) {
    throw PipelineError(stage, e.what());
  }
}

std::vector<TopologyPiece> topology_pieces(const std::vector<ApproxPiece>& ps) {
  std::vector<TopologyPiece> out;
  out.reserve(ps.size());
  for (const auto& p : ps) out.push_back({p.bezier, p.bezier.control_tetrahedron()});
  return out;
}

using PairKey = std::pair<std::size_t, std::size_t>;

// |a x b| for unit directions; opposite directions count as a full mismatch.
double cross_norm(const Vec3d& a, const Vec3d& b) {
  Vec3d x = normalized(a), y = normalized(b);
  return dot(x, y) > 0 ? norm(cross(x, y)) : 1.0;
}

}  // namespace

TopologyCertificate refine_topology(std::vector<ApproxPiece>& pieces, std::vector<std::size_t>& owner,
                                    const ApproximationOptions& opts, int max_rounds) {
  if (owner.size() != pieces.size()) owner.assign(pieces.size(), 0);
  TopologyCertificate tc;
  std::vector<PairKey> todo;
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t j = i + 2; j < pieces.size(); ++j) todo.emplace_back(i, j);
  std::map<PairKey, PairVerdict> verdict;

  for (;;) {
    TopologyReport rep = check_topology(topology_pieces(pieces), &todo);
    tc.checked += todo.size();
    for (const auto& pc : rep.checks) verdict[{pc.i, pc.j}] = pc.verdict;
    if (rep.ok()) break;
    if (tc.rounds >= max_rounds)
      throw TopologyUnresolved("tetrahedra still collide after " + std::to_string(tc.rounds) + " refinement rounds");
    ++tc.rounds;
    tc.refined += rep.refine.size();

    std::vector<ApproxPiece> next;
    std::vector<std::size_t> next_owner, parent;
    std::vector<bool> changed;
    std::vector<std::vector<ApproxPiece>> kids(pieces.size());
    parallel_for(rep.refine.size(), [&](std::size_t k) {
      std::size_t i = rep.refine[k];
      kids[i] = split_piece(pieces[i], opts);
    });
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      bool split = std::binary_search(rep.refine.begin(), rep.refine.end(), i);
      if (!split) {
        next.push_back(std::move(pieces[i]));
        next_owner.push_back(owner[i]);
        parent.push_back(i);
        changed.push_back(false);
        continue;
      }
      for (auto& q : kids[i]) {
        next.push_back(std::move(q));
        next_owner.push_back(owner[i]);
        parent.push_back(i);
        changed.push_back(true);
      }
    }

    // Sub-tetrahedra stay inside their parents, so only pairs whose parents
    // were not already separated need another look.
    std::map<PairKey, PairVerdict> inherited;
    todo.clear();
    for (std::size_t x = 0; x < next.size(); ++x)
      for (std::size_t y = x + 2; y < next.size(); ++y) {
        auto it = parent[x] == parent[y] ? verdict.end() : verdict.find({parent[x], parent[y]});
        bool keep = it != verdict.end() &&
                    (it->second == PairVerdict::Disjoint ||
                     (it->second == PairVerdict::FirstCase && !changed[x] && !changed[y]));
        if (keep)
          inherited[{x, y}] = it->second;
        else
          todo.emplace_back(x, y);
      }
    verdict = std::move(inherited);
    pieces = std::move(next);
    owner = std::move(next_owner);
  }

  tc.pairs = verdict.size();
  for (const auto& [k, v] : verdict) {
    if (v == PairVerdict::Disjoint) ++tc.disjoint;
    if (v == PairVerdict::FirstCase) ++tc.first_case;
  }
  tc.certified = true;
  return tc;
}

CertifiedResult certify(std::shared_ptr<const RationalCurve> c, double delta, CertifyOptions opts) {
  if (!c) throw std::invalid_argument("null curve");
  if (!(delta > 0)) throw DomainError("delta must be positive");
  opts.approx.delta = delta;
  CertifiedResult res;
  res.curve = c;
  res.delta = delta;

  run_stage("characters", [&] {
    Rational w = sign(opts.root_width) > 0 ? opts.root_width : default_root_width(*c);
    res.vertices = build_vertex_list(*c, w);
  });

  run_stage("segmentation", [&] {
    SegmentationContext ctx(c, res.vertices, opts.segmentation);
    res.segments = segment_curve(ctx);
  });

  run_stage("approximation", [&] {
    std::vector<SegmentApproximation> apx(res.segments.size());
    parallel_for(apx.size(), [&](std::size_t i) { apx[i] = approximate_segment(res.segments[i], opts.approx); });
    for (std::size_t i = 0; i < apx.size(); ++i) {
      res.arc_length_splits += apx[i].arc_length_splits;
      res.shoulder_splits += apx[i].shoulder_splits;
      for (auto& p : apx[i].pieces) {
        res.pieces.push_back(std::move(p));
        res.piece_segment.push_back(i);
      }
    }
  });

  run_stage("topology", [&] {
    res.topology = refine_topology(res.pieces, res.piece_segment, opts.approx, opts.topology_rounds);
  });

  run_stage("assembly", [&] {
    std::vector<RationalCubicBezier> bz;
    std::vector<JointTag> tags;
    for (std::size_t i = 0; i < res.pieces.size(); ++i) {
      bz.push_back(res.pieces[i].bezier);
      if (i + 1 == res.pieces.size()) break;
      FrenetData f = frenet(*c, res.pieces[i].segment.t1);
      tags.push_back(same_direction(f.tangent_minus, f.tangent_plus) ? JointTag::Smooth : JointTag::Cusp);
    }
    res.spline = to_bspline(bz, tags);
  });

  run_stage("verification", [&] {
    for (const auto& p : res.pieces) res.global_max_error = std::max(res.global_max_error, p.error.max_error);
    if (!(res.global_max_error < delta))
      throw Error("max error " + std::to_string(res.global_max_error) + " not below delta");
    const auto& sp = res.spline;
    for (std::size_t vi = 0; vi < res.vertices.vertices.size(); ++vi) {
      const auto& v = res.vertices.vertices[vi];
      if (!v.is_character()) continue;
      for (const auto& prm : v.params) {
        PreservedFeature pf;
        pf.vertex = vi;
        pf.t = prm.value;
        pf.point = c->point(prm.value);
        std::size_t k = res.pieces.size();
        for (std::size_t i = 0; i < res.pieces.size(); ++i)
          if (res.pieces[i].segment.t0 == prm.value) k = i;
        if (k < res.pieces.size())
          pf.u = sp.piece_start[k];
        else if (prm.value == res.pieces.back().segment.t1)
          pf.u = sp.spline.hi();
        else
          throw Error("characteristic parameter " + to_string(prm.value) + " is not a piece boundary");
        pf.on_spline = sp.spline.eval(pf.u) == pf.point;
        FrenetData f = frenet(*c, prm.value);
        double u = pf.u.get_d();
        if (pf.u > sp.spline.lo()) pf.tangent_cross_in = cross_norm(sp.spline.derivative(u, true), unit(f.tangent_minus));
        if (pf.u < sp.spline.hi()) pf.tangent_cross_out = cross_norm(sp.spline.derivative(u, false), unit(f.tangent_plus));
        pf.verified = pf.on_spline && pf.tangent_cross_in <= 1e-9 && pf.tangent_cross_out <= 1e-9;
        if (!pf.verified) throw Error("feature at t = " + to_string(prm.value) + " not preserved");
        res.features.push_back(std::move(pf));
      }
    }
  });
  return res;
}

}  // namespace certicurve
