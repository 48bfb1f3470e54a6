#include "certicurve/characters.hpp"

#include <algorithm>
#include <numeric>

#include "certicurve/errors.hpp"
#include "certicurve/mpoly.hpp"
#include "certicurve/resultant.hpp"

namespace certicurve {

const char* to_string(VertexKind k) {
  switch (k) {
    case VertexKind::Cusp:
      return "Cusp";
    case VertexKind::SelfIntersection:
      return "SelfIntersection";
    case VertexKind::Inflection:
      return "Inflection";
    case VertexKind::TorsionVanishing:
      return "TorsionVanishing";
    case VertexKind::Endpoint:
      return "Endpoint";
    case VertexKind::PlainSegmenting:
      return "PlainSegmenting";
  }
  return "?";
}

ParamRoot make_param(const RootInterval& r) {
  ParamRoot p;
  if (auto q = exact_rational_root(r)) {
    p.value = *q;
    p.exact = true;
    p.interval = {*q, *q, r.multiplicity, UPoly::linear_root(*q)};
  } else {
    p.interval = r;
    p.value = simplest_between(r.lo, r.hi);
  }
  return p;
}

ParamRoot make_param(const Rational& exact) {
  ParamRoot p;
  p.value = exact;
  p.exact = true;
  p.interval = {exact, exact, 1, UPoly::linear_root(exact)};
  return p;
}

namespace {

std::vector<ParamRoot> params_of(const UPoly& p, const RationalCurve& c, const Rational& width) {
  std::vector<ParamRoot> out;
  if (p.degree() <= 0) return out;
  for (const auto& r : isolate_real_roots(p, c.lo(), c.hi(), width)) out.push_back(make_param(r));
  return out;
}

bool same_param(const ParamRoot& a, const ParamRoot& b) {
  if (a.exact && b.exact) return a.value == b.value;
  return same_root(a.interval, b.interval);
}

// (N(s) Q(t) - N(t) Q(s)) / (s - t) in variables (s, t)
MPoly separated_difference(const RationalFn& f) {
  MPoly Ns = MPoly::from_univariate(f.num(), 2, 0), Nt = MPoly::from_univariate(f.num(), 2, 1);
  MPoly Qs = MPoly::from_univariate(f.den(), 2, 0), Qt = MPoly::from_univariate(f.den(), 2, 1);
  MPoly A = Ns * Qt - Nt * Qs;
  auto q = A.divide_by_difference(1, 0);
  return q ? *q : MPoly(2);
}

Vec3q accurate_point(const RationalCurve& c, const ParamRoot& p, Rational& value) {
  if (p.exact) {
    value = p.value;
    return c.point(p.value);
  }
  RootInterval r = p.interval;
  Rational w = (c.hi() - c.lo());
  Integer big;
  mpz_ui_pow_ui(big.get_mpz_t(), 10, 40);
  refine(r, w / Rational(big));
  value = r.exact() ? r.lo : simplest_between(r.lo, r.hi);
  return c.point(value);
}

}  // namespace

std::vector<ParamRoot> find_cusps(const RationalCurve& c, const Rational& width) {
  return params_of(c.cusp_factor(), c, width);
}

std::vector<SelfIntersectionGroup> find_self_intersections(const RationalCurve& c, const Rational& width) {
  std::vector<MPoly> P;
  std::vector<int> deg;
  for (int i = 0; i < 3; ++i) {
    const RationalFn& f = c.component(i);
    if (f.is_constant()) continue;
    P.push_back(separated_difference(f));
    deg.push_back(P.back().total_degree());
  }
  if (P.size() < 2) throw UnsupportedCurve("curve has fewer than two non-constant coordinates");
  std::vector<std::size_t> order(P.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return deg[a] < deg[b]; });

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j) pairs.emplace_back(order[i], order[j]);

  UPoly G;
  int nonzero = 0;
  for (const auto& [a, b] : pairs) {
    // constant-in-s components give a trivial constraint
    if (P[a].degree(0) <= 0 || P[b].degree(0) <= 0) continue;
    UPoly R = resultant(P[a], P[b], 0).to_univariate(1);
    if (R.is_zero()) continue;
    ++nonzero;
    G = gcd(G, R);
    if (nonzero >= 2 && G.degree() <= 0) break;
  }
  if (nonzero == 0) throw NotProper("curve not proper");
  std::vector<SelfIntersectionGroup> groups;
  if (G.degree() <= 0) return groups;

  std::vector<ParamRoot> cand = params_of(G, c, width);
  const std::size_t n = cand.size();
  std::vector<Vec3q> pts(n);
  std::vector<Rational> vals(n);
  for (std::size_t i = 0; i < n; ++i) pts[i] = accurate_point(c, cand[i], vals[i]);
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  Rational tol(1, 1000000);
  tol /= Rational(Integer("1000000000000000"));  // 1e-21
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      bool eq;
      if (cand[i].exact && cand[j].exact) {
        eq = pts[i] == pts[j];
      } else {
        eq = true;
        for (int k = 0; k < 3; ++k) {
          Rational d = abs(pts[i][k] - pts[j][k]);
          Rational s = 1 + abs(pts[i][k]);
          if (d > tol * s) eq = false;
        }
      }
      if (eq) parent[find(i)] = find(j);
    }
  std::vector<std::vector<std::size_t>> members(n);
  for (std::size_t i = 0; i < n; ++i) members[find(i)].push_back(i);
  for (const auto& m : members) {
    if (m.size() < 2) continue;
    SelfIntersectionGroup g;
    for (std::size_t i : m) g.params.push_back(cand[i]);
    std::sort(g.params.begin(), g.params.end(),
              [](const ParamRoot& a, const ParamRoot& b) { return a.value < b.value; });
    g.point_exact = c.point(g.params.front().value);
    g.point = to_double(g.point_exact);
    groups.push_back(std::move(g));
  }
  std::sort(groups.begin(), groups.end(), [](const SelfIntersectionGroup& a, const SelfIntersectionGroup& b) {
    return a.params.front().value < b.params.front().value;
  });
  return groups;
}

Flats find_flats(const RationalCurve& c, const Rational& width) {
  Flats f;
  f.inflections = params_of(c.inflection_factor(), c, width);
  for (auto& p : params_of(c.torsion_factor(), c, width)) {
    bool dup = false;
    for (const auto& q : f.inflections)
      if (same_param(p, q)) dup = true;
    if (!dup) f.torsion_zeros.push_back(std::move(p));
  }
  return f;
}

bool ExtendedVertex::has(VertexKind k) const { return std::find(kinds.begin(), kinds.end(), k) != kinds.end(); }

bool ExtendedVertex::is_character() const {
  for (auto k : kinds)
    if (k != VertexKind::Endpoint && k != VertexKind::PlainSegmenting) return true;
  return false;
}

const ExtendedVertex* VertexList::find(const Rational& t) const {
  auto it = std::lower_bound(all_params.begin(), all_params.end(), t,
                             [](const VertexParam& p, const Rational& v) { return p.value < v; });
  if (it == all_params.end() || it->value != t) return nullptr;
  return &vertices[it->vertex];
}

bool VertexList::is_character_param(const Rational& t) const {
  const ExtendedVertex* v = find(t);
  return v && v->is_character();
}

Rational default_root_width(const RationalCurve& c) {
  return (c.hi() - c.lo()) / Rational(Integer("1000000000000"));
}

VertexList build_vertex_list(const RationalCurve& c) { return build_vertex_list(c, default_root_width(c)); }

VertexList build_vertex_list(const RationalCurve& c, const Rational& width) {
  struct Entry {
    ParamRoot p;
    VertexKind kind;
  };
  std::vector<ExtendedVertex> vs;
  for (auto& g : find_self_intersections(c, width)) {
    ExtendedVertex v;
    v.kinds = {VertexKind::SelfIntersection};
    v.params = g.params;
    vs.push_back(std::move(v));
  }
  std::vector<Entry> singles;
  singles.push_back({make_param(c.lo()), VertexKind::Endpoint});
  singles.push_back({make_param(c.hi()), VertexKind::Endpoint});
  for (auto& p : find_cusps(c, width)) singles.push_back({p, VertexKind::Cusp});
  Flats fl = find_flats(c, width);
  for (auto& p : fl.inflections) singles.push_back({p, VertexKind::Inflection});
  for (auto& p : fl.torsion_zeros) singles.push_back({p, VertexKind::TorsionVanishing});

  for (auto& e : singles) {
    bool merged = false;
    for (auto& v : vs) {
      for (auto& q : v.params) {
        if (!same_param(e.p, q)) continue;
        if (e.p.exact && !q.exact) q = e.p;
        if (!v.has(e.kind)) v.kinds.push_back(e.kind);
        merged = true;
        break;
      }
      if (merged) break;
    }
    if (!merged) {
      ExtendedVertex v;
      v.kinds = {e.kind};
      v.params = {e.p};
      vs.push_back(std::move(v));
    }
  }
  VertexList out;
  for (auto& v : vs) {
    std::sort(v.kinds.begin(), v.kinds.end());
    std::sort(v.params.begin(), v.params.end(),
              [](const ParamRoot& a, const ParamRoot& b) { return a.value < b.value; });
    v.point_exact = c.point(v.params.front().value);
    v.point = to_double(v.point_exact);
    for (const auto& p : v.params) v.frames.push_back(frenet(c, p.value));
  }
  std::sort(vs.begin(), vs.end(), [](const ExtendedVertex& a, const ExtendedVertex& b) {
    return a.params.front().value < b.params.front().value;
  });
  out.vertices = std::move(vs);
  for (std::size_t i = 0; i < out.vertices.size(); ++i)
    for (std::size_t k = 0; k < out.vertices[i].params.size(); ++k)
      out.all_params.push_back({out.vertices[i].params[k].value, i, k});
  std::sort(out.all_params.begin(), out.all_params.end(),
            [](const VertexParam& a, const VertexParam& b) { return a.value < b.value; });
  for (std::size_t i = 1; i < out.all_params.size(); ++i)
    if (!(out.all_params[i - 1].value < out.all_params[i].value))
      throw Error("characteristic parameters could not be separated");
  return out;
}

}  // namespace certicurve
