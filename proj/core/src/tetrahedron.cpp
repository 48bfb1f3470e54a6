#include "certicurve/tetrahedron.hpp"

#include <algorithm>
#include <vector>

#include "certicurve/errors.hpp"

namespace certicurve {

Rational Tetrahedron::volume6() const { return det3(v[1] - v[0], v[2] - v[0], v[3] - v[0]); }

std::array<Rational, 4> Tetrahedron::barycentric(const Vec3q& x) const {
  Rational V = volume6();
  if (V == 0) throw DegenerateTetrahedron("barycentric coordinates of a flat tetrahedron");
  std::array<Rational, 4> l;
  for (std::size_t i = 0; i < 4; ++i) {
    std::array<Vec3q, 4> w = v;
    w[i] = x;
    l[i] = det3(w[1] - w[0], w[2] - w[0], w[3] - w[0]) / V;
  }
  return l;
}

std::array<double, 4> Tetrahedron::barycentric(const Vec3d& x) const {
  std::array<Vec3d, 4> w;
  for (std::size_t i = 0; i < 4; ++i) w[i] = vertex(i);
  auto vol = [](const std::array<Vec3d, 4>& q) { return det3(q[1] - q[0], q[2] - q[0], q[3] - q[0]); };
  double V = vol(w);
  std::array<double, 4> l;
  for (std::size_t i = 0; i < 4; ++i) {
    auto q = w;
    q[i] = x;
    l[i] = vol(q) / V;
  }
  return l;
}

Tetrahedron tetrahedron_from_frames(const Vec3q& r0, const Vec3q& a0, const Vec3q& n0, const Vec3q& r3,
                                    const Vec3q& a3, const Vec3q& n3) {
  Rational d1 = dot(a0, n3), d2 = dot(a3, n0);
  if (d1 == 0 || d2 == 0) throw DegenerateTetrahedron("tangent parallel to the opposite osculating plane");
  Tetrahedron t;
  t.v[0] = r0;
  t.v[3] = r3;
  t.v[1] = r0 + a0 * Rational(dot(r3 - r0, n3) / d1);
  t.v[2] = r3 + a3 * Rational(dot(r0 - r3, n0) / d2);
  if (t.v[1] == t.v[2] || t.degenerate()) throw DegenerateTetrahedron("tetrahedron has zero volume");
  return t;
}

bool Tetrahedron::contains(const Vec3q& x) const {
  for (const auto& l : barycentric(x))
    if (l < 0) return false;
  return true;
}

std::array<Rational, 3> osculating_ratios(const Tetrahedron& tet, const Vec3q& p, const Vec3q& n) {
  const auto& r = tet.v;
  auto ratio = [&](const Vec3q& from, const Vec3q& to) {
    Rational den = dot(to - from, n);
    if (den == 0) throw DegenerateTetrahedron("edge parallel to the osculating plane");
    return Rational(dot(p - from, n) / den);
  };
  return {ratio(r[1], r[0]), ratio(r[2], r[1]), ratio(r[3], r[2])};
}

bool interiors_disjoint(const Tetrahedron& a, const Tetrahedron& b) {
  static constexpr int kEdges[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  std::vector<Vec3q> axes;
  for (const Tetrahedron* t : {&a, &b})
    for (int f = 0; f < 4; ++f) {
      const auto& p = t->v[static_cast<std::size_t>((f + 1) % 4)];
      const auto& q = t->v[static_cast<std::size_t>((f + 2) % 4)];
      const auto& r = t->v[static_cast<std::size_t>((f + 3) % 4)];
      axes.push_back(cross(q - p, r - p));
    }
  for (const auto& ea : kEdges)
    for (const auto& eb : kEdges)
      axes.push_back(cross(a.v[static_cast<std::size_t>(ea[1])] - a.v[static_cast<std::size_t>(ea[0])],
                           b.v[static_cast<std::size_t>(eb[1])] - b.v[static_cast<std::size_t>(eb[0])]));
  for (const auto& n : axes) {
    if (n.is_zero()) continue;
    Rational amin = dot(n, a.v[0]), amax = amin, bmin = dot(n, b.v[0]), bmax = bmin;
    for (std::size_t i = 1; i < 4; ++i) {
      Rational x = dot(n, a.v[i]), y = dot(n, b.v[i]);
      amin = std::min(amin, x);
      amax = std::max(amax, x);
      bmin = std::min(bmin, y);
      bmax = std::max(bmax, y);
    }
    if (amax <= bmin || bmax <= amin) return true;
  }
  return false;
}

}  // namespace certicurve
