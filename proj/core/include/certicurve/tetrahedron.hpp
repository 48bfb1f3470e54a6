#pragma once

#include <array>

#include "certicurve/vec3.hpp"

namespace certicurve {

struct Tetrahedron {
  std::array<Vec3q, 4> v;

  Vec3d vertex(std::size_t i) const { return to_double(v[i]); }
  // 6 * signed volume
  Rational volume6() const;
  bool degenerate() const { return volume6() == 0; }
  // Barycentric coordinates of x (exact / floating).
  std::array<Rational, 4> barycentric(const Vec3q& x) const;
  std::array<double, 4> barycentric(const Vec3d& x) const;
  bool contains(const Vec3q& x) const;
};

// Tetrahedron spanned by two points, their outgoing / incoming tangents and
// the osculating-plane normals there. Throws DegenerateTetrahedron.
Tetrahedron tetrahedron_from_frames(const Vec3q& r0, const Vec3q& a0, const Vec3q& n0, const Vec3q& r3,
                                    const Vec3q& a3, const Vec3q& n3);

// k1, k2, k3: where the plane through `point` with normal `normal` cuts the
// edges r1r0, r2r1, r3r2, as fractions measured from r1, r2, r3.
std::array<Rational, 3> osculating_ratios(const Tetrahedron& tet, const Vec3q& point, const Vec3q& normal);

// Closed tetrahedra with disjoint interiors, decided exactly by a separating
// axis among face normals and edge cross products. Touching is allowed.
bool interiors_disjoint(const Tetrahedron& a, const Tetrahedron& b);

}  // namespace certicurve
