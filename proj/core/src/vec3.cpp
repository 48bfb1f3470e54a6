#include "certicurve/vec3.hpp"

namespace certicurve {

Vec3d unit(const Vec3q& a) {
  Rational m = 0;
  for (int i = 0; i < 3; ++i) {
    Rational x = abs(a[i]);
    if (x > m) m = x;
  }
  if (m == 0) return {0.0, 0.0, 0.0};
  Vec3d d{Rational(a[0] / m).get_d(), Rational(a[1] / m).get_d(), Rational(a[2] / m).get_d()};
  return normalized(d);
}

bool same_direction(const Vec3q& a, const Vec3q& b) {
  if (a.is_zero() || b.is_zero()) return false;
  if (!cross(a, b).is_zero()) return false;
  return dot(a, b) > 0;
}

std::string to_string(const Vec3q& a) {
  return "(" + to_string(a[0]) + ", " + to_string(a[1]) + ", " + to_string(a[2]) + ")";
}

}  // namespace certicurve
