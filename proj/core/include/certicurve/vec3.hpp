#pragma once

#include <array>
#include <cmath>
#include <string>

#include "certicurve/rational.hpp"

namespace certicurve {

template <class T>
struct Vec3 {
  std::array<T, 3> v{};

  Vec3() = default;
  Vec3(T x, T y, T z) : v{std::move(x), std::move(y), std::move(z)} {}

  T& operator[](std::size_t i) { return v[i]; }
  const T& operator[](std::size_t i) const { return v[i]; }

  Vec3& operator+=(const Vec3& o) {
    for (int i = 0; i < 3; ++i) v[i] += o.v[i];
    return *this;
  }
  Vec3& operator-=(const Vec3& o) {
    for (int i = 0; i < 3; ++i) v[i] -= o.v[i];
    return *this;
  }
  Vec3& operator*=(const T& s) {
    for (int i = 0; i < 3; ++i) v[i] *= s;
    return *this;
  }
  friend Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend Vec3 operator*(Vec3 a, const T& s) { return a *= s; }
  friend Vec3 operator*(const T& s, Vec3 a) { return a *= s; }
  friend Vec3 operator/(Vec3 a, const T& s) {
    for (int i = 0; i < 3; ++i) a.v[i] /= s;
    return a;
  }
  friend Vec3 operator-(Vec3 a) {
    for (int i = 0; i < 3; ++i) a.v[i] = -a.v[i];
    return a;
  }
  friend bool operator==(const Vec3& a, const Vec3& b) { return a.v == b.v; }
  friend bool operator!=(const Vec3& a, const Vec3& b) { return !(a == b); }

  bool is_zero() const { return v[0] == 0 && v[1] == 0 && v[2] == 0; }
};

using Vec3q = Vec3<Rational>;
using Vec3d = Vec3<double>;

template <class T>
T dot(const Vec3<T>& a, const Vec3<T>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <class T>
Vec3<T> cross(const Vec3<T>& a, const Vec3<T>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <class T>
T det3(const Vec3<T>& a, const Vec3<T>& b, const Vec3<T>& c) {
  return dot(a, cross(b, c));
}

inline double norm(const Vec3d& a) { return std::sqrt(dot(a, a)); }

inline Vec3d normalized(const Vec3d& a) {
  double n = norm(a);
  return n > 0 ? a / n : a;
}

inline Vec3d to_double(const Vec3q& a) { return {a[0].get_d(), a[1].get_d(), a[2].get_d()}; }

inline Vec3q to_rational(const Vec3d& a) { return {Rational(a[0]), Rational(a[1]), Rational(a[2])}; }

// Unit vector of an exact direction, computed without overflow for large entries.
Vec3d unit(const Vec3q& a);

// True when a and b are parallel and point the same way (exact).
bool same_direction(const Vec3q& a, const Vec3q& b);

std::string to_string(const Vec3q& a);

}  // namespace certicurve
