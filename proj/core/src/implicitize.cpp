#include "certicurve/implicitize.hpp"

#include <algorithm>
#include <cmath>

#include "certicurve/errors.hpp"

namespace certicurve {

UPoly MovingPlane::apply(const VecPoly& X, const UPoly& W) const {
  return c[0] * X[0] + c[1] * X[1] + c[2] * X[2] + c[3] * W;
}

int MovingPlane::degree() const {
  int d = -1;
  for (const auto& p : c) d = std::max(d, p.degree());
  return d;
}

namespace {

// Basis of the nullspace of an exact matrix (rows x cols).
std::vector<std::vector<Rational>> nullspace(std::vector<std::vector<Rational>> a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
    std::size_t p = row;
    while (p < a.size() && a[p][col] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    Rational inv = 1 / a[row][col];
    for (auto& x : a[row]) x *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][col] == 0) continue;
      Rational f = a[r][col];
      for (std::size_t k = 0; k < cols; ++k) a[r][k] -= f * a[row][k];
    }
    pivots.push_back(col);
    ++row;
  }
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    std::vector<Rational> v(cols);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Linear form a . (x, y, z, 1) in three variables.
MPoly linear_form(const std::array<Rational, 4>& a) {
  MPoly f = MPoly::constant(3, a[3]);
  for (std::size_t i = 0; i < 3; ++i) f += MPoly::variable(3, i) * a[i];
  return f;
}

}  // namespace

std::array<MovingPlane, 3> mu_basis_cubic(const VecPoly& X, const UPoly& W) {
  std::array<const UPoly*, 4> P{&X[0], &X[1], &X[2], &W};
  for (const auto* p : P)
    if (p->degree() > 3) throw UnsupportedCurve("moving planes of degree one need a cubic");
  // unknowns: L0 (4) then L1 (4); equations: coefficients of t^0..t^4
  std::vector<std::vector<Rational>> m(5, std::vector<Rational>(8));
  for (std::size_t k = 0; k < 4; ++k)
    for (int j = 0; j <= 3; ++j) {
      Rational c = P[k]->coeff(j);
      m[static_cast<std::size_t>(j)][k] += c;
      m[static_cast<std::size_t>(j + 1)][4 + k] += c;
    }
  auto basis = nullspace(m, 8);
  if (basis.size() != 3)
    throw UnsupportedCurve("moving planes of degree one span dimension " + std::to_string(basis.size()));
  // a constant plane through the whole curve means the data are planar
  std::vector<std::vector<Rational>> tail;
  for (const auto& v : basis) tail.emplace_back(v.begin() + 4, v.end());
  std::vector<std::vector<Rational>> tt(4, std::vector<Rational>(3));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < 4; ++k) tt[k][i] = tail[i][k];
  if (!nullspace(tt, 3).empty()) throw UnsupportedCurve("curve lies in a plane");

  std::array<MovingPlane, 3> out;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < 4; ++k) out[i].c[k] = UPoly{basis[i][k], basis[i][4 + k]};
  for (const auto& L : out)
    if (!L.follows(X, W)) throw Error("moving plane does not follow the curve");
  return out;
}

std::array<MovingPlane, 3> mu_basis_cubic(const RationalCubicBezier& b) {
  return mu_basis_cubic(b.numerators(), b.denominator());
}

Quadric Quadric::from(MPoly q) {
  Quadric out;
  out.exact = std::move(q);
  double mx = 0;
  out.exact.for_each_term([&](std::span<const int> e, const Rational& c) {
    int a = e[0], b = e[1], d = e[2];
    std::size_t idx = 0;
    if (a + b + d == 0)
      idx = 0;
    else if (a + b + d == 1)
      idx = a ? 1 : b ? 2 : 3;
    else if (a == 2)
      idx = 4;
    else if (a == 1)
      idx = b ? 5 : 6;
    else if (b == 2)
      idx = 7;
    else if (b == 1)
      idx = 8;
    else
      idx = 9;
    if (a + b + d > 2) throw Error("implicit form is not quadratic");
    out.c[idx] = c.get_d();
    mx = std::max(mx, std::fabs(out.c[idx]));
  });
  if (mx > 0)
    for (auto& x : out.c) x /= mx;
  return out;
}

double Quadric::value(const Vec3d& p) const {
  const double x = p[0], y = p[1], z = p[2];
  return c[0] + c[1] * x + c[2] * y + c[3] * z + c[4] * x * x + c[5] * x * y + c[6] * x * z + c[7] * y * y +
         c[8] * y * z + c[9] * z * z;
}

Vec3d Quadric::gradient(const Vec3d& p) const {
  const double x = p[0], y = p[1], z = p[2];
  return {c[1] + 2 * c[4] * x + c[5] * y + c[6] * z, c[2] + c[5] * x + 2 * c[7] * y + c[8] * z,
          c[3] + c[6] * x + c[8] * y + 2 * c[9] * z};
}

ImplicitIdeal implicit_ideal(const std::array<MovingPlane, 3>& planes) {
  for (const auto& L : planes)
    if (L.degree() > 1) throw DomainError("implicit ideal expects moving planes of degree one");
  auto part = [](const MovingPlane& L, int k) {
    std::array<Rational, 4> a;
    for (std::size_t i = 0; i < 4; ++i) a[i] = L.c[i].coeff(k);
    return linear_form(a);
  };
  ImplicitIdeal id;
  const std::array<std::pair<int, int>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
  for (std::size_t n = 0; n < 3; ++n) {
    const auto& A = planes[static_cast<std::size_t>(pairs[n].first)];
    const auto& B = planes[static_cast<std::size_t>(pairs[n].second)];
    // res_t(a0 + a1 t, b0 + b1 t) = a0 b1 - a1 b0
    MPoly q = part(A, 0) * part(B, 1) - part(A, 1) * part(B, 0);
    if (q.is_zero()) throw Error("moving planes share a factor");
    id.q[n] = Quadric::from(std::move(q));
  }
  return id;
}

ImplicitIdeal implicit_ideal(const RationalCubicBezier& b) { return implicit_ideal(mu_basis_cubic(b)); }

bool vanishes_on(const MPoly& q, const VecPoly& X, const UPoly& W) {
  const int d = q.total_degree();
  std::vector<UPoly> wp(static_cast<std::size_t>(std::max(d, 0)) + 1);
  wp[0] = UPoly::constant(1);
  for (std::size_t i = 1; i < wp.size(); ++i) wp[i] = wp[i - 1] * W;
  UPoly acc;
  q.for_each_term([&](std::span<const int> e, const Rational& c) {
    UPoly term = UPoly::constant(c);
    for (std::size_t i = 0; i < 3; ++i) term *= X[i].pow(static_cast<unsigned>(e[i]));
    term *= wp[static_cast<std::size_t>(d - e[0] - e[1] - e[2])];
    acc += term;
  });
  return acc.is_zero();
}

bool vanishes_on(const ImplicitIdeal& ideal, const RationalCubicBezier& b) {
  VecPoly X = b.numerators();
  UPoly W = b.denominator();
  for (const auto& q : ideal.q)
    if (!vanishes_on(q.exact, X, W)) return false;
  return true;
}

double error_at(const ImplicitIdeal& ideal, const Vec3d& x, bool* valid) {
  double e = 0;
  bool ok = true;
  for (const auto& q : ideal.q) {
    double v = q.value(x);
    if (v == 0) continue;
    double g = norm(q.gradient(x));
    if (!(g > 0) || !std::isfinite(g)) {
      ok = false;
      continue;
    }
    e += std::fabs(v) / g;
  }
  if (valid) *valid = ok;
  return e;
}

ErrorReport error_functional(const ImplicitIdeal& ideal, const RationalCurve& c, const Rational& t0,
                             const Rational& t1, int m) {
  if (m < 2) throw DomainError("error sampling needs m >= 2");
  ErrorReport rep;
  rep.m = m;
  rep.samples.resize(static_cast<std::size_t>(m) + 1);
  const double a = t0.get_d(), len = Rational(t1 - t0).get_d();
  bool any = false;
  for (int i = 0; i <= m; ++i) {
    auto& s = rep.samples[static_cast<std::size_t>(i)];
    s.t = i == m ? t1.get_d() : a + len * i / m;
    s.e = error_at(ideal, c.point(s.t), &s.valid);
    if (!s.valid) {
      ++rep.invalid;
      continue;
    }
    if (!any || s.e > rep.max_error) {
      rep.max_error = s.e;
      rep.argmax_t = s.t;
    }
    any = true;
  }
  if (!any) throw Error("error function undefined at every sample");
  return rep;
}

}  // namespace certicurve
