#include "certicurve/resultant.hpp"

#include <stdexcept>

namespace certicurve {

namespace {

template <class T>
std::vector<std::vector<T>> sylvester(const std::vector<T>& a, const std::vector<T>& b, const T& zero) {
  // a, b ascending coefficient lists of degrees m, n
  const std::size_t m = a.size() - 1, n = b.size() - 1, N = m + n;
  std::vector<std::vector<T>> s(N, std::vector<T>(N, zero));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k <= m; ++k) s[r][r + k] = a[m - k];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k <= n; ++k) s[n + r][r + k] = b[n - k];
  return s;
}

// Resultant of polynomials whose coefficients are univariate in `other`,
// by evaluation at integer points and Newton interpolation.
MPoly resultant_bivariate(const std::vector<MPoly>& a, const std::vector<MPoly>& b, std::size_t nvars,
                          std::size_t other) {
  const std::size_t m = a.size() - 1, n = b.size() - 1;
  std::vector<UPoly> ua, ub;
  int da = 0, db = 0;
  for (const auto& x : a) {
    ua.push_back(x.to_univariate(other));
    da = std::max(da, ua.back().degree());
  }
  for (const auto& x : b) {
    ub.push_back(x.to_univariate(other));
    db = std::max(db, ub.back().degree());
  }
  const int bound = static_cast<int>(n) * da + static_cast<int>(m) * db;
  std::vector<Rational> xs, ys;
  long k = 0;
  while (static_cast<int>(xs.size()) < bound + 1) {
    Rational x(k);
    k = k > 0 ? -k : -k + 1;
    if (ua[m].eval(x) == 0 || ub[n].eval(x) == 0) continue;
    std::vector<Rational> va(m + 1), vb(n + 1);
    for (std::size_t i = 0; i <= m; ++i) va[i] = ua[i].eval(x);
    for (std::size_t i = 0; i <= n; ++i) vb[i] = ub[i].eval(x);
    xs.push_back(x);
    ys.push_back(determinant(sylvester(va, vb, Rational(0))));
  }
  // Newton divided differences
  const std::size_t N = xs.size();
  std::vector<Rational> c = ys;
  for (std::size_t j = 1; j < N; ++j)
    for (std::size_t i = N - 1; i >= j; --i) c[i] = (c[i] - c[i - 1]) / (xs[i] - xs[i - j]);
  UPoly r;
  for (std::size_t i = N; i-- > 0;) {
    r = r * UPoly::linear_root(xs[i]);
    r += UPoly::constant(c[i]);
  }
  return MPoly::from_univariate(r, nvars, other);
}

}  // namespace

Rational determinant(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    Rational inv = 1 / m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      Rational f = m[r][c] * inv;
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

MPoly determinant(const std::vector<std::vector<MPoly>>& a, std::size_t nvars) {
  const std::size_t n = a.size();
  if (n == 0) return MPoly::constant(nvars, 1);
  // p holds the characteristic polynomial of the leading r x r block,
  // highest power first.
  std::vector<MPoly> p{MPoly::constant(nvars, 1), -a[0][0]};
  for (std::size_t r = 1; r < n; ++r) {
    // column C = a[0..r-1][r], row R = a[r][0..r-1], corner a[r][r]
    std::vector<MPoly> col(r, MPoly(nvars));
    for (std::size_t i = 0; i < r; ++i) col[i] = a[i][r];
    std::vector<MPoly> toeplitz;
    toeplitz.push_back(MPoly::constant(nvars, 1));
    toeplitz.push_back(-a[r][r]);
    std::vector<MPoly> v = col;  // A_r^k C
    for (std::size_t k = 0; k < r; ++k) {
      MPoly s(nvars);
      for (std::size_t i = 0; i < r; ++i) s += a[r][i] * v[i];
      toeplitz.push_back(-s);
      if (k + 1 < r) {
        std::vector<MPoly> w(r, MPoly(nvars));
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j) w[i] += a[i][j] * v[j];
        v = std::move(w);
      }
    }
    std::vector<MPoly> q(r + 2, MPoly(nvars));
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, r); ++j) q[i] += toeplitz[i - j] * p[j];
    p = std::move(q);
  }
  return (n % 2 == 0) ? p[n] : -p[n];
}

MPoly resultant(const MPoly& p, const MPoly& q, std::size_t var) {
  const std::size_t nv = p.nvars();
  if (q.nvars() != nv) throw std::invalid_argument("variable count mismatch");
  if (p.is_zero() || q.is_zero()) return MPoly(nv);
  auto a = p.coefficients_in(var);
  auto b = q.coefficients_in(var);
  const std::size_t m = a.size() - 1, n = b.size() - 1;
  if (m == 0 && n == 0) throw std::domain_error("resultant of two polynomials constant in the variable");
  if (m == 0) {
    MPoly r = MPoly::constant(nv, 1);
    for (std::size_t i = 0; i < n; ++i) r = r * a[0];
    return r;
  }
  if (n == 0) {
    MPoly r = MPoly::constant(nv, 1);
    for (std::size_t i = 0; i < m; ++i) r = r * b[0];
    return r;
  }
  if (m == 1 && n == 1) return a[1] * b[0] - a[0] * b[1];
  // which other variables occur
  std::vector<int> used(nv, 0);
  for (const auto* list : {&a, &b})
    for (const auto& c : *list)
      for (std::size_t i = 0; i < nv; ++i)
        if (c.degree(i) > 0) used[i] = 1;
  std::size_t count = 0, other = 0;
  for (std::size_t i = 0; i < nv; ++i)
    if (used[i]) {
      ++count;
      other = i;
    }
  if (count == 0) {
    std::vector<Rational> va, vb;
    std::vector<int> zero(nv, 0);
    for (const auto& c : a) va.push_back(c.coeff(zero));
    for (const auto& c : b) vb.push_back(c.coeff(zero));
    return MPoly::constant(nv, determinant(sylvester(va, vb, Rational(0))));
  }
  if (count == 1) return resultant_bivariate(a, b, nv, other);
  return determinant(sylvester(a, b, MPoly(nv)), nv);
}

Rational resultant(const UPoly& p, const UPoly& q) {
  MPoly r = resultant(MPoly::from_univariate(p, 1, 0), MPoly::from_univariate(q, 1, 0), 0);
  std::vector<int> zero{0};
  return r.coeff(zero);
}

}  // namespace certicurve
