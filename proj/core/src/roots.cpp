#include "certicurve/roots.hpp"

#include <algorithm>
#include <stdexcept>

#include "certicurve/errors.hpp"

namespace certicurve {

namespace {

void strip_content(IntPoly& a) {
  if (a.empty()) return;
  Integer g = 0;
  for (const auto& x : a) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) return;
  }
  if (g > 1)
    for (auto& x : a) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

void taylor_shift_one(IntPoly& c) {
  const std::size_t n = c.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j > i; --j) c[j - 1] += c[j];
}

int sign_variations(const IntPoly& c) {
  int v = 0, last = 0;
  for (const auto& x : c) {
    int s = sgn(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

// Descartes bound for roots in (0, 1).
int variations01(const IntPoly& g) {
  IntPoly h(g.rbegin(), g.rend());
  taylor_shift_one(h);
  return sign_variations(h);
}

// g(u) -> g(u) / (u - 1), exact
IntPoly divide_u_minus_one(const IntPoly& g) {
  const std::size_t n = g.size();
  IntPoly q(n - 1);
  Integer acc = 0;
  for (std::size_t i = n; i-- > 1;) {
    acc += g[i];
    q[i - 1] = acc;
  }
  return q;
}

// f(x) with x = (A + B u) / C, scaled by C^n.
IntPoly affine_int(const IntPoly& f, const Integer& A, const Integer& B, const Integer& C) {
  const std::size_t n = f.size();
  if (n == 0) return {};
  IntPoly s{f.back()};
  Integer cp = 1;
  for (std::size_t i = n - 1; i-- > 0;) {
    cp *= C;
    IntPoly t(s.size() + 1);
    for (std::size_t j = 0; j < s.size(); ++j) {
      t[j] += A * s[j];
      t[j + 1] += B * s[j];
    }
    t[0] += f[i] * cp;
    s = std::move(t);
  }
  return s;
}

struct RawRoot {
  Rational lo, hi;
};

// Roots of the squarefree f in the open interval (a, b); f(a), f(b) != 0.
std::vector<RawRoot> isolate_open(const IntPoly& f, const Rational& a, const Rational& b) {
  std::vector<RawRoot> out;
  if (f.size() <= 1) return out;
  Rational len = b - a;
  Integer C;
  mpz_lcm(C.get_mpz_t(), a.get_den_mpz_t(), len.get_den_mpz_t());
  Integer A = a.get_num() * (C / a.get_den());
  Integer B = len.get_num() * (C / len.get_den());
  IntPoly g0 = affine_int(f, A, B, C);
  strip_content(g0);

  struct Node {
    IntPoly g;
    Integer c;
    unsigned k;
  };
  std::vector<Node> stack;
  stack.push_back({std::move(g0), Integer(0), 0});
  auto to_x = [&](const Integer& num, unsigned k) {
    Rational u(num);
    mpz_mul_2exp(u.get_den_mpz_t(), u.get_den_mpz_t(), k);
    u.canonicalize();
    return Rational(a + len * u);
  };
  while (!stack.empty()) {
    Node nd = std::move(stack.back());
    stack.pop_back();
    if (nd.g.size() <= 1) continue;
    int v = variations01(nd.g);
    if (v == 0) continue;
    if (v == 1) {
      out.push_back({to_x(nd.c, nd.k), to_x(nd.c + 1, nd.k)});
      continue;
    }
    const std::size_t n = nd.g.size() - 1;
    IntPoly gl(nd.g.size());
    for (std::size_t i = 0; i <= n; ++i) {
      gl[i] = nd.g[i];
      mpz_mul_2exp(gl[i].get_mpz_t(), gl[i].get_mpz_t(), n - i);
    }
    Integer sum = 0;
    for (const auto& x : gl) sum += x;
    if (sum == 0) {
      Rational m = to_x(2 * nd.c + 1, nd.k + 1);
      out.push_back({m, m});
      gl = divide_u_minus_one(gl);
    }
    strip_content(gl);
    IntPoly gr = gl;
    taylor_shift_one(gr);
    stack.push_back({std::move(gr), 2 * nd.c + 1, nd.k + 1});
    stack.push_back({std::move(gl), 2 * nd.c, nd.k + 1});
  }
  std::sort(out.begin(), out.end(), [](const RawRoot& x, const RawRoot& y) { return x.lo < y.lo; });
  return out;
}

int sign_of(const IntPoly& ip, const Rational& t) { return sgn(eval_sign_scaled(ip, t.get_num(), t.get_den())); }

void refine_with(RootInterval& r, const IntPoly& ip, const Rational& w) {
  if (r.exact()) return;
  int slo = sign_of(ip, r.lo);
  while (r.hi - r.lo > w) {
    Rational m = (r.lo + r.hi) / 2;
    int s = sign_of(ip, m);
    if (s == 0) {
      r.lo = r.hi = m;
      r.poly = UPoly::linear_root(m);
      return;
    }
    if (s == slo)
      r.lo = m;
    else
      r.hi = m;
  }
}

}  // namespace

void refine(RootInterval& r, const Rational& w) {
  if (r.exact()) return;
  refine_with(r, to_int_poly(r.poly), w);
}

std::vector<RootInterval> isolate_real_roots(const UPoly& p, const Rational& lo, const Rational& hi,
                                             const Rational& width) {
  if (p.is_zero()) throw IndeterminateRoots("root isolation of the zero polynomial");
  if (lo > hi) throw DomainError("empty root search interval");
  std::vector<RootInterval> roots;
  if (p.degree() == 0) return roots;
  for (const auto& [f, mult] : squarefree_factorization(p)) {
    UPoly g = f;
    std::vector<Rational> exact;
    for (const Rational& e : {lo, hi}) {
      if (g.degree() >= 1 && g.eval(e) == 0) {
        if (exact.empty() || exact.back() != e) exact.push_back(e);
        g = exact_div(g, UPoly::linear_root(e));
      }
    }
    std::vector<RawRoot> raw;
    if (lo < hi && g.degree() >= 1) raw = isolate_open(to_int_poly(g), lo, hi);
    for (const auto& rr : raw)
      if (rr.lo == rr.hi) {
        exact.push_back(rr.lo);
        g = exact_div(g, UPoly::linear_root(rr.lo));
      }
    for (const auto& e : exact) roots.push_back({e, e, mult, UPoly::linear_root(e)});
    for (const auto& rr : raw)
      if (rr.lo != rr.hi) roots.push_back({rr.lo, rr.hi, mult, g});
  }
  std::sort(roots.begin(), roots.end(), [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
  // separate roots coming from different squarefree factors
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
      auto& x = roots[i];
      auto& y = roots[i + 1];
      if (x.hi < y.lo) continue;
      if (!x.exact()) refine(x, x.width() / 2);
      if (!y.exact()) refine(y, y.width() / 2);
      changed = true;
    }
    if (changed)
      std::sort(roots.begin(), roots.end(), [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
  }
  for (auto& r : roots) refine(r, width);
  return roots;
}

std::optional<Rational> exact_rational_root(const RootInterval& r) {
  if (r.exact()) return r.lo;
  IntPoly ip = to_int_poly(r.poly);
  RootInterval c = r;
  auto test = [&](const RootInterval& x) -> std::optional<Rational> {
    if (x.exact()) return x.lo;
    Rational q = simplest_between(x.lo, x.hi);
    if (sign_of(ip, q) == 0) return q;
    return std::nullopt;
  };
  if (auto q = test(c)) return q;
  std::size_t lbits = mpz_sizeinbase(ip.back().get_mpz_t(), 2);
  std::size_t target = std::min<std::size_t>(2 * lbits + 2, 256);
  Rational w(1);
  mpz_mul_2exp(w.get_den_mpz_t(), w.get_den_mpz_t(), target);
  w.canonicalize();
  refine_with(c, ip, w);
  return test(c);
}

Rational representative(const RootInterval& r) {
  if (auto q = exact_rational_root(r)) return *q;
  return simplest_between(r.lo, r.hi);
}

bool same_root(RootInterval a, RootInterval b) {
  if (a.exact() && b.exact()) return a.lo == b.lo;
  if (a.exact()) std::swap(a, b);
  if (b.exact()) return b.lo >= a.lo && b.lo <= a.hi && a.poly.eval(b.lo) == 0;
  if (a.hi < b.lo || b.hi < a.lo) return false;
  UPoly g = gcd(a.poly, b.poly);
  if (g.degree() <= 0) return false;
  Rational lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
  auto rs = isolate_real_roots(g, lo, hi, hi - lo);
  return !rs.empty();
}

std::size_t count_roots_open(const UPoly& p, const Rational& lo, const Rational& hi) {
  auto rs = isolate_real_roots(p, lo, hi, hi - lo);
  std::size_t n = 0;
  for (const auto& r : rs)
    if (!(r.exact() && (r.lo == lo || r.lo == hi))) ++n;
  return n;
}

}  // namespace certicurve
