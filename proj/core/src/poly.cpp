#include "certicurve/poly.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>

namespace certicurve {

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly::UPoly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UPoly UPoly::constant(const Rational& c) { return UPoly(std::vector<Rational>{c}); }

UPoly UPoly::monomial(const Rational& c, int k) {
  std::vector<Rational> v(static_cast<std::size_t>(k) + 1);
  v[static_cast<std::size_t>(k)] = c;
  return UPoly(std::move(v));
}

UPoly UPoly::linear_root(const Rational& r) { return UPoly(std::vector<Rational>{-r, 1}); }

Rational UPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
  return c_[static_cast<std::size_t>(i)];
}

const Rational& UPoly::lead() const {
  if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
  return c_.back();
}

Rational UPoly::eval(const Rational& t) const {
  Rational r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    r *= t;
    r += *it;
  }
  return r;
}

double UPoly::eval(double t) const {
  double r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * t + it->get_d();
  return r;
}

long double UPoly::eval(long double t) const {
  long double r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * t + static_cast<long double>(it->get_d());
  return r;
}

int UPoly::sign_at(const Rational& t) const {
  if (c_.empty()) return 0;
  IntPoly ip = to_int_poly(*this);
  return sgn(eval_sign_scaled(ip, t.get_num(), t.get_den()));
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return UPoly(std::move(d));
}

UPoly UPoly::compose(const UPoly& q) const {
  UPoly r;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    r = r * q;
    r += UPoly::constant(*it);
  }
  return r;
}

UPoly UPoly::affine(const Rational& a, const Rational& b) const {
  // Taylor shift by a, then scale by b.
  std::vector<Rational> c = c_;
  const std::size_t n = c.size();
  if (a != 0) {
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = n - 1; j > i; --j) c[j - 1] += a * c[j];
  }
  if (b != 1) {
    Rational p = 1;
    for (std::size_t i = 0; i < n; ++i) {
      c[i] *= p;
      p *= b;
    }
  }
  return UPoly(std::move(c));
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(std::move(r));
}

UPoly& UPoly::operator*=(const UPoly& o) {
  *this = *this * o;
  return *this;
}

UPoly& UPoly::operator*=(const Rational& s) {
  if (s == 0) {
    c_.clear();
    return *this;
  }
  for (auto& x : c_) x *= s;
  return *this;
}

UPoly operator-(UPoly a) {
  for (auto& x : a.c_) x = -x;
  return a;
}

UPoly UPoly::pow(unsigned k) const {
  UPoly r = UPoly::constant(1), b = *this;
  while (k) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

UPoly UPoly::monic() const {
  if (c_.empty()) return {};
  Rational l = lead();
  UPoly r = *this;
  for (auto& x : r.c_) x /= l;
  return r;
}

UPoly UPoly::primitive() const {
  if (c_.empty()) return {};
  IntPoly ip = to_int_poly(*this);
  std::vector<Rational> v(ip.begin(), ip.end());
  return UPoly(std::move(v));
}

std::vector<Integer> UPoly::integer_coeffs() const { return to_int_poly(*this); }

std::pair<int, UPoly> UPoly::factor_root(const Rational& r) const {
  if (c_.empty()) return {0, {}};
  int k = 0;
  UPoly p = *this;
  while (p.degree() >= 1 && p.eval(r) == 0) {
    // synthetic division by (t - r)
    std::size_t n = p.c_.size();
    std::vector<Rational> q(n - 1);
    Rational acc = 0;
    for (std::size_t i = n; i-- > 1;) {
      acc = acc * r + p.c_[i];
      q[i - 1] = acc;
    }
    p = UPoly(std::move(q));
    ++k;
  }
  return {k, p};
}

std::vector<double> UPoly::to_double() const {
  std::vector<double> d;
  d.reserve(c_.size());
  for (const auto& x : c_) d.push_back(x.get_d());
  return d;
}

std::string UPoly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c_[i].get_str() << ")";
    if (i >= 1) os << "*" << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {UPoly{}, a};
  std::vector<Rational> r = a.coeffs();
  const auto& bc = b.coeffs();
  const int db = b.degree();
  std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db + 1));
  Rational inv = 1 / b.lead();
  for (int i = a.degree(); i >= db; --i) {
    Rational f = r[static_cast<std::size_t>(i)] * inv;
    q[static_cast<std::size_t>(i - db)] = f;
    if (f == 0) continue;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= f * bc[static_cast<std::size_t>(j)];
  }
  r.resize(static_cast<std::size_t>(db));
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly exact_div(const UPoly& a, const UPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
  return q;
}

IntPoly to_int_poly(const UPoly& p) {
  const auto& c = p.coeffs();
  if (c.empty()) return {};
  Integer l = 1;
  for (const auto& x : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  IntPoly r(c.size());
  Integer g = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    r[i] = c[i].get_num() * (l / c[i].get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r[i].get_mpz_t());
  }
  if (r.back() < 0) g = -g;
  if (g != 1)
    for (auto& x : r) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return r;
}

Integer eval_sign_scaled(const IntPoly& p, const Integer& num, const Integer& den) {
  // den^n * p(num/den)
  if (p.empty()) return 0;
  Integer r = p.back();
  Integer dp = 1;
  for (std::size_t i = p.size() - 1; i-- > 0;) {
    dp *= den;
    r = r * num + p[i] * dp;
  }
  return r;
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
constexpr u64 kPrimes[] = {2305843009213693951ULL, 4611686018427387847ULL, 1152921504606846883ULL,
                          9223372036854775783ULL};

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>((static_cast<u128>(a) * b) % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::vector<u64> reduce(const IntPoly& ip, u64 p) {
  std::vector<u64> r(ip.size());
  Integer m;
  for (std::size_t i = 0; i < ip.size(); ++i) {
    mpz_fdiv_r_ui(m.get_mpz_t(), ip[i].get_mpz_t(), p);
    r[i] = m.get_ui();
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

int gcd_degree_modp(std::vector<u64> a, std::vector<u64> b, u64 p) {
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    u64 inv = powmod(b.back(), p - 2, p);
    while (a.size() >= b.size()) {
      u64 f = mulmod(a.back(), inv, p);
      std::size_t off = a.size() - b.size();
      for (std::size_t j = 0; j < b.size(); ++j) {
        u64 s = mulmod(f, b[j], p);
        a[off + j] = a[off + j] >= s ? a[off + j] - s : a[off + j] + p - s;
      }
      while (!a.empty() && a.back() == 0) a.pop_back();
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

IntPoly prem(IntPoly a, const IntPoly& b) {
  // pseudo-remainder with lazy scaling
  const std::size_t nb = b.size();
  while (a.size() >= nb && !a.empty()) {
    Integer la = a.back();
    const Integer& lb = b.back();
    std::size_t off = a.size() - nb;
    Integer g;
    mpz_gcd(g.get_mpz_t(), la.get_mpz_t(), lb.get_mpz_t());
    Integer fa = lb / g, fb = la / g;
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= fa;
    for (std::size_t j = 0; j < nb; ++j) a[off + j] -= fb * b[j];
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

void make_primitive(IntPoly& a) {
  if (a.empty()) return;
  Integer g = 0;
  for (const auto& x : a) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  if (a.back() < 0) g = -g;
  if (g != 1)
    for (auto& x : a) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

}  // namespace

int modular_gcd_degree(const UPoly& a, const UPoly& b) {
  if (a.is_zero()) return b.degree();
  if (b.is_zero()) return a.degree();
  IntPoly ia = to_int_poly(a), ib = to_int_poly(b);
  for (u64 p : kPrimes) {
    auto ra = reduce(ia, p), rb = reduce(ib, p);
    if (ra.size() != ia.size() || rb.size() != ib.size()) continue;
    return gcd_degree_modp(ra, rb, p);
  }
  return std::min(a.degree(), b.degree());
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.degree() == 0 || b.degree() == 0) return UPoly::constant(1);
  IntPoly ia = to_int_poly(a), ib = to_int_poly(b);
  for (u64 p : kPrimes) {
    auto ra = reduce(ia, p), rb = reduce(ib, p);
    if (ra.size() != ia.size() || rb.size() != ib.size()) continue;
    if (gcd_degree_modp(ra, rb, p) == 0) return UPoly::constant(1);
    break;
  }
  if (ia.size() < ib.size()) std::swap(ia, ib);
  while (!ib.empty()) {
    IntPoly r = prem(ia, ib);
    make_primitive(r);
    ia = std::move(ib);
    ib = std::move(r);
  }
  std::vector<Rational> v(ia.begin(), ia.end());
  return UPoly(std::move(v)).monic();
}

UPoly gcd(const std::vector<UPoly>& ps) {
  UPoly g;
  for (const auto& p : ps) {
    g = gcd(g, p);
    if (g.degree() == 0) break;
  }
  return g;
}

UPoly lcm(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return exact_div(a * b, gcd(a, b)).monic();
}

std::vector<std::pair<UPoly, int>> squarefree_factorization(const UPoly& p) {
  std::vector<std::pair<UPoly, int>> out;
  if (p.degree() <= 0) return out;
  UPoly f = p.monic();
  UPoly fp = f.derivative();
  UPoly b = gcd(f, fp);
  UPoly c = exact_div(f, b);
  UPoly d = exact_div(fp, b) - c.derivative();
  int i = 1;
  while (c.degree() > 0) {
    UPoly a = gcd(c, d);
    if (a.degree() > 0) out.emplace_back(a, i);
    c = exact_div(c, a);
    d = exact_div(d, a) - c.derivative();
    ++i;
  }
  return out;
}

UPoly squarefree_part(const UPoly& p) {
  if (p.degree() <= 0) return p.is_zero() ? UPoly{} : UPoly::constant(1);
  UPoly f = p.monic();
  return exact_div(f, gcd(f, f.derivative()));
}

}  // namespace certicurve
