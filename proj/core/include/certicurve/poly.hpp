#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "certicurve/rational.hpp"

namespace certicurve {

// Dense univariate polynomial over Q, ascending coefficients, no trailing zeros.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs);
  UPoly(std::initializer_list<Rational> coeffs);

  static UPoly constant(const Rational& c);
  static UPoly monomial(const Rational& c, int k);
  static UPoly x() { return monomial(1, 1); }
  // (x - r)
  static UPoly linear_root(const Rational& r);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int i) const;
  const Rational& lead() const;

  Rational eval(const Rational& t) const;
  double eval(double t) const;
  long double eval(long double t) const;
  int sign_at(const Rational& t) const;

  UPoly derivative() const;
  // p(q(t))
  UPoly compose(const UPoly& q) const;
  // p(a + b t)
  UPoly affine(const Rational& a, const Rational& b) const;
  // p(t + r)
  UPoly shift(const Rational& r) const { return affine(r, 1); }

  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  UPoly& operator*=(const UPoly& o);
  UPoly& operator*=(const Rational& s);
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(UPoly a, const Rational& s) { return a *= s; }
  friend UPoly operator*(const Rational& s, UPoly a) { return a *= s; }
  friend UPoly operator-(UPoly a);
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

  UPoly pow(unsigned k) const;
  UPoly monic() const;
  // Integer coefficients, content 1, positive leading coefficient.
  UPoly primitive() const;
  std::vector<Integer> integer_coeffs() const;  // of primitive()

  // Maximal k with (t - r)^k | p, and the cofactor p / (t - r)^k.
  std::pair<int, UPoly> factor_root(const Rational& r) const;

  std::vector<double> to_double() const;
  std::string to_string(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
// Throws std::domain_error if b does not divide a.
UPoly exact_div(const UPoly& a, const UPoly& b);

// Monic gcd over Q (zero only if both inputs are zero).
UPoly gcd(const UPoly& a, const UPoly& b);
UPoly gcd(const std::vector<UPoly>& ps);
UPoly lcm(const UPoly& a, const UPoly& b);

// Degree of gcd(a, b) modulo a word-size prime; an upper bound on the true
// degree, and exact whenever the prime does not divide either leading coefficient.
int modular_gcd_degree(const UPoly& a, const UPoly& b);

// Squarefree decomposition p = c * prod f_i^i with monic squarefree coprime f_i.
std::vector<std::pair<UPoly, int>> squarefree_factorization(const UPoly& p);
UPoly squarefree_part(const UPoly& p);

// Integer helpers used by root isolation and resultants.
using IntPoly = std::vector<Integer>;
IntPoly to_int_poly(const UPoly& p);
Integer eval_sign_scaled(const IntPoly& p, const Integer& num, const Integer& den);

}  // namespace certicurve
