#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "certicurve/poly.hpp"

namespace certicurve {

// Multivariate polynomial over Q stored as a dense coefficient tensor.
// Variable 0 is the slowest index.
class MPoly {
 public:
  explicit MPoly(std::size_t nvars = 1);

  static MPoly constant(std::size_t nvars, const Rational& c);
  static MPoly variable(std::size_t nvars, std::size_t var);
  static MPoly from_univariate(const UPoly& p, std::size_t nvars, std::size_t var);
  static MPoly monomial(std::size_t nvars, std::span<const int> exps, const Rational& c);

  std::size_t nvars() const { return n_; }
  int degree(std::size_t var) const { return ext_[var] - 1; }
  int total_degree() const;
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const;
  std::size_t term_count() const;

  Rational coeff(std::span<const int> exps) const;
  void add_to_coeff(std::span<const int> exps, const Rational& c);
  // f(exponents, coefficient) for every nonzero term
  void for_each_term(const std::function<void(std::span<const int>, const Rational&)>& f) const;

  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const Rational& s);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(MPoly a, const Rational& s) { return a *= s; }
  friend MPoly operator*(const Rational& s, MPoly a) { return a *= s; }
  friend MPoly operator-(MPoly a) { return a *= Rational(-1); }
  friend bool operator==(const MPoly& a, const MPoly& b);
  friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

  Rational eval(std::span<const Rational> x) const;
  double eval(std::span<const double> x) const;

  MPoly derivative(std::size_t var) const;
  // var := value (the variable stays in the ring with degree 0)
  MPoly substitute(std::size_t var, const Rational& value) const;
  // var := offset + scale * var
  MPoly affine_substitute(std::size_t var, const Rational& offset, const Rational& scale) const;
  // Variable `var` replaced by the polynomial q (in the same ring).
  MPoly compose(std::size_t var, const MPoly& q) const;
  // Coefficients c_k with p = sum_k c_k * var^k.
  std::vector<MPoly> coefficients_in(std::size_t var) const;
  // Univariate view; throws if other variables occur.
  UPoly to_univariate(std::size_t var) const;
  // Copy with a different number of variables: old variable i becomes map[i].
  MPoly remap(std::size_t nvars, std::span<const std::size_t> map) const;

  // Exact quotient by (x_j - x_i), or nullopt if it does not divide.
  std::optional<MPoly> divide_by_difference(std::size_t i, std::size_t j) const;
  // Divides out the maximal power of (x_j - x_i); returns the power.
  int strip_difference(std::size_t i, std::size_t j);

  // Restriction to the diagonal x_i = x_j (x_j eliminated by substitution).
  MPoly identify(std::size_t i, std::size_t j) const;

  const std::vector<int>& extents() const { return ext_; }
  const std::vector<Rational>& dense() const { return c_; }
  std::string to_string(std::span<const std::string> names = {}) const;

 private:
  void trim();
  void reshape(const std::vector<int>& ext);
  std::size_t index(std::span<const int> exps) const;
  std::vector<std::size_t> strides() const;

  std::size_t n_;
  std::vector<int> ext_;  // max exponent + 1 per variable, 0 for the zero polynomial
  std::vector<Rational> c_;
};

}  // namespace certicurve
