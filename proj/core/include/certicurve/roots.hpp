#pragma once

#include <optional>
#include <vector>

#include "certicurve/poly.hpp"

namespace certicurve {

// Closed interval holding exactly one real root of `poly` (squarefree);
// lo == hi marks an exactly known rational root.
struct RootInterval {
  Rational lo, hi;
  int multiplicity = 1;
  UPoly poly;  // squarefree polynomial the root belongs to

  bool exact() const { return lo == hi; }
  Rational width() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }
  double approx() const { return midpoint().get_d(); }
};

// All real roots in [lo, hi], sorted, each interval of width <= width.
// Throws IndeterminateRoots for the zero polynomial.
std::vector<RootInterval> isolate_real_roots(const UPoly& p, const Rational& lo, const Rational& hi,
                                             const Rational& width);

// Shrinks r until width <= w (stops early on an exact hit).
void refine(RootInterval& r, const Rational& w);

// Exact rational value of the root when it is rational with a modest denominator.
std::optional<Rational> exact_rational_root(const RootInterval& r);

// Exact value if available, otherwise the simplest rational inside the interval.
Rational representative(const RootInterval& r);

// Whether two isolated roots denote the same real number.
bool same_root(RootInterval a, RootInterval b);

// Number of distinct real roots of p in the open interval (lo, hi).
std::size_t count_roots_open(const UPoly& p, const Rational& lo, const Rational& hi);

}  // namespace certicurve
