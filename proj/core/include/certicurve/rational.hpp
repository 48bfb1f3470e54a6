#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace certicurve {

using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "p", "p/q" and plain decimals such as "-0.125" (read exactly).
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

double to_double(const Rational& q);
// Exact binary value of a finite double.
Rational from_double(double x);

inline int sign(const Rational& q) { return sgn(q); }
inline int sign(const Integer& z) { return sgn(z); }

// Rational of least denominator in the closed interval [lo, hi].
Rational simplest_between(const Rational& lo, const Rational& hi);

Rational abs(const Rational& q);
Rational pow(const Rational& q, unsigned k);
Integer binomial(unsigned n, unsigned k);

// Number of bits needed for numerator plus denominator; a cost proxy.
std::size_t bit_size(const Rational& q);

}  // namespace certicurve
