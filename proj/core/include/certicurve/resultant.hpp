#pragma once

#include <vector>

#include "certicurve/mpoly.hpp"

namespace certicurve {

// Sylvester resultant eliminating `var`; the result lives in the same ring
// with degree 0 in `var`. Throws std::domain_error when both inputs have
// degree 0 in `var`.
MPoly resultant(const MPoly& p, const MPoly& q, std::size_t var);

// Resultant of two univariate polynomials.
Rational resultant(const UPoly& p, const UPoly& q);

// Determinant by the division-free Berkowitz recurrence.
MPoly determinant(const std::vector<std::vector<MPoly>>& m, std::size_t nvars);
Rational determinant(std::vector<std::vector<Rational>> m);

}  // namespace certicurve
