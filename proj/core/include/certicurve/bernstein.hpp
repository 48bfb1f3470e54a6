#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "certicurve/mpoly.hpp"

namespace certicurve {

enum class SignVerdict { PositiveOnBox, NegativeOnBox, Indeterminate };

const char* to_string(SignVerdict v);

struct Box {
  std::vector<std::pair<Rational, Rational>> ranges;  // one closed range per variable
};

// Bernstein coefficients of p over the box (tensor order matches MPoly).
std::vector<Rational> bernstein_coefficients(const MPoly& p, const Box& box, std::vector<int>* degrees = nullptr);

// All Bernstein coefficients strictly of one sign, on the box or on the
// pieces of a shallow bisection of it.
SignVerdict bernstein_sign_certificate(const MPoly& p, const Box& box);

struct SignCertificateOptions {
  // Corners of the box (each coordinate equal to a range end) where the
  // polynomial may vanish exactly; the verdict then holds off those corners.
  std::vector<std::vector<bool>> zero_corners;  // true = upper end of the range
  // Sub-boxes lying within this distance (per coordinate, relative to the
  // box side) of an excluded corner are not examined.
  std::vector<std::vector<bool>> excluded_corners;
  Rational exclusion_zone = 0;
  // Only examine sub-boxes meeting x_0 <= x_1 <= ... (box ranges must agree).
  bool ordered = false;
  int max_depth = 24;
  std::size_t max_boxes = 4000;
};

struct SignCertificateResult {
  SignVerdict verdict = SignVerdict::Indeterminate;
  std::size_t boxes = 0;
  int depth = 0;
  std::size_t skipped = 0;  // sub-boxes inside an exclusion zone
};

// Adaptive version with bisection of undecided sub-boxes.
SignCertificateResult certify_sign(const MPoly& p, const Box& box, const SignCertificateOptions& opts);

}  // namespace certicurve
