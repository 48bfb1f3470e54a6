#pragma once

#include <vector>

#include "certicurve/bezier.hpp"
#include "certicurve/implicitize.hpp"
#include "certicurve/segmentation.hpp"

namespace certicurve {

// The family of Bezier cubics on a segment's tetrahedron; weights are free.
struct AssociatedCubic {
  Tetrahedron tet;

  RationalCubicBezier with_weights(const Rational& w1, const Rational& w2) const { return {tet.v, w1, w2}; }
  Vec3q midpoint() const { return (tet.v[0] + tet.v[3]) / Rational(2); }
};

AssociatedCubic associated_cubic(const QuasiCubicSegment& seg);

// Intersection of the segment with the triangle r1 r2 rM. An irrational
// parameter is replaced by the simplest rational in an isolating interval of
// relative width `rel_width` (default 2^-50). Throws Error when no such point exists.
ShoulderPoint shoulder_point_segment(const QuasiCubicSegment& seg);
ShoulderPoint shoulder_point_segment(const QuasiCubicSegment& seg, const Rational& rel_width);

enum class WeightMethod { ClosedForm, Fallback };

const char* to_string(WeightMethod m);

struct WeightSolution {
  Rational w1 = 1, w2 = 1;
  Rational D = 0;  // squared distance between the two shoulder points
  WeightMethod method = WeightMethod::ClosedForm;
};

// Minimises |s_p(w1, w2) - target|^2 over positive weights by solving the
// stationarity system exactly.
WeightSolution solve_weights(const Tetrahedron& tet, const Vec3q& target);
WeightSolution solve_weights(const QuasiCubicSegment& seg, const ShoulderPoint& shoulder);

enum class SplitStrategy { ShoulderSplit, ArcLengthMidpoint };

const char* to_string(SplitStrategy s);

struct ApproximationOptions {
  double delta = 1e-3;
  SplitStrategy strategy = SplitStrategy::ShoulderSplit;
  int samples = 300;
  int max_depth = 32;
  // shoulder splits without improvement before switching to arc length
  int stall_limit = 8;
};

struct ApproxPiece {
  QuasiCubicSegment segment;
  RationalCubicBezier bezier;
  ShoulderPoint shoulder;
  WeightSolution weights;
  ImplicitIdeal ideal;
  ErrorReport error;
  int depth = 0;
};

struct SegmentApproximation {
  QuasiCubicSegment segment;
  std::vector<ApproxPiece> pieces;  // in parameter order
  int depth = 0;                    // deepest subdivision level used
  SplitStrategy strategy = SplitStrategy::ShoulderSplit;
  std::size_t arc_length_splits = 0;
  std::size_t shoulder_splits = 0;

  double max_error() const;
};

// One associated cubic for the segment, with its ideal and error report.
ApproxPiece fit_segment(const QuasiCubicSegment& seg, int samples = 300);

// Fits and subdivides until every piece has error below delta.
// Throws NonConvergent past the depth limit.
SegmentApproximation approximate_segment(const QuasiCubicSegment& seg, const ApproximationOptions& opts);

double arc_length(const RationalCurve& c, double a, double b);
// Parameter halving the arc length of [t0, t1], as a nearby rational.
Rational arc_length_midpoint(const RationalCurve& c, const Rational& t0, const Rational& t1);
Rational arc_length_midpoint(const QuasiCubicSegment& seg);

}  // namespace certicurve
