#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "certicurve/approximate.hpp"
#include "certicurve/characters.hpp"
#include "certicurve/segmentation.hpp"

namespace certicurve {

// ---------------------------------------------------------------------------
// Topology

struct TopologyPiece {
  RationalCubicBezier bezier;
  Tetrahedron tet;  // control tetrahedron of the bezier
};

enum class PairVerdict {
  Disjoint,   // exact separating plane found
  FirstCase,  // shared endpoint, common tangent ray, control points on the same side
  Colliding,
};

const char* to_string(PairVerdict v);

struct PairCheck {
  std::size_t i = 0, j = 0;  // i < j
  PairVerdict verdict = PairVerdict::Disjoint;
};

struct TopologyReport {
  std::vector<PairCheck> checks;
  std::vector<std::size_t> refine;  // offending pieces, ascending and unique

  bool ok() const { return refine.empty(); }
};

// Pieces i and i + 1 are neighbours on the curve and are not compared.
bool adjacent_pieces(std::size_t i, std::size_t j);

// Checks every non-adjacent pair, or only `pairs` when given.
TopologyReport check_topology(const std::vector<TopologyPiece>& pieces,
                              const std::vector<std::pair<std::size_t, std::size_t>>* pairs = nullptr);

// Shared-endpoint test for two pieces whose tetrahedra overlap.
bool first_case_holds(const RationalCubicBezier& a, const RationalCubicBezier& b);

// ---------------------------------------------------------------------------
// B-splines

class BSplineCurve {
 public:
  BSplineCurve() = default;
  // Cubic with clamped knots; throws DomainError when the data are inconsistent.
  BSplineCurve(std::vector<Vec3q> points, std::vector<Rational> weights, std::vector<Rational> knots);

  static constexpr int degree() { return 3; }
  const std::vector<Vec3q>& control_points() const { return p_; }
  const std::vector<Rational>& weights() const { return w_; }
  const std::vector<Rational>& knots() const { return u_; }
  const Rational& lo() const { return u_.front(); }
  const Rational& hi() const { return u_.back(); }

  // Distinct knot values, from lo to hi.
  std::vector<Rational> breakpoints() const;
  int multiplicity(const Rational& u) const;

  // de Boor evaluation in homogeneous coordinates.
  Vec3q eval(const Rational& u) const;
  Vec3d eval(double u) const;
  // One-sided first derivative; from_left selects the span ending at u.
  Vec3d derivative(double u, bool from_left) const;

  // Bezier form of every non-empty span, obtained by knot insertion.
  const std::vector<RationalCubicBezier>& bezier_pieces() const { return pieces_; }

 private:
  std::size_t span(double u, bool from_left) const;

  std::vector<Vec3q> p_;
  std::vector<Rational> w_;
  std::vector<Rational> u_;
  std::vector<RationalCubicBezier> pieces_;
  std::vector<Rational> starts_;  // knot value where each bezier piece starts
};

enum class JointTag { Smooth, Cusp };

struct JointReport {
  Rational u;           // knot value
  JointTag tag = JointTag::Smooth;
  int multiplicity = 0;
  bool c1 = false;      // derivatives agree on both sides
  bool g1 = false;      // tangent directions agree
};

struct BSplineConversion {
  BSplineCurve spline;
  std::vector<JointReport> joints;
  std::vector<Rational> piece_start;  // knot span of each input piece
  std::vector<Rational> piece_end;
  // Each input piece is the spline span reparametrized by s -> rho s / (1 - s + rho s).
  std::vector<Rational> rho;

  // Spline parameter of the point the i-th input piece reaches at s.
  double spline_parameter(std::size_t i, double s) const;
  Rational spline_parameter(std::size_t i, const Rational& s) const;
};

// Joins pieces sharing endpoints. Smooth joints get knot multiplicity 2 when
// the homogeneous data allow it and 3 otherwise, always with matching
// derivatives of the projected curve; cusp joints get multiplicity 3.
// tags[i] describes the joint between pieces i and i + 1.
BSplineConversion to_bspline(const std::vector<RationalCubicBezier>& pieces, const std::vector<JointTag>& tags);
BSplineConversion to_bspline(const std::vector<RationalCubicBezier>& pieces);

// ---------------------------------------------------------------------------
// Certified approximation

struct CertifyOptions {
  ApproximationOptions approx;
  SegmentationOptions segmentation;
  Rational root_width = 0;  // 0 selects default_root_width
  int topology_rounds = 16;
};

struct PreservedFeature {
  std::size_t vertex = 0;  // index into the vertex list
  Rational t;              // curve parameter
  Rational u;              // spline parameter
  Vec3q point;
  bool on_spline = false;         // exact equality
  double tangent_cross_in = 0;    // |unit spline tangent x unit curve tangent|, incoming side
  double tangent_cross_out = 0;
  bool verified = false;
};

struct TopologyCertificate {
  int rounds = 0;              // refinement rounds used
  std::size_t checked = 0;     // pair checks performed over all rounds
  std::size_t pairs = 0;       // non-adjacent pairs in the final piece list
  std::size_t disjoint = 0;
  std::size_t first_case = 0;
  std::size_t refined = 0;     // pieces split for topology
  bool certified = false;
};

struct CertifiedResult {
  std::shared_ptr<const RationalCurve> curve;
  double delta = 0;
  VertexList vertices;
  std::vector<QuasiCubicSegment> segments;
  std::vector<ApproxPiece> pieces;  // in parameter order
  std::vector<std::size_t> piece_segment;  // owning segment of each piece
  BSplineConversion spline;
  std::vector<PreservedFeature> features;
  TopologyCertificate topology;
  double global_max_error = 0;
  std::size_t arc_length_splits = 0;
  std::size_t shoulder_splits = 0;
};

// Segmentation, approximation, topology refinement and conversion.
// Failures are rethrown as PipelineError tagged with the stage.
CertifiedResult certify(std::shared_ptr<const RationalCurve> c, double delta, CertifyOptions opts = {});

// Checks the pieces pairwise and splits colliding ones until every
// non-adjacent pair is certified. owner[i] follows piece i through splits.
// Throws TopologyUnresolved after max_rounds refinement rounds.
TopologyCertificate refine_topology(std::vector<ApproxPiece>& pieces, std::vector<std::size_t>& owner,
                                    const ApproximationOptions& opts, int max_rounds = 16);

// Splits a piece at its shoulder parameter and refits the halves down to delta.
std::vector<ApproxPiece> split_piece(const ApproxPiece& p, const ApproximationOptions& opts);

}  // namespace certicurve
