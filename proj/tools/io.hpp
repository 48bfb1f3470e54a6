#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "certicurve/assembly.hpp"
#include "json.hpp"

namespace certicurve::tools {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "certicurve.result/1";

struct CurveSpec {
  std::string name;
  RationalFn x, y, z;
  Rational lo, hi;
};

// Field paths such as "x.num[2]" appear in ParseError messages.
CurveSpec parse_curve_spec(const nlohmann::json& j);
std::shared_ptr<const RationalCurve> make_curve(const CurveSpec& s);

struct BezierSpec {
  std::string name;
  RationalCubicBezier bezier;
};

// Either {"points": [[x, y, z] x 4], "weights": [w0, w1, w2, w3] or [w1, w2]}
// or a curve spec of degree exactly three whose weights come out positive.
BezierSpec parse_bezier_spec(const nlohmann::json& j);

// Reads and parses a JSON file; syntax errors carry line and column.
nlohmann::json load_json(const std::filesystem::path& path);

Json rational_json(const Rational& q);
Json vec_json(const Vec3q& v);
Json vec_json(const Vec3d& v);

// Coefficients on 1, x, y, z, x^2, xy, xz, y^2, yz, z^2.
std::array<Rational, 10> quadric_coefficients(const MPoly& q);
MPoly quadric_from_coefficients(const std::array<Rational, 10>& c);
const std::array<const char*, 10>& quadric_monomials();

Json curve_json(const RationalCurve& c);
Json vertices_json(const VertexList& vl);
Json ideal_json(const ImplicitIdeal& ideal);
Json spline_json(const BSplineConversion& s);
Json result_json(const CertifiedResult& r, const ApproximationOptions& opts, int spline_samples_per_piece = 10);

BSplineCurve spline_from_json(const nlohmann::json& j);
std::array<MPoly, 3> quadrics_from_json(const nlohmann::json& j);

// error.csv, input.csv and spline.csv for external plotting.
void write_plot_data(const std::filesystem::path& dir, const CertifiedResult& r, int samples = 400);

}  // namespace certicurve::tools
