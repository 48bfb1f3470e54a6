#pragma once

#include <memory>
#include <vector>

#include "certicurve/curve.hpp"
#include "certicurve/roots.hpp"

namespace certicurve {

enum class VertexKind { Cusp, SelfIntersection, Inflection, TorsionVanishing, Endpoint, PlainSegmenting };

const char* to_string(VertexKind k);

// A characteristic parameter: an isolated root and the rational value used
// for it downstream (the root itself when rational).
struct ParamRoot {
  RootInterval interval;
  Rational value;
  bool exact = false;

  double approx() const { return value.get_d(); }
};

ParamRoot make_param(const RootInterval& r);
ParamRoot make_param(const Rational& exact);

struct SelfIntersectionGroup {
  std::vector<ParamRoot> params;  // ascending
  Vec3q point_exact;
  Vec3d point;
};

struct Flats {
  std::vector<ParamRoot> inflections;
  std::vector<ParamRoot> torsion_zeros;
};

// Parameters where r' vanishes.
std::vector<ParamRoot> find_cusps(const RationalCurve& c, const Rational& width);

// Groups of parameters in the domain mapping to a common point.
// Throws NotProper when every pairwise eliminant vanishes identically.
std::vector<SelfIntersectionGroup> find_self_intersections(const RationalCurve& c, const Rational& width);

Flats find_flats(const RationalCurve& c, const Rational& width);

struct ExtendedVertex {
  Vec3q point_exact;
  Vec3d point;
  std::vector<VertexKind> kinds;  // sorted, no duplicates
  std::vector<ParamRoot> params;  // ascending
  // frames[i] holds both one-sided frames at params[i]
  std::vector<FrenetData> frames;

  bool has(VertexKind k) const;
  bool is_character() const;  // anything beyond Endpoint / PlainSegmenting
};

struct VertexParam {
  Rational value;
  std::size_t vertex = 0;
  std::size_t index = 0;  // position inside vertex.params
};

struct VertexList {
  std::vector<ExtendedVertex> vertices;
  std::vector<VertexParam> all_params;  // strictly ascending

  // Vertex owning a parameter value, or nullptr.
  const ExtendedVertex* find(const Rational& t) const;
  bool is_character_param(const Rational& t) const;
};

// Default isolation width: 1e-12 of the domain length.
Rational default_root_width(const RationalCurve& c);

VertexList build_vertex_list(const RationalCurve& c, const Rational& width);
VertexList build_vertex_list(const RationalCurve& c);

}  // namespace certicurve
