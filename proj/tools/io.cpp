#include "io.hpp"

#include <fstream>
#include <sstream>

#include "certicurve/errors.hpp"

namespace certicurve::tools {

namespace {

Rational read_rational(const nlohmann::json& j, const std::string& field) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer() || j.is_number_unsigned()) return parse_rational(j.dump());
    if (j.is_number_float()) return parse_rational(j.dump());
  } catch (const std::exception& e) {
    throw ParseError(field + ": " + e.what());
  }
  throw ParseError(field + ": expected a rational number or string, got " + std::string(j.type_name()));
}

const nlohmann::json& member(const nlohmann::json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw ParseError((path.empty() ? "document" : path) + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError((path.empty() ? "" : path + ".") + key + ": missing");
  return *it;
}

std::vector<Rational> read_list(const nlohmann::json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path + ": expected an array");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_rational(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

RationalFn read_component(const nlohmann::json& j, const std::string& path) {
  UPoly num(read_list(member(j, "num", path), path + ".num"));
  std::vector<Rational> den{1};
  if (j.contains("den")) den = read_list(j["den"], path + ".den");
  UPoly d(den);
  if (d.is_zero()) throw ParseError(path + ".den: zero denominator");
  return {num, d};
}

Vec3q read_point(const nlohmann::json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) throw ParseError(path + ": expected three coordinates");
  return {read_rational(j[0], path + "[0]"), read_rational(j[1], path + "[1]"), read_rational(j[2], path + "[2]")};
}

// Bernstein coefficients of a cubic given in the power basis.
std::array<Rational, 4> to_bernstein(const UPoly& p) {
  std::array<Rational, 4> b;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k <= i; ++k) {
      Rational f(binomial(static_cast<unsigned>(i), static_cast<unsigned>(k)),
                 binomial(3, static_cast<unsigned>(k)));
      f.canonicalize();
      b[static_cast<std::size_t>(i)] += f * p.coeff(k);
    }
  return b;
}

}  // namespace

CurveSpec parse_curve_spec(const nlohmann::json& j) {
  CurveSpec s;
  if (!j.is_object()) throw ParseError("document: expected an object");
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw ParseError("name: expected a string");
    s.name = j["name"].get<std::string>();
  }
  const auto& iv = member(j, "interval", "");
  if (!iv.is_array() || iv.size() != 2) throw ParseError("interval: expected [lo, hi]");
  s.lo = read_rational(iv[0], "interval[0]");
  s.hi = read_rational(iv[1], "interval[1]");
  s.x = read_component(member(j, "x", ""), "x");
  s.y = read_component(member(j, "y", ""), "y");
  s.z = read_component(member(j, "z", ""), "z");
  return s;
}

std::shared_ptr<const RationalCurve> make_curve(const CurveSpec& s) {
  return std::make_shared<RationalCurve>(s.x, s.y, s.z, s.lo, s.hi, s.name);
}

BezierSpec parse_bezier_spec(const nlohmann::json& j) {
  BezierSpec out;
  if (!j.is_object()) throw ParseError("document: expected an object");
  if (j.contains("name") && j["name"].is_string()) out.name = j["name"].get<std::string>();
  if (!j.contains("points")) {
    CurveSpec cs = parse_curve_spec(j);
    RationalFn f[3] = {cs.x.affine(cs.lo, cs.hi - cs.lo), cs.y.affine(cs.lo, cs.hi - cs.lo),
                       cs.z.affine(cs.lo, cs.hi - cs.lo)};
    UPoly W = UPoly::constant(1);
    for (const auto& c : f) W = lcm(W, c.den());
    int deg = W.degree();
    VecPoly X;
    for (int k = 0; k < 3; ++k) {
      X[static_cast<std::size_t>(k)] = f[k].num() * exact_div(W, f[k].den());
      deg = std::max(deg, X[static_cast<std::size_t>(k)].degree());
    }
    if (deg != 3) throw ParseError("curve has degree " + std::to_string(deg) + ", not a cubic");
    auto wb = to_bernstein(W);
    std::array<Vec3q, 4> p;
    std::array<std::array<Rational, 4>, 3> xb;
    for (std::size_t k = 0; k < 3; ++k) xb[k] = to_bernstein(X[k]);
    for (std::size_t i = 0; i < 4; ++i) {
      if (sign(wb[i]) <= 0) throw ParseError("curve has a non-positive Bezier weight");
      p[i] = Vec3q(xb[0][i] / wb[i], xb[1][i] / wb[i], xb[2][i] / wb[i]);
    }
    out.bezier = RationalCubicBezier(p, wb);
    if (out.name.empty()) out.name = cs.name;
    return out;
  }
  const auto& pts = j["points"];
  if (!pts.is_array() || pts.size() != 4) throw ParseError("points: expected four control points");
  std::array<Vec3q, 4> p;
  for (std::size_t i = 0; i < 4; ++i) p[i] = read_point(pts[i], "points[" + std::to_string(i) + "]");
  std::vector<Rational> w{1, 1};
  if (j.contains("weights")) w = read_list(j["weights"], "weights");
  try {
    if (w.size() == 2)
      out.bezier = RationalCubicBezier(p, w[0], w[1]);
    else if (w.size() == 4)
      out.bezier = RationalCubicBezier(p, std::array<Rational, 4>{w[0], w[1], w[2], w[3]});
    else
      throw ParseError("weights: expected [w1, w2] or four weights");
  } catch (const DomainError& e) {
    throw ParseError(std::string("weights: ") + e.what());
  }
  return out;
}

nlohmann::json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return nlohmann::json::parse(ss.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

Json rational_json(const Rational& q) { return to_string(q); }

Json vec_json(const Vec3q& v) { return Json::array({to_string(v[0]), to_string(v[1]), to_string(v[2])}); }

Json vec_json(const Vec3d& v) { return Json::array({v[0], v[1], v[2]}); }

const std::array<const char*, 10>& quadric_monomials() {
  static const std::array<const char*, 10> m = {"1", "x", "y", "z", "x^2", "xy", "xz", "y^2", "yz", "z^2"};
  return m;
}

namespace {
constexpr int kExps[10][3] = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {2, 0, 0},
                              {1, 1, 0}, {1, 0, 1}, {0, 2, 0}, {0, 1, 1}, {0, 0, 2}};
}

std::array<Rational, 10> quadric_coefficients(const MPoly& q) {
  if (q.total_degree() > 2) throw Error("polynomial is not a quadric");
  std::array<Rational, 10> c;
  for (std::size_t i = 0; i < 10; ++i) c[i] = q.coeff(kExps[i]);
  return c;
}

MPoly quadric_from_coefficients(const std::array<Rational, 10>& c) {
  MPoly q(3);
  for (std::size_t i = 0; i < 10; ++i)
    if (c[i] != 0) q.add_to_coeff(kExps[i], c[i]);
  return q;
}

Json curve_json(const RationalCurve& c) {
  Json j;
  j["name"] = c.name();
  j["interval"] = Json::array({to_string(c.lo()), to_string(c.hi())});
  const char* names[3] = {"x", "y", "z"};
  for (int k = 0; k < 3; ++k) {
    Json num = Json::array(), den = Json::array();
    for (const auto& q : c.component(k).num().coeffs()) num.push_back(to_string(q));
    for (const auto& q : c.component(k).den().coeffs()) den.push_back(to_string(q));
    j[names[k]] = {{"num", num}, {"den", den}};
  }
  j["degree"] = c.degree();
  return j;
}

namespace {

Json param_json(const ParamRoot& p) {
  Json j;
  j["value"] = to_string(p.value);
  j["approx"] = p.approx();
  j["exact"] = p.exact;
  if (!p.exact) j["interval"] = Json::array({to_string(p.interval.lo), to_string(p.interval.hi)});
  return j;
}

Json frame_json(const FrenetData& f) {
  Json j;
  j["t"] = to_string(f.t);
  j["tangent_minus"] = vec_json(f.alpha_minus);
  j["tangent_plus"] = vec_json(f.alpha_plus);
  j["normal_minus"] = vec_json(f.beta_minus);
  j["normal_plus"] = vec_json(f.beta_plus);
  j["binormal_minus"] = vec_json(f.gamma_minus);
  j["binormal_plus"] = vec_json(f.gamma_plus);
  j["tangent_order"] = f.tangent_order;
  j["binormal_order"] = f.binormal_order;
  return j;
}

Json error_report_json(const ErrorReport& e) {
  return {{"max", e.max_error}, {"argmax_t", e.argmax_t}, {"samples", e.m}, {"invalid", e.invalid}};
}

}  // namespace

Json vertices_json(const VertexList& vl) {
  Json arr = Json::array();
  for (const auto& v : vl.vertices) {
    Json j;
    Json kinds = Json::array();
    for (auto k : v.kinds) kinds.push_back(to_string(k));
    j["kinds"] = kinds;
    j["character"] = v.is_character();
    Json params = Json::array();
    for (const auto& p : v.params) params.push_back(param_json(p));
    j["params"] = params;
    j["point"] = vec_json(v.point);
    j["point_exact"] = vec_json(v.point_exact);
    Json frames = Json::array();
    for (const auto& f : v.frames) frames.push_back(frame_json(f));
    j["frames"] = frames;
    arr.push_back(j);
  }
  return arr;
}

Json ideal_json(const ImplicitIdeal& ideal) {
  Json arr = Json::array();
  const char* names[3] = {"f", "g", "h"};
  for (std::size_t k = 0; k < 3; ++k) {
    Json c = Json::array();
    for (const auto& q : quadric_coefficients(ideal.q[k].exact)) c.push_back(to_string(q));
    arr.push_back({{"name", names[k]}, {"coefficients", c}});
  }
  return arr;
}

Json spline_json(const BSplineConversion& s) {
  Json j;
  const auto& sp = s.spline;
  j["degree"] = BSplineCurve::degree();
  Json knots = Json::array(), pts = Json::array(), ws = Json::array();
  for (const auto& u : sp.knots()) knots.push_back(to_string(u));
  for (const auto& p : sp.control_points()) pts.push_back(vec_json(p));
  for (const auto& w : sp.weights()) ws.push_back(to_string(w));
  j["knots"] = knots;
  j["control_points"] = pts;
  j["weights"] = ws;
  Json joints = Json::array();
  for (const auto& jr : s.joints)
    joints.push_back({{"u", to_string(jr.u)},
                      {"tag", jr.tag == JointTag::Cusp ? "cusp" : "smooth"},
                      {"multiplicity", jr.multiplicity},
                      {"c1", jr.c1},
                      {"g1", jr.g1}});
  j["joints"] = joints;
  return j;
}

Json result_json(const CertifiedResult& r, const ApproximationOptions& opts, int per_piece) {
  Json j;
  j["schema"] = kSchema;
  j["command"] = "approximate";
  j["curve"] = curve_json(*r.curve);
  j["delta"] = r.delta;
  j["strategy"] = opts.strategy == SplitStrategy::ShoulderSplit ? "shoulder" : "arclength";
  j["samples"] = opts.samples;
  j["vertices"] = vertices_json(r.vertices);

  Json segs = Json::array();
  for (std::size_t i = 0; i < r.segments.size(); ++i) {
    const auto& s = r.segments[i];
    Json tet = Json::array();
    for (const auto& v : s.tet.v) tet.push_back(vec_json(v));
    Json pieces = Json::array();
    for (std::size_t k = 0; k < r.pieces.size(); ++k)
      if (r.piece_segment[k] == i) pieces.push_back(k);
    segs.push_back({{"index", i},
                    {"t", Json::array({to_string(s.t0), to_string(s.t1)})},
                    {"tetrahedron", tet},
                    {"pieces", pieces}});
  }
  j["segments"] = segs;

  Json pieces = Json::array();
  std::size_t worst = 0;
  for (std::size_t k = 0; k < r.pieces.size(); ++k) {
    const auto& p = r.pieces[k];
    if (p.error.max_error > r.pieces[worst].error.max_error) worst = k;
    Json pts = Json::array(), ws = Json::array();
    for (const auto& v : p.bezier.points()) pts.push_back(vec_json(v));
    for (const auto& w : p.bezier.weights()) ws.push_back(to_string(w));
    pieces.push_back({{"index", k},
                      {"segment", r.piece_segment[k]},
                      {"t", Json::array({to_string(p.segment.t0), to_string(p.segment.t1)})},
                      {"control_points", pts},
                      {"weights", ws},
                      {"weight_method", to_string(p.weights.method)},
                      {"shoulder",
                       {{"param", to_string(p.shoulder.param)},
                        {"exact", p.shoulder.exact},
                        {"point", vec_json(to_double(p.shoulder.s))},
                        {"lambda", Json::array({to_string(p.shoulder.lambda1), to_string(p.shoulder.lambda2)})}}},
                      {"quadrics", ideal_json(p.ideal)},
                      {"error", error_report_json(p.error)},
                      {"depth", p.depth},
                      {"knots", Json::array({to_string(r.spline.piece_start[k]), to_string(r.spline.piece_end[k])})}});
  }
  j["pieces"] = pieces;
  j["spline"] = spline_json(r.spline);
  if (!r.pieces.empty())
    j["error"] = {{"max", r.global_max_error},
                  {"argmax_t", r.pieces[worst].error.argmax_t},
                  {"piece", worst},
                  {"arc_length_splits", r.arc_length_splits},
                  {"shoulder_splits", r.shoulder_splits}};

  Json feats = Json::array();
  for (const auto& f : r.features) {
    Json kinds = Json::array();
    for (auto k : r.vertices.vertices[f.vertex].kinds) kinds.push_back(to_string(k));
    feats.push_back({{"vertex", f.vertex},
                     {"kinds", kinds},
                     {"t", to_string(f.t)},
                     {"u", to_string(f.u)},
                     {"point", vec_json(f.point)},
                     {"on_spline", f.on_spline},
                     {"tangent_cross_in", f.tangent_cross_in},
                     {"tangent_cross_out", f.tangent_cross_out},
                     {"verified", f.verified}});
  }
  j["features"] = feats;
  const auto& tc = r.topology;
  j["topology"] = {{"certified", tc.certified}, {"rounds", tc.rounds},      {"checked", tc.checked},
                   {"pairs", tc.pairs},         {"disjoint", tc.disjoint}, {"first_case", tc.first_case},
                   {"refined", tc.refined}};

  Json samples = Json::array();
  const auto& sp = r.spline.spline;
  for (std::size_t k = 0; k < r.pieces.size(); ++k) {
    double a = r.spline.piece_start[k].get_d(), b = r.spline.piece_end[k].get_d();
    for (int i = 0; i < per_piece; ++i) {
      double u = a + (b - a) * i / per_piece;
      Vec3d x = sp.eval(u);
      samples.push_back(Json::array({u, x[0], x[1], x[2]}));
    }
  }
  Vec3d e = sp.eval(1.0);
  samples.push_back(Json::array({1.0, e[0], e[1], e[2]}));
  j["spline_samples"] = samples;
  return j;
}

BSplineCurve spline_from_json(const nlohmann::json& j) {
  std::vector<Vec3q> pts;
  const auto& cp = member(j, "control_points", "spline");
  if (!cp.is_array()) throw ParseError("spline.control_points: expected an array");
  for (std::size_t i = 0; i < cp.size(); ++i)
    pts.push_back(read_point(cp[i], "spline.control_points[" + std::to_string(i) + "]"));
  auto w = read_list(member(j, "weights", "spline"), "spline.weights");
  auto u = read_list(member(j, "knots", "spline"), "spline.knots");
  try {
    return {pts, w, u};
  } catch (const DomainError& e) {
    throw ParseError(std::string("spline: ") + e.what());
  }
}

std::array<MPoly, 3> quadrics_from_json(const nlohmann::json& j) {
  const auto& qs = member(j, "quadrics", "");
  if (!qs.is_array() || qs.size() != 3) throw ParseError("quadrics: expected three entries");
  std::array<MPoly, 3> out{MPoly(3), MPoly(3), MPoly(3)};
  for (std::size_t k = 0; k < 3; ++k) {
    std::string path = "quadrics[" + std::to_string(k) + "]";
    auto c = read_list(member(qs[k], "coefficients", path), path + ".coefficients");
    if (c.size() != 10) throw ParseError(path + ".coefficients: expected ten coefficients");
    std::array<Rational, 10> a;
    std::copy(c.begin(), c.end(), a.begin());
    out[k] = quadric_from_coefficients(a);
  }
  return out;
}

void write_plot_data(const std::filesystem::path& dir, const CertifiedResult& r, int samples) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream f(dir / name);
    if (!f) throw Error((dir / name).string() + ": cannot write");
    f.precision(17);
    return f;
  };
  {
    auto f = open("error.csv");
    f << "piece,t,e,valid\n";
    for (std::size_t k = 0; k < r.pieces.size(); ++k)
      for (const auto& s : r.pieces[k].error.samples) f << k << ',' << s.t << ',' << s.e << ',' << s.valid << '\n';
  }
  {
    auto f = open("input.csv");
    f << "t,x,y,z\n";
    double a = r.curve->lo().get_d(), b = r.curve->hi().get_d();
    for (int i = 0; i <= samples; ++i) {
      double t = a + (b - a) * i / samples;
      Vec3d x = r.curve->point(t);
      f << t << ',' << x[0] << ',' << x[1] << ',' << x[2] << '\n';
    }
  }
  {
    auto f = open("spline.csv");
    f << "u,x,y,z\n";
    const auto& sp = r.spline.spline;
    for (int i = 0; i <= samples; ++i) {
      double u = static_cast<double>(i) / samples;
      Vec3d x = sp.eval(u);
      f << u << ',' << x[0] << ',' << x[1] << ',' << x[2] << '\n';
    }
  }
}

}  // namespace certicurve::tools
