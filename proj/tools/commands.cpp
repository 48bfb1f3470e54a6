#include "commands.hpp"

#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "certicurve/errors.hpp"
#include "io.hpp"

namespace certicurve::tools {

namespace {

struct Flags {
  std::string spec;
  double delta = 1e-3;
  std::string strategy = "shoulder";
  int samples = 300;
  std::string root_width;
  std::string plot_dir;
  std::string output;
  std::string verify;
};

void emit(const Json& j, const Flags& f, std::ostream& out) {
  std::string text = j.dump(2) + "\n";
  if (f.output.empty()) {
    out << text;
    return;
  }
  std::ofstream o(f.output);
  if (!o) throw ParseError(f.output + ": cannot write");
  o << text;
}

std::optional<Rational> root_width(const Flags& f) {
  if (f.root_width.empty()) return std::nullopt;
  Rational w;
  try {
    w = parse_rational(f.root_width);
  } catch (const std::exception& e) {
    throw ParseError("--root-width: " + std::string(e.what()));
  }
  if (sign(w) <= 0) throw ParseError("--root-width must be positive");
  return w;
}

std::shared_ptr<const RationalCurve> load_curve(const Flags& f) {
  CurveSpec s = parse_curve_spec(load_json(f.spec));
  try {
    return make_curve(s);
  } catch (const UnsupportedCurve&) {
    throw;
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

int cmd_analyze(const Flags& f, std::ostream& out) {
  auto c = load_curve(f);
  VertexList vl;
  try {
    auto w = root_width(f);
    vl = w ? build_vertex_list(*c, *w) : build_vertex_list(*c);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw PipelineError("characters", e.what());
  }
  Json j;
  j["schema"] = kSchema;
  j["command"] = "analyze";
  j["curve"] = curve_json(*c);
  std::size_t nchar = 0;
  for (const auto& v : vl.vertices) nchar += v.is_character() ? 1 : 0;
  j["character_count"] = nchar;
  j["vertices"] = vertices_json(vl);
  emit(j, f, out);
  return kOk;
}

int cmd_approximate(const Flags& f, std::ostream& out) {
  if (!(f.delta > 0)) throw ParseError("--delta must be positive");
  if (f.samples < 2) throw ParseError("--samples must be at least 2");
  auto c = load_curve(f);
  CertifyOptions opts;
  opts.approx.samples = f.samples;
  opts.approx.strategy = f.strategy == "arclength" ? SplitStrategy::ArcLengthMidpoint : SplitStrategy::ShoulderSplit;
  if (auto w = root_width(f)) opts.root_width = *w;
  CertifiedResult r = certify(c, f.delta, opts);
  opts.approx.delta = f.delta;
  emit(result_json(r, opts.approx), f, out);
  if (!f.plot_dir.empty()) write_plot_data(f.plot_dir, r);
  return kOk;
}

// Rank of the coefficient vectors of three quadrics.
int quadric_rank(const std::array<MPoly, 3>& qs) {
  std::vector<std::array<Rational, 10>> m;
  for (const auto& q : qs) m.push_back(quadric_coefficients(q));
  int rank = 0;
  for (std::size_t col = 0; col < 10 && rank < 3; ++col) {
    std::size_t piv = static_cast<std::size_t>(rank);
    while (piv < 3 && m[piv][col] == 0) ++piv;
    if (piv == 3) continue;
    std::swap(m[piv], m[static_cast<std::size_t>(rank)]);
    auto& p = m[static_cast<std::size_t>(rank)];
    for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < 3; ++r) {
      Rational k = m[r][col] / p[col];
      for (std::size_t c = col; c < 10; ++c) m[r][c] -= k * p[c];
    }
    ++rank;
  }
  return rank;
}

// Scales a quadric so its last nonzero coefficient (highest degree) is 1.
MPoly normalized_quadric(const MPoly& q) {
  auto c = quadric_coefficients(q);
  for (std::size_t i = 10; i-- > 0;)
    if (c[i] != 0) return q * (Rational(1) / c[i]);
  return q;
}

int cmd_implicitize(const Flags& f, std::ostream& out, std::ostream& err) {
  BezierSpec bs = parse_bezier_spec(load_json(f.spec));
  const auto& b = bs.bezier;
  std::array<MovingPlane, 3> planes;
  ImplicitIdeal ideal;
  try {
    planes = mu_basis_cubic(b);
    ideal = implicit_ideal(planes);
  } catch (const UnsupportedCurve& e) {
    throw ParseError(std::string("control data: ") + e.what());
  }
  std::array<MPoly, 3> qs;
  for (std::size_t k = 0; k < 3; ++k) qs[k] = normalized_quadric(ideal.q[k].exact);
  VecPoly X = b.numerators();
  UPoly W = b.denominator();
  bool vanish = true;
  for (const auto& q : qs) vanish = vanish && vanishes_on(q, X, W);
  if (!vanish) throw PipelineError("implicitize", "quadrics do not vanish on the curve");

  Json j;
  j["schema"] = kSchema;
  j["command"] = "implicitize";
  j["name"] = bs.name;
  Json pts = Json::array(), ws = Json::array();
  for (const auto& p : b.points()) pts.push_back(vec_json(p));
  for (const auto& w : b.weights()) ws.push_back(to_string(w));
  j["bezier"] = {{"points", pts}, {"weights", ws}};
  Json mb = Json::array();
  for (const auto& pl : planes) {
    Json comps = Json::array();
    for (const auto& p : pl.c) {
      Json cs = Json::array();
      for (const auto& q : p.coeffs()) cs.push_back(to_string(q));
      comps.push_back(cs);
    }
    mb.push_back(comps);
  }
  j["mu_basis"] = mb;
  Json mono = Json::array();
  for (const char* m : quadric_monomials()) mono.push_back(m);
  j["monomials"] = mono;
  Json quads = Json::array();
  const char* names[3] = {"f", "g", "h"};
  for (std::size_t k = 0; k < 3; ++k) {
    Json cs = Json::array();
    for (const auto& q : quadric_coefficients(qs[k])) cs.push_back(to_string(q));
    quads.push_back({{"name", names[k]}, {"coefficients", cs}});
  }
  j["quadrics"] = quads;
  j["verified"] = true;

  int code = kOk;
  if (!f.verify.empty()) {
    auto other = quadrics_from_json(load_json(f.verify));
    bool v = true;
    for (const auto& q : other) v = v && vanishes_on(q, X, W);
    int rank = quadric_rank(other);
    bool passed = v && rank == 3;
    j["verify"] = {{"file", f.verify}, {"vanishing", v}, {"rank", rank}, {"passed", passed}};
    if (!passed) {
      err << "error: quadrics in " << f.verify << " do not define the curve\n";
      code = kPipelineFailure;
    }
  }
  emit(j, f, out);
  return code;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified rational cubic B-spline approximation of rational space curves", "certicurve"};
  app.require_subcommand(1);
  Flags f;

  auto* analyze = app.add_subcommand("analyze", "List character points with their one-sided frames");
  auto* approx = app.add_subcommand("approximate", "Run the certified approximation pipeline");
  auto* implicitize = app.add_subcommand("implicitize", "Quadrics defining a rational cubic Bezier curve");
  for (auto* sc : {analyze, approx, implicitize}) {
    sc->add_option("spec", f.spec, "Curve description file (JSON)")->required();
    sc->add_option("-o,--output", f.output, "Write the JSON result to this file");
  }
  for (auto* sc : {analyze, approx}) sc->add_option("--root-width", f.root_width, "Root isolation width");
  approx->add_option("--delta", f.delta, "Error bound")->capture_default_str();
  approx->add_option("--strategy", f.strategy, "Split rule: shoulder or arclength")
      ->check(CLI::IsMember({"shoulder", "arclength"}))
      ->capture_default_str();
  approx->add_option("--samples", f.samples, "Samples of the error function per piece")->capture_default_str();
  approx->add_option("--plot-dir", f.plot_dir, "Directory for CSV plot data");
  implicitize->add_option("--verify", f.verify, "Check the quadrics of a previous result against the curve");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(f, out);
    if (approx->parsed()) return cmd_approximate(f, out);
    return cmd_implicitize(f, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const UnsupportedCurve& e) {
    err << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const PipelineError& e) {
    err << "pipeline failure [" << e.stage() << "]: " << e.what() << "\n";
    return kPipelineFailure;
  } catch (const std::exception& e) {
    err << "pipeline failure: " << e.what() << "\n";
    return kPipelineFailure;
  }
}

}  // namespace certicurve::tools
