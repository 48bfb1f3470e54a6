#include <benchmark/benchmark.h>

#include <random>

#include "certicurve/assembly.hpp"
#include "io.hpp"

using namespace certicurve;

namespace {

Rational frac(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::shared_ptr<const RationalCurve> curve(const std::string& name) {
  return tools::make_curve(tools::parse_curve_spec(tools::load_json(std::string(CERTICURVE_CURVES_DIR) + "/" + name + ".json")));
}

RationalCubicBezier random_bezier(std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-20, 20), w(1, 9);
  for (;;) {
    std::array<Vec3q, 4> p;
    for (auto& v : p) v = Vec3q(frac(d(rng), 4), frac(d(rng), 4), frac(d(rng), 4));
    if (Tetrahedron{p}.volume6() == 0) continue;
    return RationalCubicBezier(p, frac(w(rng), 3), frac(w(rng), 3));
  }
}

}  // namespace

static void BM_RootIsolation(benchmark::State& state) {
  // product of (t - k/7) for k = 1..n, expanded
  UPoly p{1};
  for (int k = 1; k <= state.range(0); ++k) p = p * UPoly{frac(-k, 7), 1};
  for (auto _ : state) benchmark::DoNotOptimize(isolate_real_roots(p, 0, 10, frac(1, 1 << 20)));
}
BENCHMARK(BM_RootIsolation)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMicrosecond);

static void BM_VertexList(benchmark::State& state) {
  auto c = curve("r1");
  for (auto _ : state) benchmark::DoNotOptimize(build_vertex_list(*c));
}
BENCHMARK(BM_VertexList)->Unit(benchmark::kMillisecond);

static void BM_ImplicitIdeal(benchmark::State& state) {
  std::mt19937 rng(1);
  auto b = random_bezier(rng);
  for (auto _ : state) benchmark::DoNotOptimize(implicit_ideal(b));
}
BENCHMARK(BM_ImplicitIdeal)->Unit(benchmark::kMicrosecond);

static void BM_CheckTopology(benchmark::State& state) {
  std::mt19937 rng(2);
  std::vector<TopologyPiece> ps;
  for (int k = 0; k < state.range(0); ++k) {
    auto b = random_bezier(rng);
    std::array<Vec3q, 4> p = b.points();
    for (auto& v : p) v = v + Vec3q(20 * k, 0, 0);
    RationalCubicBezier moved(p, b.weights());
    ps.push_back({moved, moved.control_tetrahedron()});
  }
  for (auto _ : state) benchmark::DoNotOptimize(check_topology(ps));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CheckTopology)->RangeMultiplier(2)->Range(4, 32)->Complexity()->Unit(benchmark::kMicrosecond);

static void BM_Certify(benchmark::State& state, const char* name, double delta) {
  auto c = curve(name);
  for (auto _ : state) benchmark::DoNotOptimize(certify(c, delta));
}
BENCHMARK_CAPTURE(BM_Certify, r1, "r1", 0.005)->Unit(benchmark::kSecond)->Iterations(1);
BENCHMARK_CAPTURE(BM_Certify, r2, "r2", 0.0002)->Unit(benchmark::kSecond)->Iterations(1);

BENCHMARK_MAIN();
