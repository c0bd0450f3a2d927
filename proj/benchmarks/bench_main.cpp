#include <benchmark/benchmark.h>

#include "lgfloer/disc_area.hpp"
#include "lgfloer/grading.hpp"
#include "lgfloer/patch_factories.hpp"

using namespace lgf;

static void BM_TransportSegment(benchmark::State& state) {
  const Model m = make_model("conic");
  IntegratorOptions o;
  o.step = 1.0 / static_cast<double>(state.range(0));
  const BasePath path = BasePath::segment(1.0, cplx(4.0, 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(parallel_transport(m, path, 0, 1, PointY(1.0, 1.0), o));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TransportSegment)->Arg(250)->Arg(1000)->Arg(4000);

static void BM_Monodromy(benchmark::State& state) {
  const Model m = make_model("conic");
  const BasePath loop = BasePath::arc(0, 1, 0, 2 * kPi);
  for (auto _ : state) benchmark::DoNotOptimize(monodromy(m, loop, PointY(1.0, 1.0)));
}
BENCHMARK(BM_Monodromy);

static void BM_DegreeSplit(benchmark::State& state) {
  const Model m = make_model("conic");
  const FiberedLagrangian ray(m, BasePath::line(1.0, 1.0, -0.5, 0.5), FiberLagrangianParam::ray());
  const FiberedLagrangian circ(m, BasePath::line(1.0, cplx(0, 1), -0.5, 0.5), FiberLagrangianParam::circle(1.3));
  const GradedLagrangian R(ray, 0.0, 0.0, {0, 1}), C(circ, 0.5, 0.5, {0, 0});
  const auto ips = find_intersections(ray, circ);
  for (auto _ : state) benchmark::DoNotOptimize(degree_split(R, C, ips.at(0)));
}
BENCHMARK(BM_DegreeSplit);

static void BM_FindIntersections(benchmark::State& state) {
  const Model m = make_model("conic");
  const FiberedLagrangian ray(m, BasePath::line(1.0, 1.0, -0.5, 0.5), FiberLagrangianParam::ray());
  const FiberedLagrangian circ(m, BasePath::line(1.0, cplx(0, 1), -0.5, 0.5), FiberLagrangianParam::circle(1.3));
  for (auto _ : state) benchmark::DoNotOptimize(find_intersections(ray, circ));
}
BENCHMARK(BM_FindIntersections)->Unit(benchmark::kMillisecond);

static void BM_PieceArea(benchmark::State& state) {
  const DiscPatch d = fiber_annulus(cplx(0.3, 0.4), 1.5, 0.6);
  const int level = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(piece_area(d.pieces.at(0), level));
  state.SetItemsProcessed(state.iterations() * 2 * d.pieces[0].nx * d.pieces[0].ny << (2 * level));
}
BENCHMARK(BM_PieceArea)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_TriangleSplit(benchmark::State& state) {
  const TriangleSetup T = conic_triangle();
  for (auto _ : state) {
    benchmark::DoNotOptimize(triangle_split_check(T.u, T.iso, T.m, T.u_doubleprime, T.fiber_value));
  }
}
BENCHMARK(BM_TriangleSplit)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK_MAIN();
