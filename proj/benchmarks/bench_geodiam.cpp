#include <benchmark/benchmark.h>

#include "geodiam/generators.hpp"
#include "geodiam/instance_io.hpp"
#include "geodiam/oracle.hpp"
#include "geodiam/segments.hpp"
#include "geodiam/shatter.hpp"
#include "geodiam/unit_disk.hpp"
#include "geodiam/unit_square.hpp"

namespace {

using namespace geodiam;

std::vector<Shape> disks(const std::vector<Point>& pts) {
  std::vector<Shape> out;
  for (Point p : pts) out.push_back(UnitDisk{p});
  return out;
}

// Dense instances in a square of side 2.8: the answer is almost surely true,
// so every cell pair is settled rather than rejected early.
void BM_DecideDiam2(benchmark::State& state) {
  auto pts = random_points(static_cast<int>(state.range(0)), 2.8, 1);
  for (auto _ : state) benchmark::DoNotOptimize(decide_diam2(pts));
}
BENCHMARK(BM_DecideDiam2)->Arg(1000)->Arg(2000)->Arg(4000)->Arg(8000)->Arg(16000)->Unit(benchmark::kMillisecond);

// Same instances with every non-adjacent cell pair sent through the flower
// intersection.
void BM_DecideDiam2Flowers(benchmark::State& state) {
  auto pts = random_points(static_cast<int>(state.range(0)), 3.0, 1);
  Diam2Options opt;
  opt.witness_pruning = false;
  for (auto _ : state) benchmark::DoNotOptimize(decide_diam2(pts, opt));
}
BENCHMARK(BM_DecideDiam2Flowers)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_OracleUnitDisks(benchmark::State& state) {
  auto shapes = disks(random_points(static_cast<int>(state.range(0)), 2.8, 1));
  for (auto _ : state) benchmark::DoNotOptimize(diameter_at_most(build_graph(shapes), 2));
}
BENCHMARK(BM_OracleUnitDisks)->Arg(500)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_UnitSquareDelta3(benchmark::State& state) {
  auto pts = random_points(static_cast<int>(state.range(0)), 2.8, 1);
  for (auto _ : state) benchmark::DoNotOptimize(unit_square_diam_at_most(pts, 3));
}
BENCHMARK(BM_UnitSquareDelta3)->Arg(1000)->Arg(2000)->Arg(4000)->Arg(8000)->Arg(16000)->Unit(benchmark::kMillisecond);

void BM_SegmentsDelta3(benchmark::State& state) {
  auto segs = random_segments(static_cast<int>(state.range(0)), 2, 6.0, 1.0, 2.5, 1);
  for (auto _ : state) benchmark::DoNotOptimize(segment_diam_at_most(segs, 3, 2));
}
BENCHMARK(BM_SegmentsDelta3)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_ShatterNeighborhoods(benchmark::State& state) {
  auto segs = random_segments(static_cast<int>(state.range(0)), 2, 5.0, 0.8, 2.5, 3);
  auto g = build_graph(std::vector<Shape>(segs.begin(), segs.end()));
  auto sys = neighborhood_system(g);
  for (auto _ : state) benchmark::DoNotOptimize(search_shattered(sys, 4, 100000, 1));
}
BENCHMARK(BM_ShatterNeighborhoods)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

void BM_InstanceRoundTrip(benchmark::State& state) {
  InstanceFile f = to_instance_file(disks(random_points(static_cast<int>(state.range(0)), 3.0, 1)));
  for (auto _ : state) benchmark::DoNotOptimize(parse_instance(serialize_instance(f)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_InstanceRoundTrip)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
