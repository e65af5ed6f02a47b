#include "topvol/cfrac.hpp"
#include "topvol/dilog.hpp"
#include "topvol/gluing.hpp"
#include "topvol/lens.hpp"
#include "topvol/voldiff.hpp"

#include <benchmark/benchmark.h>

#include <filesystem>
#include <string>

namespace {

using namespace topvol;

void BM_BlochWigner(benchmark::State& state) {
  const Precision precision(static_cast<int>(state.range(0)));
  const Complex z = Complex::parse("0.3", "0.7", precision);
  for (auto _ : state) benchmark::DoNotOptimize(bloch_wigner(z));
}
BENCHMARK(BM_BlochWigner)->Arg(30)->Arg(60)->Arg(120)->Arg(400);

void BM_RegularOctahedron(benchmark::State& state) {
  const Precision precision(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(regular_octahedron_volume(precision));
}
BENCHMARK(BM_RegularOctahedron)->Arg(60)->Arg(400);

void BM_SolveGeometric(benchmark::State& state, const char* label) {
  const auto path = std::filesystem::path(TOPVOL_BENCH_SHAPE_DIR) / (std::string(label) + ".rect");
  const GluingSystem system = load_rect_file(path);
  SolverOptions options;
  options.precision = Precision(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_geometric(system, std::nullopt, options));
}
BENCHMARK_CAPTURE(BM_SolveGeometric, m006, "m006")->Arg(60)->Arg(120);
BENCHMARK_CAPTURE(BM_SolveGeometric, m015, "m015")->Arg(60)->Arg(120);

void BM_LensMinimiser(benchmark::State& state) {
  const LensClass lens(state.range(0), 1);
  for (auto _ : state) benchmark::DoNotOptimize(lens_minimiser(lens));
}
BENCHMARK(BM_LensMinimiser)->Arg(5)->Arg(50)->Arg(200);

void BM_DecideWvsP(benchmark::State& state) {
  const Slope s{1000003, 402711};
  for (auto _ : state) benchmark::DoNotOptimize(decide_w_vs_p(s));
}
BENCHMARK(BM_DecideWvsP);

void BM_CfExpand(benchmark::State& state) {
  const QuadraticIrrational x = QuadraticIrrational::tie_ratio_plus();
  const auto count = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cf_expand(x, count));
}
BENCHMARK(BM_CfExpand)->Arg(40)->Arg(400)->Arg(4000);

}  // namespace

BENCHMARK_MAIN();
