#include "bianchi/chenruan.hpp"
#include "bianchi/dioph.hpp"
#include "bianchi/report.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace bianchi;

static void BM_QuadMultiply(benchmark::State& state) {
  RingBasis r = RingBasis::for_m(state.range(0));
  std::mt19937 rng(1);
  std::uniform_int_distribution<long> c(-1000, 1000), d(1, 97);
  std::vector<QuadElem> xs;
  for (int i = 0; i < 256; ++i)
    xs.emplace_back(r, make_rational(c(rng), d(rng)), make_rational(c(rng), d(rng)));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(xs[i % 256] * xs[(i + 1) % 256]);
    ++i;
  }
}
BENCHMARK(BM_QuadMultiply)->Arg(2)->Arg(11);

static void BM_Floor(benchmark::State& state) {
  RingBasis r = RingBasis::for_m(state.range(0));
  SwanOptions opts;
  opts.witnesses = false;
  for (auto _ : state) benchmark::DoNotOptimize(compute_floor(r, opts));
}
BENCHMARK(BM_Floor)->Arg(2)->Arg(11)->Arg(19)->Unit(benchmark::kMillisecond);

static void BM_Assemble(benchmark::State& state) {
  RingBasis r = RingBasis::for_m(state.range(0));
  SwanOptions opts;
  opts.witnesses = false;
  auto fc = std::make_shared<const FloorComplex>(compute_floor(r, opts));
  for (auto _ : state) benchmark::DoNotOptimize(assemble(fc));
}
BENCHMARK(BM_Assemble)->Arg(2)->Arg(11)->Arg(19)->Unit(benchmark::kMillisecond);

static void BM_TorsionReduce(benchmark::State& state) {
  OrbReport rep = assemble(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reduce(rep.two.graph));
}
BENCHMARK(BM_TorsionReduce)->Arg(2)->Arg(11)->Unit(benchmark::kMicrosecond);

static void BM_SolvePell(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(solve_pell(2, state.range(0)));
}
BENCHMARK(BM_SolvePell)->Arg(50)->Arg(500);

static void BM_SolveCaseTwo(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(solve_case2(2, state.range(0)));
}
BENCHMARK(BM_SolveCaseTwo)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

static void BM_CentraliserQuotient(benchmark::State& state) {
  OrbReport rep = assemble(2);
  MoebiusElt beta = standard_beta(rep.complex->basis);
  for (auto _ : state) benchmark::DoNotOptimize(centraliser_quotient(*rep.complex, beta, state.range(0)));
}
BENCHMARK(BM_CentraliserQuotient)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

static void BM_ReportJson(benchmark::State& state) {
  RunConfig cfg;
  cfg.m_list = {2};
  FullReport rep = run_one(2, cfg);
  for (auto _ : state) benchmark::DoNotOptimize(report_json(rep));
}
BENCHMARK(BM_ReportJson)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
