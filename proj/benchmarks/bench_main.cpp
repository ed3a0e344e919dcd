#include "forge/congruence.hpp"
#include "forge/cuspcheck.hpp"
#include "forge/ffield.hpp"
#include "forge/toraldata.hpp"
#include "sweep.hpp"

#include <benchmark/benchmark.h>

using namespace forge;

static void BM_TraceZeroGenerator(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    FieldExtension k(13, 1, n);
    benchmark::DoNotOptimize(find_trace_zero_generator(k));
  }
}
BENCHMARK(BM_TraceZeroGenerator)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMicrosecond);

static void BM_FieldGenerator(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    FieldExtension k(17, 1, n);
    benchmark::DoNotOptimize(k.generator());
  }
}
BENCHMARK(BM_FieldGenerator)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMicrosecond);

static void BM_GenericElement(benchmark::State& state) {
  const char* names[] = {"A4", "E6", "D7", "E8"};
  RootSystemType t = RootSystemType::parse(names[state.range(0)]);
  RootSystem rs = build_root_system(t);
  u64 p = next_prime(static_cast<u64>(coxeter_number(t)));
  for (auto _ : state) {
    ZeroToralDatum d = build_generic_element(t, trivial_automorphism(rs), p, p, 1);
    benchmark::DoNotOptimize(verify_datum(d).pass());
  }
  state.SetLabel(t.name());
}
BENCHMARK(BM_GenericElement)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

static void BM_SweepRank4(benchmark::State& state) {
  SweepConfig cfg;
  cfg.types = irreducible_types(4);
  cfg.jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(cfg).pass());
}
BENCHMARK(BM_SweepRank4)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_Congruence(benchmark::State& state) {
  FiniteModel model = builtin_model("heisenberg", 3, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(verify_congruence_theorem(model, 2).pass);
}
BENCHMARK(BM_Congruence)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_CuspSums(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  EllipticSeed seed = elliptic_seed(5, 8);
  auto samples = cusp_samples(seed, m + 2, 4);
  auto xs = x_classes(5, m);
  for (auto _ : state) benchmark::DoNotOptimize(cusp_integral_check(seed, m + 2, m, xs, samples).pass);
}
BENCHMARK(BM_CuspSums)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_ExpLog(benchmark::State& state) {
  TruncatedMatrix X = TruncatedMatrix::from(5, 12, {5, 25, 125, -5});
  for (auto _ : state) benchmark::DoNotOptimize(log_truncated(exp_truncated(X)));
}
BENCHMARK(BM_ExpLog);
BENCHMARK_MAIN();
