#include <benchmark/benchmark.h>

#include "qcorr/catalog.hpp"
#include "qcorr/entropy.hpp"
#include "qcorr/squashed.hpp"
#include "qcorr/variational.hpp"

using namespace qcorr;

static void BM_PartialTrace(benchmark::State& st) {
  const int d = static_cast<int>(st.range(0));
  const QState s = catalog::ginibre({d, d, d}, 1);
  for (auto _ : st) benchmark::DoNotOptimize(partial_trace(s, {"A", "C"}));
}
BENCHMARK(BM_PartialTrace)->Arg(2)->Arg(3)->Arg(4);

static void BM_ConditionalMutualInformation(benchmark::State& st) {
  const QState s = catalog::ginibre({2, 2, 2, 2}, 2);
  for (auto _ : st) benchmark::DoNotOptimize(conditional_mutual_information(s, "A", "B", "C"));
}
BENCHMARK(BM_ConditionalMutualInformation);

static void BM_MeasuredEntropyGradient(benchmark::State& st) {
  const int r = static_cast<int>(st.range(0));
  const QState s = catalog::ginibre({2, 2}, 3, r);
  const PureState psi = purify(s, "R");
  const MeasuredEntropy f(psi.density().matrix(), 4, r);
  Rng rng(4);
  const Matrix v = haar_isometry(r * r, r, rng);
  Matrix g;
  for (auto _ : st) benchmark::DoNotOptimize(f.value_and_gradient(v, g));
}
BENCHMARK(BM_MeasuredEntropyGradient)->Arg(2)->Arg(3)->Arg(4);

static void BM_OptimizeEofAntisym(benchmark::State& st) {
  const QState ab = partial_trace(catalog::antisym_qutrit().density(), {"A", "B"});
  Budget b;
  b.evaluations = static_cast<int>(st.range(0));
  b.restarts = 4;
  for (auto _ : st) benchmark::DoNotOptimize(optimize_eof(ab, b).value);
}
BENCHMARK(BM_OptimizeEofAntisym)->Arg(2000)->Unit(benchmark::kMillisecond);

static void BM_SquashedUpperBound(benchmark::State& st) {
  const QState w = catalog::werner(0.8);
  Budget b;
  b.evaluations = 2000;
  b.restarts = 2;
  for (auto _ : st) benchmark::DoNotOptimize(optimize_squashed_ub(w, 2, b).value);
}
BENCHMARK(BM_SquashedUpperBound)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
