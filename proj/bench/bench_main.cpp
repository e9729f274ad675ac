// Serial references vs. OpenMP kernels.
#include <benchmark/benchmark.h>

#include "rsside/scheme_builder.hpp"

using namespace rsside;

namespace {

struct Instance {
  TowerPtr tower = make_tower(2, 1, 6);
  CodePtr code = make_code(tower, 64, 60);
  Subspace side = subfield_subspace(tower, 2);
};

const Instance& instance() {
  static const Instance inst;
  return inst;
}

void BM_OptimizeSerial(benchmark::State& st) {
  const auto& in = instance();
  OptimizeOptions o;
  o.serial = true;
  for (auto _ : st) benchmark::DoNotOptimize(optimize_exhaustive(*in.code, 0, in.side.basis(), 2, o).score);
}

void BM_OptimizeParallel(benchmark::State& st) {
  const auto& in = instance();
  OptimizeOptions o;
  o.threads = static_cast<unsigned>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(optimize_exhaustive(*in.code, 0, in.side.basis(), 2, o).score);
}

void BM_CosetSumSerial(benchmark::State& st) {
  auto t = make_tower(2, 1, 12);
  const auto W = subfield_subspace(t, 6);
  for (auto _ : st) benchmark::DoNotOptimize(coset_dimension_sum_serial(W, 4));
}

void BM_CosetSumParallel(benchmark::State& st) {
  auto t = make_tower(2, 1, 12);
  const auto W = subfield_subspace(t, 6);
  for (auto _ : st) benchmark::DoNotOptimize(coset_dimension_sum(W, 4, static_cast<unsigned>(st.range(0))));
}

template <bool Table>
void BM_Mul(benchmark::State& st) {
  auto t = make_tower(3, 1, 4);
  std::uint32_t a = 1;
  Element acc = t->one();
  for (auto _ : st) {
    const Element x{a};
    acc = Table ? t->mul(acc, x) : t->mul_reference(acc, x);
    if (acc.is_zero()) acc = t->one();
    a = a % (t->size() - 1) + 1;
  }
  benchmark::DoNotOptimize(acc);
}

}  // namespace

BENCHMARK(BM_OptimizeSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OptimizeParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CosetSumSerial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_CosetSumParallel)->Arg(1)->Arg(4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Mul<true>)->Name("BM_MulTable");
BENCHMARK(BM_Mul<false>)->Name("BM_MulReference");

BENCHMARK_MAIN();
