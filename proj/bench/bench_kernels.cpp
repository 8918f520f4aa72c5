// Fast kernels against their serial references: the blocked, vectorized
// Atkinson sums vs the one-term-at-a-time Kahan versions, and the striped
// divisor sieve vs the plain one.  Zeta itself is timed for scale.
#include <benchmark/benchmark.h>

#include <cstdint>

#include "zdl/atkinson.hpp"
#include "zdl/divisor.hpp"
#include "zdl/zeta.hpp"

namespace {

const zdl::DivisorTable& table() {
  static const zdl::DivisorTable t = zdl::sieve_divisors(131072);
  return t;
}

const zdl::AtkinsonSums& sums() {
  static const zdl::AtkinsonSums s(table());
  return s;
}

void BM_Sigma1Blocked(benchmark::State& state) {
  const auto N = std::uint64_t(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(sums().sigma1(double(N), N));
  state.SetItemsProcessed(std::int64_t(state.iterations()) *
                          std::int64_t(N));
}
BENCHMARK(BM_Sigma1Blocked)->Arg(10000)->Arg(100000);

void BM_Sigma1Reference(benchmark::State& state) {
  const auto N = std::uint64_t(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(zdl::sigma1_reference(double(N), N, table()));
  state.SetItemsProcessed(std::int64_t(state.iterations()) *
                          std::int64_t(N));
}
BENCHMARK(BM_Sigma1Reference)->Arg(10000)->Arg(100000);

void BM_Sigma2Blocked(benchmark::State& state) {
  const auto N = std::uint64_t(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(sums().sigma2(double(N), N));
}
BENCHMARK(BM_Sigma2Blocked)->Arg(100000);

void BM_Sigma2Reference(benchmark::State& state) {
  const auto N = std::uint64_t(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(zdl::sigma2_reference(double(N), N, table()));
}
BENCHMARK(BM_Sigma2Reference)->Arg(100000);

void BM_SieveStriped(benchmark::State& state) {
  const auto n = std::uint64_t(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(zdl::sieve_divisors(n));
  state.SetItemsProcessed(std::int64_t(state.iterations()) *
                          std::int64_t(n));
}
BENCHMARK(BM_SieveStriped)->Arg(1 << 20);

void BM_SieveSerial(benchmark::State& state) {
  const auto n = std::uint64_t(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(zdl::sieve_divisors_serial(n));
  state.SetItemsProcessed(std::int64_t(state.iterations()) *
                          std::int64_t(n));
}
BENCHMARK(BM_SieveSerial)->Arg(1 << 20);

void BM_ZetaHalf(benchmark::State& state) {
  const double t = double(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(zdl::zeta_half(t).value);
}
BENCHMARK(BM_ZetaHalf)->Arg(1000)->Arg(100000);

void BM_AtkinsonSurrogate(benchmark::State& state) {
  const double T = double(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sums().evaluate(T).E_approx);
}
BENCHMARK(BM_AtkinsonSurrogate)->Arg(10000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
