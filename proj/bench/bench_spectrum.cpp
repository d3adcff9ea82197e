// Serial reference vs OpenMP real spectrum, with the dense oracle for scale.

#include <benchmark/benchmark.h>

#include "kms/oracle.hpp"
#include "kms/realspectrum.hpp"

namespace {

void BM_SpectrumSerial(benchmark::State& state) {
  const kms::KmsParams p(int(state.range(0)), 3.0);
  kms::SpectrumOptions o;
  o.vectors = false;
  for (auto _ : state) benchmark::DoNotOptimize(kms::real_spectrum_serial(p, o));
  state.SetComplexityN(state.range(0));
}

void BM_SpectrumParallel(benchmark::State& state) {
  const kms::KmsParams p(int(state.range(0)), 3.0);
  kms::SpectrumOptions o;
  o.vectors = false;
  for (auto _ : state) benchmark::DoNotOptimize(kms::real_spectrum(p, o));
  state.SetComplexityN(state.range(0));
}

void BM_SpectrumWithVectors(benchmark::State& state) {
  const kms::KmsParams p(int(state.range(0)), 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(kms::real_spectrum(p));
}

void BM_Oracle(benchmark::State& state) {
  const kms::KmsParams p(int(state.range(0)), 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(kms::oracle_eig_kms(p));
}

}  // namespace

BENCHMARK(BM_SpectrumSerial)->RangeMultiplier(8)->Range(64, 1 << 17)->Unit(benchmark::kMillisecond)->Complexity();
BENCHMARK(BM_SpectrumParallel)->RangeMultiplier(8)->Range(64, 1 << 17)->Unit(benchmark::kMillisecond)->Complexity();
BENCHMARK(BM_SpectrumWithVectors)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Oracle)->Arg(64)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
