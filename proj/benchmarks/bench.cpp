#include <benchmark/benchmark.h>

#include "ifstk/beurling.hpp"
#include "ifstk/fourier.hpp"
#include "ifstk/frames.hpp"
#include "ifstk/ifs.hpp"
#include "ifstk/spectra.hpp"

namespace {

using namespace ifstk;

Mat mat1(double v) {
  Mat m(1, 1);
  m(0, 0) = v;
  return m;
}

Mat dig2(double a, double b) {
  Mat m(1, 2);
  m(0, 0) = a;
  m(0, 1) = b;
  return m;
}

ValidatedIfs jp() { return validate_ifs(mat1(4), dig2(0, 2)); }

SpectrumSpec jp_spectrum() {
  SpectrumSpec s;
  s.base = mat1(4);
  s.digits = dig2(0, 1);
  return s;
}

void BM_AttractorLevel(benchmark::State& state) {
  const ValidatedIfs v = jp();
  const int level = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(attractor_level(v.spec, level));
  state.SetComplexityN(1 << level);
}
BENCHMARK(BM_AttractorLevel)->Arg(8)->Arg(12)->Arg(16);

void BM_EnumerateTruncation(benchmark::State& state) {
  const SpectrumSpec s = jp_spectrum();
  const int level = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_truncation(s, level));
}
BENCHMARK(BM_EnumerateTruncation)->Arg(8)->Arg(12)->Arg(16);

void BM_CertifiedFt(benchmark::State& state) {
  const ValidatedIfs v = jp();
  const double x = 12345.678;
  for (auto _ : state) benchmark::DoNotOptimize(ft(v, x));
}
BENCHMARK(BM_CertifiedFt);

void BM_BesselSum(benchmark::State& state) {
  const ValidatedIfs v = jp();
  const PointSet lambda = enumerate_truncation(jp_spectrum(), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bessel_sum(v, lambda, vec1(0.3)));
}
BENCHMARK(BM_BesselSum)->Arg(6)->Arg(10);

void BM_CountMax(benchmark::State& state) {
  const PointSet lambda = enumerate_truncation(jp_spectrum(), static_cast<int>(state.range(0)));
  const double h = (lambda.points(0, lambda.size() - 1) - lambda.points(0, 0)) / 16.0;
  for (auto _ : state) benchmark::DoNotOptimize(count_max(lambda, h));
}
BENCHMARK(BM_CountMax)->Arg(10)->Arg(14)->Arg(16);

void BM_DensityProfile(benchmark::State& state) {
  const PointSet lambda = enumerate_truncation(jp_spectrum(), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(density_profile(lambda, 0.5));
}
BENCHMARK(BM_DensityProfile)->Arg(10)->Arg(14);

void BM_FrameBounds(benchmark::State& state) {
  const ValidatedIfs v = jp();
  const int level = static_cast<int>(state.range(0));
  const PointSet lambda = enumerate_truncation(jp_spectrum(), level);
  for (auto _ : state)
    benchmark::DoNotOptimize(frame_bounds_finite(v.spec, level, lambda));
}
BENCHMARK(BM_FrameBounds)->Arg(4)->Arg(6)->Arg(8);

void BM_LatticeCompat(benchmark::State& state) {
  const PointSet lambda = enumerate_truncation(jp_spectrum(), static_cast<int>(state.range(0)));
  const Mat r = mat1(4);
  for (auto _ : state) benchmark::DoNotOptimize(lattice_compat(lambda, r, 1));
}
BENCHMARK(BM_LatticeCompat)->Arg(10)->Arg(14);

} // namespace

BENCHMARK_MAIN();
