// OpenMP kernels against their serial references on 2D problem-sized grids.
// Thread count follows OMP_NUM_THREADS.

#include <map>
#include <random>

#include <benchmark/benchmark.h>

#include "fraclap/problem.hpp"
#include "fraclap/sine_transform.hpp"

namespace {

using namespace fraclap;

struct Setup {
  BasisPtr basis;
  Grid grid;
  SineTransform transform;
  Eigen::VectorXd coeffs;
  Eigen::VectorXd nodal;

  explicit Setup(int modes)
      : basis(build_basis(Domain::rectangle(1.0, 1.0, modes, modes), {modes, modes})),
        grid(quadrature_grid(*basis, 4)),
        transform(basis, grid) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> n;
    coeffs.resize(basis->size());
    for (int j = 0; j < basis->size(); ++j) coeffs[j] = n(rng) / basis->mode(j).rho;
    nodal = transform.synthesize(coeffs);
  }
};

const Setup& setup(int modes) {
  static std::map<int, Setup> cache;
  auto it = cache.find(modes);
  if (it == cache.end()) it = cache.emplace(modes, modes).first;
  return it->second;
}

void BM_Synthesize(benchmark::State& st) {
  const Setup& s = setup(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(s.transform.synthesize(s.coeffs));
}

void BM_SynthesizeReference(benchmark::State& st) {
  const Setup& s = setup(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(reference::synthesize(*s.basis, s.grid, s.coeffs));
}

void BM_Analyze(benchmark::State& st) {
  const Setup& s = setup(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(s.transform.analyze(s.nodal));
}

void BM_AnalyzeReference(benchmark::State& st) {
  const Setup& s = setup(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(reference::analyze(*s.basis, s.grid, s.nodal));
}

void BM_WeightedGram(benchmark::State& st) {
  const Setup& s = setup(static_cast<int>(st.range(0)));
  const Eigen::VectorXd w = s.nodal.cwiseAbs();
  for (auto _ : st) benchmark::DoNotOptimize(s.transform.weighted_gram(w));
}

void BM_WeightedGramReference(benchmark::State& st) {
  const Setup& s = setup(static_cast<int>(st.range(0)));
  const Eigen::VectorXd w = s.nodal.cwiseAbs();
  for (auto _ : st) benchmark::DoNotOptimize(reference::weighted_gram(*s.basis, s.grid, w));
}

const Nonlinearity kNl{1.0, 0.5, 3.0};

void BM_PointwiseF(benchmark::State& st) {
  const Setup& s = setup(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(pointwise::f(kNl, s.nodal));
}

void BM_PointwiseFReference(benchmark::State& st) {
  const Setup& s = setup(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(reference::pointwise_f(kNl, s.nodal));
}

void BM_SumF(benchmark::State& st) {
  const Setup& s = setup(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(pointwise::sum_F(kNl, s.nodal));
}

void BM_SumFReference(benchmark::State& st) {
  const Setup& s = setup(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(reference::pointwise_sum_F(kNl, s.nodal));
}

}  // namespace

BENCHMARK(BM_Synthesize)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SynthesizeReference)->Arg(16)->Arg(32)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Analyze)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_AnalyzeReference)->Arg(16)->Arg(32)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_WeightedGram)->Arg(16)->Arg(24)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WeightedGramReference)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PointwiseF)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_PointwiseFReference)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SumF)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SumFReference)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
