// Serial reference vs OpenMP kernels. Run with OMP_NUM_THREADS set to the
// core count to see the speedup; on one core the two should be close.

#include <benchmark/benchmark.h>

#include <vector>

#include "objest/distributions.hpp"
#include "objest/kernels.hpp"
#include "objest/weyl.hpp"

namespace {

using namespace objest;
namespace ks = objest::kernels::serial;
namespace kp = objest::kernels::parallel;

template <bool Parallel>
void BM_WeylFill(benchmark::State& state) {
  std::vector<double> out(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    if constexpr (Parallel) {
      kp::weyl_fill(out, 1, Irrational::Pi, kDefaultPrecisionBits);
    } else {
      ks::weyl_fill(out, 1, Irrational::Pi, kDefaultPrecisionBits);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_GaussianQuantile(benchmark::State& state) {
  const std::vector<double> u = weyl_prefix(static_cast<std::size_t>(state.range(0)));
  const DistributionSpec spec{DistributionKind::Gaussian, 3.0, 5.0};
  std::vector<double> work(u.size());
  for (auto _ : state) {
    work = u;
    if constexpr (Parallel) {
      kp::quantile_transform(work, spec);
    } else {
      ks::quantile_transform(work, spec);
    }
    benchmark::DoNotOptimize(work.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_KernelSum(benchmark::State& state) {
  const SampleWindow w =
      sample_via_weyl(DistributionSpec::standard(DistributionKind::Gaussian),
                      static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    double s = Parallel ? kp::gaussian_kernel_sum(w.values(), 0.1, 0.1)
                        : ks::gaussian_kernel_sum(w.values(), 0.1, 0.1);
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_HaarTrials(benchmark::State& state) {
  std::vector<std::uint64_t> ones(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    if constexpr (Parallel) {
      kp::haar_trial_ones(ones, 10000, 3);
    } else {
      ks::haar_trial_ones(ones, 10000, 3);
    }
    benchmark::DoNotOptimize(ones.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 10000);
}

}  // namespace

BENCHMARK(BM_WeylFill<false>)->Arg(1 << 16);
BENCHMARK(BM_WeylFill<true>)->Arg(1 << 16);
BENCHMARK(BM_GaussianQuantile<false>)->Arg(1 << 16);
BENCHMARK(BM_GaussianQuantile<true>)->Arg(1 << 16);
BENCHMARK(BM_KernelSum<false>)->Arg(100000);
BENCHMARK(BM_KernelSum<true>)->Arg(100000);
BENCHMARK(BM_HaarTrials<false>)->Arg(256);
BENCHMARK(BM_HaarTrials<true>)->Arg(256);

BENCHMARK_MAIN();
