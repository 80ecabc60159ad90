#pragma once

// Data-parallel inner loops. Each kernel has a straightforward serial
// reference and an OpenMP version; the public API calls the parallel one and
// the tests pin the two against each other.
//
// Elementwise kernels are bit-identical across the two versions. Reductions
// in the parallel versions sum fixed-size blocks (independent of the thread
// count) with compensated arithmetic and fold the block partials in order,
// so their results are reproducible for any OMP_NUM_THREADS.

#include <cstddef>
#include <cstdint>
#include <span>

#include "objest/distributions.hpp"
#include "objest/weyl.hpp"

namespace objest::kernels {

inline constexpr std::size_t kReductionBlock = 4096;

namespace serial {

// out[i] = weyl_term(first_index + i)
void weyl_fill(std::span<double> out, std::uint64_t first_index, Irrational alpha,
               unsigned precision_bits);
// values[i] = quantile(spec, values[i])
void quantile_transform(std::span<double> values, const DistributionSpec& spec);
// out[i] = Philox uniform on (0,1) for (seed, stream, i)
void uniform_fill(std::span<double> out, std::uint64_t seed, std::uint64_t stream);
// out[i] = 1 iff uniform(seed, stream, i) < theta
void bernoulli_fill(std::span<std::uint8_t> out, double theta, std::uint64_t seed,
                    std::uint64_t stream);
// ones[t] = number of ones among `length` Haar (theta = 1/2) bits of stream t
void haar_trial_ones(std::span<std::uint64_t> ones, std::size_t length, std::uint64_t seed);
// sum_i phi((xs[i] - x) / bandwidth)
double gaussian_kernel_sum(std::span<const double> xs, double x, double bandwidth);

}  // namespace serial

namespace parallel {

void weyl_fill(std::span<double> out, std::uint64_t first_index, Irrational alpha,
               unsigned precision_bits);
void quantile_transform(std::span<double> values, const DistributionSpec& spec);
void uniform_fill(std::span<double> out, std::uint64_t seed, std::uint64_t stream);
void bernoulli_fill(std::span<std::uint8_t> out, double theta, std::uint64_t seed,
                    std::uint64_t stream);
void haar_trial_ones(std::span<std::uint64_t> ones, std::size_t length, std::uint64_t seed);
double gaussian_kernel_sum(std::span<const double> xs, double x, double bandwidth);
// out[j] = gaussian_kernel_sum(xs, grid[j], bandwidth), parallel over grid points
void gaussian_kernel_grid(std::span<const double> xs, std::span<const double> grid,
                          double bandwidth, std::span<double> out);

}  // namespace parallel

}  // namespace objest::kernels
