#include "objest/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "objest/philox.hpp"
#include "objest/summation.hpp"

namespace objest::kernels {
namespace {

constexpr double kHalf = 0.5;

inline double gaussian_kernel(double z) noexcept { return std::exp(-kHalf * z * z); }

void require_open_unit(std::span<const double> values) {
  for (double u : values) {
    if (!(u > 0.0 && u < 1.0)) throw std::domain_error("quantile_transform: value outside (0, 1)");
  }
}

std::size_t block_count(std::size_t n) noexcept { return (n + kReductionBlock - 1) / kReductionBlock; }

CompensatedSum kernel_block(std::span<const double> xs, double x, double inv_h) noexcept {
  CompensatedSum s;
  for (double xi : xs) s.add(gaussian_kernel((xi - x) * inv_h));
  return s;
}

// Blocked kernel sum whose grouping depends only on xs.size().
double blocked_kernel_sum(std::span<const double> xs, double x, double inv_h, bool threaded) {
  const std::size_t blocks = block_count(xs.size());
  std::vector<CompensatedSum> partial(blocks);
  const auto nblocks = static_cast<std::ptrdiff_t>(blocks);
#pragma omp parallel for schedule(static) if (threaded)
  for (std::ptrdiff_t b = 0; b < nblocks; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kReductionBlock;
    const std::size_t len = std::min(kReductionBlock, xs.size() - lo);
    partial[static_cast<std::size_t>(b)] = kernel_block(xs.subspan(lo, len), x, inv_h);
  }
  CompensatedSum total;
  for (const auto& p : partial) total.add(p);
  return total.value();
}

}  // namespace

namespace serial {

void weyl_fill(std::span<double> out, std::uint64_t first_index, Irrational alpha,
               unsigned precision_bits) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = weyl_term(first_index + i, alpha, precision_bits);
  }
}

void quantile_transform(std::span<double> values, const DistributionSpec& spec) {
  require_open_unit(values);
  for (double& v : values) v = quantile(spec, v);
}

void uniform_fill(std::span<double> out, std::uint64_t seed, std::uint64_t stream) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = Philox4x32::uniform_open(seed, stream, i);
}

void bernoulli_fill(std::span<std::uint8_t> out, double theta, std::uint64_t seed,
                    std::uint64_t stream) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = Philox4x32::uniform_open(seed, stream, i) < theta ? 1 : 0;
  }
}

void haar_trial_ones(std::span<std::uint64_t> ones, std::size_t length, std::uint64_t seed) {
  for (std::size_t t = 0; t < ones.size(); ++t) {
    std::uint64_t count = 0;
    for (std::size_t k = 0; k < length; ++k) {
      count += Philox4x32::uniform_open(seed, t, k) < 0.5 ? 1 : 0;
    }
    ones[t] = count;
  }
}

double gaussian_kernel_sum(std::span<const double> xs, double x, double bandwidth) {
  const double inv_h = 1.0 / bandwidth;
  return kernel_block(xs, x, inv_h).value();
}

}  // namespace serial

namespace parallel {

void weyl_fill(std::span<double> out, std::uint64_t first_index, Irrational alpha,
               unsigned precision_bits) {
  if (out.empty()) return;
  // Surface precision errors here; the loop body must not throw.
  (void)weyl_term(first_index + out.size() - 1, alpha, precision_bits);
  (void)weyl_term(first_index, alpha, precision_bits);
  const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] =
        weyl_term(first_index + static_cast<std::uint64_t>(i), alpha, precision_bits);
  }
}

void quantile_transform(std::span<double> values, const DistributionSpec& spec) {
  require_open_unit(values);
  const auto n = static_cast<std::ptrdiff_t>(values.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    auto& v = values[static_cast<std::size_t>(i)];
    v = quantile(spec, v);
  }
}

void uniform_fill(std::span<double> out, std::uint64_t seed, std::uint64_t stream) {
  const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] =
        Philox4x32::uniform_open(seed, stream, static_cast<std::uint64_t>(i));
  }
}

void bernoulli_fill(std::span<std::uint8_t> out, double theta, std::uint64_t seed,
                    std::uint64_t stream) {
  const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] =
        Philox4x32::uniform_open(seed, stream, static_cast<std::uint64_t>(i)) < theta ? 1 : 0;
  }
}

void haar_trial_ones(std::span<std::uint64_t> ones, std::size_t length, std::uint64_t seed) {
  const auto trials = static_cast<std::ptrdiff_t>(ones.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t t = 0; t < trials; ++t) {
    const auto stream = static_cast<std::uint64_t>(t);
    std::uint64_t count = 0;
    // Bit k is set iff the uniform is below 1/2, i.e. the top random bit of
    // draw k is 0. One block serves two consecutive draws.
    const std::size_t pairs = length / 2;
    for (std::size_t p = 0; p < pairs; ++p) {
      const auto draws = Philox4x32::pair64(seed, stream, p);
      count += (draws[0] >> 63) == 0 ? 1 : 0;
      count += (draws[1] >> 63) == 0 ? 1 : 0;
    }
    if (length % 2 != 0) count += (Philox4x32::bits64(seed, stream, length - 1) >> 63) == 0 ? 1 : 0;
    ones[static_cast<std::size_t>(t)] = count;
  }
}

double gaussian_kernel_sum(std::span<const double> xs, double x, double bandwidth) {
  return blocked_kernel_sum(xs, x, 1.0 / bandwidth, true);
}

void gaussian_kernel_grid(std::span<const double> xs, std::span<const double> grid,
                          double bandwidth, std::span<double> out) {
  if (out.size() != grid.size()) throw std::invalid_argument("gaussian_kernel_grid: size mismatch");
  const double inv_h = 1.0 / bandwidth;
  const auto m = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t j = 0; j < m; ++j) {
    const auto idx = static_cast<std::size_t>(j);
    out[idx] = blocked_kernel_sum(xs, grid[idx], inv_h, false);
  }
}

}  // namespace parallel

}  // namespace objest::kernels
