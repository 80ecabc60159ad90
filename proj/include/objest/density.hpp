#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace objest {

enum class BandwidthRule { PowerLaw };

// a_n = scale_factor * n^(-exponent)
struct BandwidthSchedule {
  BandwidthRule rule = BandwidthRule::PowerLaw;
  double exponent = 0.2;
  double scale_factor = 1.0;

  void validate() const;  // exponent in (0, 1), scale_factor > 0
  double bandwidth(std::size_t n) const;
};

struct SigmaEstimateConfig {
  double known_mean = 0.0;      // a
  double fallback_sigma = 1.0;  // sigma_0
  std::size_t n0 = 1;
  // Evaluate the kernel trace at n = N, N - stride, ... >= n0. The trace at
  // one n costs O(n) kernel evaluations, so stride 1 is quadratic in N.
  std::size_t trace_stride = 1;
};

/// Rosenblatt estimate (n a_n)^{-1} sum_i phi((x_i - x) / a_n), a_n from the
/// schedule at n = xs.size(), Gaussian kernel.
double kernel_density_at(std::span<const double> xs, double x, const BandwidthSchedule& schedule);

// Same with an explicit bandwidth.
double kernel_density_with_bandwidth(std::span<const double> xs, double x, double bandwidth);

// kernel_density_at over a grid of evaluation points.
std::vector<double> kernel_density_grid(std::span<const double> xs, std::span<const double> grid,
                                        const BandwidthSchedule& schedule);

/// Tail supremum of 1 / (sqrt(2 pi) f_n(a)) over n in [n0, N], with the
/// sigma_0 fallback when the supremum is not a positive value other than
/// sigma_0. Throws EstimateUndefined when f_N(a) = 0.
double sigma_kernel_estimate(std::span<const double> xs, const SigmaEstimateConfig& cfg,
                             const BandwidthSchedule& schedule);

/// Per-n value -a / Phi^{-1}(u_n), u_n = #{x_i <= 0} / n. Throws
/// EstimateUndefined when u_n is 0 or 1 and ZeroDenominator when
/// Phi^{-1}(u_n) = 0. a = 0 is a domain error.
double sigma_signcount_term(std::span<const double> xs, double known_mean);

/// Per-n value -(sum x_k) / (n Phi^{-1}(u_n)); both mean and sigma unknown.
double sigma_mean_signcount_term(std::span<const double> xs);

// Tail suprema of the two per-n terms over [n0, N]. Indices where the term
// is undefined are skipped; the call throws only if every index is skipped.
double sigma_signcount_estimate(std::span<const double> xs, const SigmaEstimateConfig& cfg);
double sigma_mean_signcount_estimate(std::span<const double> xs, const SigmaEstimateConfig& cfg);

// Trace stride used by the harness: exact trace up to n = 4000, then about
// 2000 evaluations across [n/2, n].
constexpr std::size_t default_kernel_trace_stride(std::size_t n) noexcept {
  return n / 4000 == 0 ? 1 : n / 4000;
}

/// sqrt of the sample variance with divisor n (corrected = false) or n - 1.
double sample_sd(std::span<const double> xs, bool corrected);

}  // namespace objest
