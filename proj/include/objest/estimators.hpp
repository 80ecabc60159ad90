#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "objest/distributions.hpp"

namespace objest {

struct ProbePoint {
  double x_star = 0.0;
};

struct FallbackParam {
  double theta0 = 0.0;
};

// Running estimator values; values[n - 1] is the value on the first n points.
struct EstimatorTrace {
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
};

struct TailExtrema {
  double sup_tail = 0.0;
  double inf_tail = 0.0;
};

enum class TailLimit { Upper, Lower };

// Fraction of points <= threshold (closed ray).
double fraction_at_or_below(std::span<const double> xs, double threshold);

/// -F^{-1}(#{x_i <= 0} / n): estimate of the location theta in x_k = theta + noise_k,
/// where F is the noise CDF. Throws EstimateUndefined when the fraction is 0 or 1.
double sign_count_estimate(std::span<const double> xs, const DistributionSpec& noise);

/// #{x_i <= x_star} / n, a consistent estimate of F_theta(x_star).
double cdf_point_estimate(std::span<const double> xs, ProbePoint probe);

double sample_mean(std::span<const double> xs);

// m_n = (x_1 + ... + x_n) / n for n = 1..N, with compensated accumulation.
std::vector<double> running_means(std::span<const double> xs);

/// Incremental trace of cdf_point_estimate over all prefixes, O(N).
EstimatorTrace trace(std::span<const double> xs, ProbePoint probe);

/// Max and min of trace values at 1-based indices n0..N. Throws
/// std::domain_error unless 1 <= n0 <= N.
TailExtrema tail_extrema(const EstimatorTrace& trace, std::size_t n0);

/// Finite-window version of the limsup/liminf objective estimator: the tail
/// extremum v of the CDF-at-probe trace if param_set_contains(v) and
/// v != fallback.theta0, else fallback.theta0.
double objective_cdf_estimate(std::span<const double> xs, ProbePoint probe,
                              const std::function<bool(double)>& param_set_contains,
                              FallbackParam fallback, std::size_t n0, TailLimit which);

// Finite proxy for "the running means converge": the means over the second
// half of the window all lie within tol of the last one.
struct ConvergenceDiagnostic {
  bool converged = false;
  double limit = 0.0;  // m_N
};

ConvergenceDiagnostic diagnose_convergence(std::span<const double> running_means, double tol);

// L - floor(L), always in [0, 1).
double fractional_part(double value);

/// Strong objective estimate on [0, 1]: 1 if the running means settle at 1,
/// the fractional part of the limit if they settle elsewhere, and the binary
/// shadow sum_k [x_k > 0] 2^-k when they do not settle. Requires N >= 4.
double strong_fractional_estimate(std::span<const double> xs, double convergence_tol,
                                  std::size_t shadow_depth);

/// sum_{k=1..depth} [x_k > 0] / 2^k. Throws std::domain_error if depth > N.
double binary_shadow(std::span<const double> xs, std::size_t depth);

// ceil(n / 2), the default tail start.
constexpr std::size_t half_tail_start(std::size_t n) noexcept { return (n + 1) / 2; }

// min(53, n): enough terms to saturate a double.
constexpr std::size_t default_shadow_depth(std::size_t n) noexcept { return n < 53 ? n : 53; }

}  // namespace objest
