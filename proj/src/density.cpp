#include "objest/density.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "objest/distributions.hpp"
#include "objest/error.hpp"
#include "objest/estimators.hpp"
#include "objest/kernels.hpp"
#include "objest/summation.hpp"

namespace objest {
namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;
constexpr double kSqrt2Pi = 2.50662827463100050242;

void check_tail_start(std::span<const double> xs, std::size_t n0, const char* who) {
  if (xs.empty()) throw std::domain_error(std::string(who) + ": window is empty");
  if (n0 == 0 || n0 > xs.size()) {
    throw std::domain_error(std::string(who) + ": n0 = " + std::to_string(n0) + " outside [1, " +
                            std::to_string(xs.size()) + "]");
  }
}

double apply_sigma_fallback(double sup, double fallback_sigma) {
  return (sup > 0.0 && sup != fallback_sigma) ? sup : fallback_sigma;
}

// Shared tail-supremum scan for the sign-count sigma estimators. `numerator`
// returns the quantity divided by -Phi^{-1}(u_n) at prefix length n.
template <typename Numerator>
double signcount_tail_sup(std::span<const double> xs, std::size_t n0, Numerator numerator,
                          const char* who) {
  check_tail_start(xs, n0, who);
  std::size_t below = 0;
  std::optional<double> sup;
  bool saw_zero_quantile = false;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] <= 0.0) ++below;
    const std::size_t n = i + 1;
    if (n < n0 || below == 0 || below == n) continue;
    const double q = standard_normal_quantile(static_cast<double>(below) / static_cast<double>(n));
    if (q == 0.0) {
      saw_zero_quantile = true;
      continue;
    }
    const double term = -numerator(n) / q;
    if (!sup || term > *sup) sup = term;
  }
  if (!sup) {
    const std::string msg = std::string(who) + ": term undefined at every index of the tail";
    if (saw_zero_quantile) throw ZeroDenominator(msg);
    throw EstimateUndefined(msg);
  }
  return *sup;
}

double signcount_term(std::span<const double> xs, double numerator, const char* who) {
  const double u = fraction_at_or_below(xs, 0.0);
  if (u == 0.0 || u == 1.0) {
    throw EstimateUndefined(std::string(who) + ": sign fraction is " + (u == 0.0 ? "0" : "1") +
                            "; Phi^{-1} diverges");
  }
  const double q = standard_normal_quantile(u);
  if (q == 0.0) throw ZeroDenominator(std::string(who) + ": Phi^{-1}(u_n) = 0");
  return -numerator / q;
}

}  // namespace

void BandwidthSchedule::validate() const {
  if (!(exponent > 0.0 && exponent < 1.0)) {
    throw std::domain_error("bandwidth exponent must lie in (0, 1)");
  }
  if (!(scale_factor > 0.0) || !std::isfinite(scale_factor)) {
    throw std::domain_error("bandwidth scale factor must be positive");
  }
}

double BandwidthSchedule::bandwidth(std::size_t n) const {
  if (n == 0) throw std::domain_error("bandwidth: n must be >= 1");
  return scale_factor * std::pow(static_cast<double>(n), -exponent);
}

double kernel_density_with_bandwidth(std::span<const double> xs, double x, double bandwidth) {
  if (xs.empty()) throw std::domain_error("kernel_density: window is empty");
  if (!(bandwidth > 0.0)) throw std::domain_error("kernel_density: bandwidth must be positive");
  const double sum = kernels::parallel::gaussian_kernel_sum(xs, x, bandwidth);
  return kInvSqrt2Pi * sum / (static_cast<double>(xs.size()) * bandwidth);
}

double kernel_density_at(std::span<const double> xs, double x, const BandwidthSchedule& schedule) {
  schedule.validate();
  return kernel_density_with_bandwidth(xs, x, schedule.bandwidth(xs.size()));
}

std::vector<double> kernel_density_grid(std::span<const double> xs, std::span<const double> grid,
                                        const BandwidthSchedule& schedule) {
  if (xs.empty()) throw std::domain_error("kernel_density_grid: window is empty");
  schedule.validate();
  const double h = schedule.bandwidth(xs.size());
  std::vector<double> out(grid.size());
  kernels::parallel::gaussian_kernel_grid(xs, grid, h, out);
  const double norm = kInvSqrt2Pi / (static_cast<double>(xs.size()) * h);
  for (double& v : out) v *= norm;
  return out;
}

double sigma_kernel_estimate(std::span<const double> xs, const SigmaEstimateConfig& cfg,
                             const BandwidthSchedule& schedule) {
  check_tail_start(xs, cfg.n0, "sigma_kernel_estimate");
  if (cfg.trace_stride == 0) throw std::domain_error("sigma_kernel_estimate: stride must be >= 1");
  schedule.validate();
  if (kernel_density_at(xs, cfg.known_mean, schedule) == 0.0) {
    throw EstimateUndefined("sigma_kernel_estimate: kernel density at the known mean is zero");
  }
  double sup = -std::numeric_limits<double>::infinity();
  for (std::size_t n = xs.size(); n >= cfg.n0; n -= cfg.trace_stride) {
    const double f = kernel_density_at(xs.first(n), cfg.known_mean, schedule);
    if (f > 0.0) sup = std::max(sup, 1.0 / (kSqrt2Pi * f));
    if (n < cfg.n0 + cfg.trace_stride) break;
  }
  return apply_sigma_fallback(sup, cfg.fallback_sigma);
}

double sigma_signcount_term(std::span<const double> xs, double known_mean) {
  if (known_mean == 0.0) throw std::domain_error("sigma_signcount: the known mean must be non-zero");
  return signcount_term(xs, known_mean, "sigma_signcount");
}

double sigma_mean_signcount_term(std::span<const double> xs) {
  return signcount_term(xs, sample_mean(xs), "sigma_mean_signcount");
}

double sigma_signcount_estimate(std::span<const double> xs, const SigmaEstimateConfig& cfg) {
  if (cfg.known_mean == 0.0) {
    throw std::domain_error("sigma_signcount: the known mean must be non-zero");
  }
  const double a = cfg.known_mean;
  const double sup = signcount_tail_sup(
      xs, cfg.n0, [a](std::size_t) { return a; }, "sigma_signcount_estimate");
  return apply_sigma_fallback(sup, cfg.fallback_sigma);
}

double sigma_mean_signcount_estimate(std::span<const double> xs, const SigmaEstimateConfig& cfg) {
  const std::vector<double> means = running_means(xs);
  const double sup = signcount_tail_sup(
      xs, cfg.n0, [&means](std::size_t n) { return means[n - 1]; },
      "sigma_mean_signcount_estimate");
  return apply_sigma_fallback(sup, cfg.fallback_sigma);
}

double sample_sd(std::span<const double> xs, bool corrected) {
  const std::size_t min_len = corrected ? 2 : 1;
  if (xs.size() < min_len) {
    throw std::domain_error("sample_sd: needs at least " + std::to_string(min_len) + " points");
  }
  const double mean = sample_mean(xs);
  CompensatedSum ss;
  for (double x : xs) {
    const double d = x - mean;
    ss.add(d * d);
  }
  const double divisor = static_cast<double>(xs.size() - (corrected ? 1 : 0));
  return std::sqrt(ss.value() / divisor);
}

}  // namespace objest
