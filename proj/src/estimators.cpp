#include "objest/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "objest/error.hpp"
#include "objest/summation.hpp"

namespace objest {
namespace {

void require_nonempty(std::span<const double> xs, const char* who) {
  if (xs.empty()) throw std::domain_error(std::string(who) + ": window is empty");
}

}  // namespace

double fraction_at_or_below(std::span<const double> xs, double threshold) {
  require_nonempty(xs, "fraction_at_or_below");
  const auto count = std::count_if(xs.begin(), xs.end(), [&](double x) { return x <= threshold; });
  return static_cast<double>(count) / static_cast<double>(xs.size());
}

double sign_count_estimate(std::span<const double> xs, const DistributionSpec& noise) {
  const double u = fraction_at_or_below(xs, 0.0);
  if (u == 0.0 || u == 1.0) {
    throw EstimateUndefined("sign_count_estimate: " + std::string(u == 0.0 ? "no" : "every") +
                            " point of the window is <= 0; the noise quantile diverges");
  }
  return -quantile(noise, u);
}

double cdf_point_estimate(std::span<const double> xs, ProbePoint probe) {
  return fraction_at_or_below(xs, probe.x_star);
}

double sample_mean(std::span<const double> xs) {
  require_nonempty(xs, "sample_mean");
  return compensated_sum(xs) / static_cast<double>(xs.size());
}

std::vector<double> running_means(std::span<const double> xs) {
  std::vector<double> means;
  means.reserve(xs.size());
  CompensatedSum s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    s.add(xs[i]);
    means.push_back(s.value() / static_cast<double>(i + 1));
  }
  return means;
}

EstimatorTrace trace(std::span<const double> xs, ProbePoint probe) {
  require_nonempty(xs, "trace");
  EstimatorTrace out;
  out.values.reserve(xs.size());
  std::size_t below = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] <= probe.x_star) ++below;
    out.values.push_back(static_cast<double>(below) / static_cast<double>(i + 1));
  }
  return out;
}

TailExtrema tail_extrema(const EstimatorTrace& tr, std::size_t n0) {
  if (n0 == 0 || n0 > tr.size()) {
    throw std::domain_error("tail_extrema: n0 = " + std::to_string(n0) + " outside [1, " +
                            std::to_string(tr.size()) + "]");
  }
  const auto first = tr.values.begin() + static_cast<std::ptrdiff_t>(n0 - 1);
  const auto [lo, hi] = std::minmax_element(first, tr.values.end());
  return {*hi, *lo};
}

double objective_cdf_estimate(std::span<const double> xs, ProbePoint probe,
                              const std::function<bool(double)>& param_set_contains,
                              FallbackParam fallback, std::size_t n0, TailLimit which) {
  const TailExtrema ext = tail_extrema(trace(xs, probe), n0);
  const double v = which == TailLimit::Upper ? ext.sup_tail : ext.inf_tail;
  if (param_set_contains(v) && v != fallback.theta0) return v;
  return fallback.theta0;
}

ConvergenceDiagnostic diagnose_convergence(std::span<const double> means, double tol) {
  if (means.empty()) throw std::domain_error("diagnose_convergence: no running means");
  const double limit = means.back();
  const std::size_t start = half_tail_start(means.size()) - 1;
  double worst = 0.0;
  for (std::size_t i = start; i < means.size(); ++i) {
    worst = std::max(worst, std::fabs(means[i] - limit));
  }
  // NaN/inf means never count as converged.
  const bool ok = std::isfinite(limit) && worst <= tol;
  return {ok, limit};
}

double fractional_part(double value) {
  // Tiny negative inputs give exactly 1.0 after rounding.
  const double f = value - std::floor(value);
  return f < 1.0 ? f : std::nextafter(1.0, 0.0);
}

double strong_fractional_estimate(std::span<const double> xs, double convergence_tol,
                                  std::size_t shadow_depth) {
  if (xs.size() < 4) throw std::domain_error("strong_fractional_estimate: needs N >= 4");
  if (!(convergence_tol > 0.0)) {
    throw std::domain_error("strong_fractional_estimate: tolerance must be positive");
  }
  const std::vector<double> means = running_means(xs);
  const ConvergenceDiagnostic diag = diagnose_convergence(means, convergence_tol);
  if (!diag.converged) return binary_shadow(xs, shadow_depth);
  if (std::fabs(diag.limit - 1.0) <= convergence_tol) return 1.0;
  return fractional_part(diag.limit);
}

double binary_shadow(std::span<const double> xs, std::size_t depth) {
  if (depth > xs.size()) {
    throw std::domain_error("binary_shadow: depth " + std::to_string(depth) +
                            " exceeds window length " + std::to_string(xs.size()));
  }
  double sum = 0.0;
  double weight = 0.5;
  for (std::size_t k = 0; k < depth; ++k, weight *= 0.5) {
    if (xs[k] > 0.0) sum += weight;
  }
  return sum;
}

}  // namespace objest
