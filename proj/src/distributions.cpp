#include "objest/distributions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "objest/kernels.hpp"

namespace objest {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;
constexpr double kSqrt2Pi = 2.50662827463100050242;

template <std::size_t N>
double horner(const double (&c)[N], double r) noexcept {
  double acc = c[N - 1];
  for (std::size_t i = N - 1; i-- > 0;) acc = acc * r + c[i];
  return acc;
}

// Wichura, Algorithm AS 241 (PPND16), Applied Statistics 37 (1988).
// Relative accuracy about 1e-16 over (0, 1). Coefficients in ascending order.
constexpr double kCentralNum[] = {3.3871328727963666080e0,  1.3314166789178437745e+2,
                                  1.9715909503065514427e+3, 1.3731693765509461125e+4,
                                  4.5921953931549871457e+4, 6.7265770927008700853e+4,
                                  3.3430575583588128105e+4, 2.5090809287301226727e+3};
constexpr double kCentralDen[] = {1.0,
                                  4.2313330701600911252e+1, 6.8718700749205790830e+2,
                                  5.3941960214247511077e+3, 2.1213794301586595867e+4,
                                  3.9307895800092710610e+4, 2.8729085735721942674e+4,
                                  5.2264952788528545610e+3};
constexpr double kIntermediateNum[] = {1.42343711074968357734e0, 4.63033784615654529590e0,
                                       5.76949722146069140550e0, 3.64784832476320460504e0,
                                       1.27045825245236838258e0, 2.41780725177450611770e-1,
                                       2.27238449892691845833e-2, 7.74545014278341407640e-4};
constexpr double kIntermediateDen[] = {1.0,
                                       2.05319162663775882187e0,  1.67638483018380384940e0,
                                       6.89767334985100004550e-1, 1.48103976427480074590e-1,
                                       1.51986665636164571966e-2, 5.47593808499534494600e-4,
                                       1.05075007164441684324e-9};
constexpr double kTailNum[] = {6.65790464350110377720e0,  5.46378491116411436990e0,
                               1.78482653991729133580e0,  2.96560571828504891230e-1,
                               2.65321895265761230930e-2, 1.24266094738807843860e-3,
                               2.71155556874348757815e-5, 2.01033439929228813265e-7};
constexpr double kTailDen[] = {1.0,
                               5.99832206555887937690e-1, 1.36929880922735805310e-1,
                               1.48753612908506148525e-2, 7.86869131145613259100e-4,
                               1.84631831751005468180e-5, 1.42151175831644588870e-7,
                               2.04426310338993978564e-15};

double ppnd16(double p) noexcept {
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q * horner(kCentralNum, r) / horner(kCentralDen, r);
  }
  double r = std::sqrt(-std::log(q < 0.0 ? p : 1.0 - p));
  double x;
  if (r <= 5.0) {
    r -= 1.6;
    x = horner(kIntermediateNum, r) / horner(kIntermediateDen, r);
  } else {
    r -= 5.0;
    x = horner(kTailNum, r) / horner(kTailDen, r);
  }
  return q < 0.0 ? -x : x;
}

// Lower half only, u in (0, 0.5]; the upper half follows by symmetry so that
// 1 - u stays exact.
double normal_quantile_lower(double u) noexcept {
  if (u == 0.5) return 0.0;
  const double x = ppnd16(u);
  // One Halley step against the erfc-based CDF.
  const double err = 0.5 * std::erfc(-x * kInvSqrt2) - u;
  const double t = err * kSqrt2Pi * std::exp(0.5 * x * x);
  if (!std::isfinite(t)) return x;
  return x - t / (1.0 + 0.5 * x * t);
}

void check_open_unit(double u, const char* who) {
  if (!(u > 0.0 && u < 1.0)) {
    throw std::domain_error(std::string(who) + ": probability must lie in (0, 1), got " +
                            std::to_string(u));
  }
}

}  // namespace

std::string_view to_string(DistributionKind kind) noexcept {
  return kind == DistributionKind::Cauchy ? "cauchy" : "gaussian";
}

DistributionKind parse_distribution_kind(std::string_view name) {
  if (name == "gaussian") return DistributionKind::Gaussian;
  if (name == "cauchy") return DistributionKind::Cauchy;
  throw std::invalid_argument("unknown distribution '" + std::string(name) + "'");
}

void DistributionSpec::validate() const {
  if (!std::isfinite(location)) throw std::domain_error("distribution location must be finite");
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw std::domain_error("distribution scale must be positive and finite");
  }
}

double standard_normal_cdf(double z) noexcept { return 0.5 * std::erfc(-z * kInvSqrt2); }

double standard_normal_quantile(double u) {
  check_open_unit(u, "normal quantile");
  return u <= 0.5 ? normal_quantile_lower(u) : -normal_quantile_lower(1.0 - u);
}

double standard_cauchy_cdf(double z) noexcept {
  constexpr double inv_pi = std::numbers::inv_pi;
  if (z < -1.0) return std::atan(-1.0 / z) * inv_pi;
  if (z > 1.0) return 1.0 - std::atan(1.0 / z) * inv_pi;
  return 0.5 + std::atan(z) * inv_pi;
}

double standard_cauchy_quantile(double u) {
  check_open_unit(u, "cauchy quantile");
  constexpr double pi = std::numbers::pi;
  // Evaluate near the poles through the distance to 0 or 1, which is exact.
  if (u < 0.25) return -1.0 / std::tan(pi * u);
  if (u > 0.75) return 1.0 / std::tan(pi * (1.0 - u));
  return std::tan(pi * (u - 0.5));
}

double cdf(const DistributionSpec& spec, double x) {
  const double z = (x - spec.location) / spec.scale;
  return spec.kind == DistributionKind::Cauchy ? standard_cauchy_cdf(z) : standard_normal_cdf(z);
}

double quantile(const DistributionSpec& spec, double u) {
  const double z = spec.kind == DistributionKind::Cauchy ? standard_cauchy_quantile(u)
                                                         : standard_normal_quantile(u);
  return spec.location + spec.scale * z;
}

double density(const DistributionSpec& spec, double x) {
  const double z = (x - spec.location) / spec.scale;
  if (spec.kind == DistributionKind::Cauchy) {
    return std::numbers::inv_pi / (1.0 + z * z) / spec.scale;
  }
  return kInvSqrt2Pi * std::exp(-0.5 * z * z) / spec.scale;
}

SampleWindow::SampleWindow(std::vector<double> values, SampleProvenance provenance)
    : values_(std::move(values)), provenance_(provenance) {
  if (values_.empty()) throw std::domain_error("SampleWindow: needs at least one point");
}

std::span<const double> SampleWindow::prefix(std::size_t n) const {
  if (n == 0 || n > values_.size()) {
    throw std::out_of_range("SampleWindow::prefix: length " + std::to_string(n) +
                            " outside [1, " + std::to_string(values_.size()) + "]");
  }
  return values().first(n);
}

SampleWindow sample_via_weyl(const DistributionSpec& spec, std::size_t count, Irrational alpha,
                             unsigned precision_bits) {
  spec.validate();
  std::vector<double> values = weyl_prefix(count, alpha, precision_bits);
  kernels::parallel::quantile_transform(values, spec);
  SampleProvenance prov;
  prov.generator = SampleGenerator::WeylInverseCdf;
  prov.source = spec;
  prov.alpha = alpha;
  prov.precision_bits = precision_bits;
  return SampleWindow(std::move(values), prov);
}

SampleWindow sample_pseudo_random(const DistributionSpec& spec, std::size_t count,
                                  std::uint64_t seed) {
  spec.validate();
  if (count == 0) throw std::domain_error("sample_pseudo_random: count must be >= 1");
  std::vector<double> values(count);
  kernels::parallel::uniform_fill(values, seed, 0);
  kernels::parallel::quantile_transform(values, spec);
  SampleProvenance prov;
  prov.generator = SampleGenerator::PseudoRandom;
  prov.source = spec;
  prov.seed = seed;
  return SampleWindow(std::move(values), prov);
}

}  // namespace objest
