#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "objest/weyl.hpp"

namespace objest {

enum class DistributionKind { Gaussian, Cauchy };

std::string_view to_string(DistributionKind kind) noexcept;
DistributionKind parse_distribution_kind(std::string_view name);  // "gaussian", "cauchy"

// A location-scale member of a strictly increasing continuous family.
struct DistributionSpec {
  DistributionKind kind = DistributionKind::Gaussian;
  double location = 0.0;
  double scale = 1.0;

  static DistributionSpec standard(DistributionKind kind) { return {kind, 0.0, 1.0}; }

  // Throws std::domain_error unless scale > 0 and both fields are finite.
  void validate() const;

  friend bool operator==(const DistributionSpec&, const DistributionSpec&) = default;
};

double cdf(const DistributionSpec& spec, double x);

/// Inverse of cdf on the open interval (0, 1); |cdf(quantile(u)) - u| <= 1e-12.
/// u outside (0, 1) throws std::domain_error.
double quantile(const DistributionSpec& spec, double u);

double density(const DistributionSpec& spec, double x);

// Standard members, exposed for callers that transform in bulk.
double standard_normal_cdf(double z) noexcept;
double standard_normal_quantile(double u);
double standard_cauchy_cdf(double z) noexcept;
double standard_cauchy_quantile(double u);

enum class SampleGenerator { WeylInverseCdf, PseudoRandom };

struct SampleProvenance {
  SampleGenerator generator = SampleGenerator::WeylInverseCdf;
  DistributionSpec source;
  Irrational alpha = Irrational::Pi;           // WeylInverseCdf only
  unsigned precision_bits = kDefaultPrecisionBits;  // WeylInverseCdf only
  std::uint64_t seed = 0;                      // PseudoRandom only
};

// A finite prefix x_1..x_N of a conceptually infinite sample.
class SampleWindow {
 public:
  SampleWindow(std::vector<double> values, SampleProvenance provenance);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  // First n points; n must lie in [1, size()].
  std::span<const double> prefix(std::size_t n) const;
  const SampleProvenance& provenance() const noexcept { return provenance_; }

 private:
  std::vector<double> values_;
  SampleProvenance provenance_;
};

/// x_k = quantile(spec, {k * alpha}) for k = 1..count.
SampleWindow sample_via_weyl(const DistributionSpec& spec, std::size_t count,
                             Irrational alpha = Irrational::Pi,
                             unsigned precision_bits = kDefaultPrecisionBits);

/// x_k = quantile(spec, U_k) with U_k drawn from the Philox stream keyed by
/// seed (stream 0). Used by the harness's pseudo-random generator mode.
SampleWindow sample_pseudo_random(const DistributionSpec& spec, std::size_t count,
                                  std::uint64_t seed);

}  // namespace objest
