#pragma once

#include <stdexcept>
#include <string>

namespace objest {

// Raised when a Weyl term would be computed with too few bits of the
// irrational for the result to be exact in double precision, or when the
// request exceeds the shipped constant table.
class PrecisionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The estimator formula has no finite value on this input (e.g. a quantile
// evaluated at 0 or 1, or a zero kernel density).
class EstimateUndefined : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A sigma estimator hit a zero denominator Phi^{-1}(u_n) = 0.
class ZeroDenominator : public EstimateUndefined {
 public:
  using EstimateUndefined::EstimateUndefined;
};

class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace objest
