#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "objest/estimators.hpp"

namespace objest {

struct DeterministicPattern {
  std::string descriptor;
};

struct SeededDraw {
  std::uint64_t seed = 0;
  double theta = 0.5;
};

// A finite prefix of an element of {0,1}^N.
struct BinarySequence {
  std::vector<std::uint8_t> bits;
  std::variant<DeterministicPattern, SeededDraw> provenance;

  std::size_t size() const noexcept { return bits.size(); }

  static BinarySequence from_bits(std::vector<std::uint8_t> bits, std::string descriptor);
};

/// N Bernoulli(theta) draws: bit k is 1 iff Philox uniform (seed, 0, k) < theta.
/// theta = 1/2 gives the Haar measure on the group. theta outside (0,1)
/// throws std::domain_error.
BinarySequence bernoulli_sample(double theta, std::size_t count, std::uint64_t seed);

std::vector<double> cesaro_means(const BinarySequence& seq);

/// Limit of the Cesaro means when the convergence diagnostic accepts it, it
/// lies in (0, 1) and differs from theta0; theta0 otherwise. Requires N >= 4.
double cesaro_estimate(const BinarySequence& seq, FallbackParam fallback, double convergence_tol);

// sum_k x_k / 2^k over the prefix.
double bits_to_unit(const BinarySequence& seq);

/// Fraction of `trials` Haar sequences of length N whose mean lies within
/// epsilon of 1/2. Trial t uses Philox stream t under `seed`.
double prevalence_monte_carlo(double epsilon, std::size_t length, std::size_t trials,
                              std::uint64_t seed);

enum class Cardinality { FiniteList, CountablyInfinite, Uncountable };

struct ParameterSetDescriptor {
  Cardinality kind = Cardinality::FiniteList;
  std::vector<double> elements;  // FiniteList only
  bool contains_half = false;

  static ParameterSetDescriptor finite(std::vector<double> elements);
};

// Ordered from weakest to strongest.
enum class ObjectivityVerdict { NoObjectiveEstimate, ObjectiveExistsNotStrong, StrongObjectiveExists };

std::string_view to_string(ObjectivityVerdict verdict) noexcept;

/// Which kind of objective estimate of theta exists for the Bernoulli
/// structure restricted to the described parameter set. Throws
/// std::domain_error on an inconsistent descriptor or a finite list with
/// fewer than two elements.
ObjectivityVerdict classify_objectivity(const ParameterSetDescriptor& desc);

}  // namespace objest
