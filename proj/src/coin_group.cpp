#include "objest/coin_group.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "objest/kernels.hpp"

namespace objest {

BinarySequence BinarySequence::from_bits(std::vector<std::uint8_t> bits, std::string descriptor) {
  if (bits.empty()) throw std::domain_error("BinarySequence: needs at least one bit");
  if (std::any_of(bits.begin(), bits.end(), [](std::uint8_t b) { return b > 1; })) {
    throw std::domain_error("BinarySequence: bits must be 0 or 1");
  }
  return {std::move(bits), DeterministicPattern{std::move(descriptor)}};
}

BinarySequence bernoulli_sample(double theta, std::size_t count, std::uint64_t seed) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw std::domain_error("bernoulli_sample: theta must lie in (0, 1)");
  }
  if (count == 0) throw std::domain_error("bernoulli_sample: count must be >= 1");
  std::vector<std::uint8_t> bits(count);
  kernels::parallel::bernoulli_fill(bits, theta, seed, 0);
  return {std::move(bits), SeededDraw{seed, theta}};
}

std::vector<double> cesaro_means(const BinarySequence& seq) {
  std::vector<double> means;
  means.reserve(seq.size());
  std::uint64_t ones = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    ones += seq.bits[i];
    means.push_back(static_cast<double>(ones) / static_cast<double>(i + 1));
  }
  return means;
}

double cesaro_estimate(const BinarySequence& seq, FallbackParam fallback, double convergence_tol) {
  if (seq.size() < 4) throw std::domain_error("cesaro_estimate: needs N >= 4");
  const ConvergenceDiagnostic diag = diagnose_convergence(cesaro_means(seq), convergence_tol);
  // Limits of exactly 0 or 1 lie outside the open parameter space.
  if (diag.converged && diag.limit > 0.0 && diag.limit < 1.0 && diag.limit != fallback.theta0) {
    return diag.limit;
  }
  return fallback.theta0;
}

double bits_to_unit(const BinarySequence& seq) {
  double sum = 0.0;
  double weight = 0.5;
  for (std::uint8_t b : seq.bits) {
    if (b != 0) sum += weight;
    weight *= 0.5;
  }
  return sum;
}

double prevalence_monte_carlo(double epsilon, std::size_t length, std::size_t trials,
                              std::uint64_t seed) {
  if (trials == 0) throw std::domain_error("prevalence_monte_carlo: trials must be >= 1");
  if (length == 0) throw std::domain_error("prevalence_monte_carlo: length must be >= 1");
  if (!(epsilon > 0.0)) throw std::domain_error("prevalence_monte_carlo: epsilon must be positive");
  std::vector<std::uint64_t> ones(trials);
  kernels::parallel::haar_trial_ones(ones, length, seed);
  const double n = static_cast<double>(length);
  const auto hits = std::count_if(ones.begin(), ones.end(), [&](std::uint64_t k) {
    return std::fabs(static_cast<double>(k) / n - 0.5) <= epsilon;
  });
  return static_cast<double>(hits) / static_cast<double>(trials);
}

ParameterSetDescriptor ParameterSetDescriptor::finite(std::vector<double> elements) {
  const bool half = std::find(elements.begin(), elements.end(), 0.5) != elements.end();
  return {Cardinality::FiniteList, std::move(elements), half};
}

std::string_view to_string(ObjectivityVerdict verdict) noexcept {
  switch (verdict) {
    case ObjectivityVerdict::StrongObjectiveExists: return "strong-objective-exists";
    case ObjectivityVerdict::ObjectiveExistsNotStrong: return "objective-exists-not-strong";
    case ObjectivityVerdict::NoObjectiveEstimate: break;
  }
  return "no-objective-estimate";
}

ObjectivityVerdict classify_objectivity(const ParameterSetDescriptor& desc) {
  if (desc.kind == Cardinality::FiniteList) {
    if (desc.elements.size() < 2) {
      throw std::domain_error("classify_objectivity: the parameter set needs at least two elements");
    }
    std::vector<double> sorted = desc.elements;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::domain_error("classify_objectivity: elements must be distinct");
    }
    if (!(sorted.front() > 0.0 && sorted.back() < 1.0)) {
      throw std::domain_error("classify_objectivity: elements must lie in (0, 1)");
    }
    const bool half = std::binary_search(sorted.begin(), sorted.end(), 0.5);
    if (half != desc.contains_half) {
      throw std::domain_error("classify_objectivity: contains_half disagrees with the elements");
    }
  } else if (!desc.elements.empty()) {
    throw std::domain_error("classify_objectivity: only finite lists carry elements");
  }

  if (desc.contains_half) return ObjectivityVerdict::NoObjectiveEstimate;
  switch (desc.kind) {
    case Cardinality::FiniteList: return ObjectivityVerdict::StrongObjectiveExists;
    case Cardinality::CountablyInfinite: return ObjectivityVerdict::ObjectiveExistsNotStrong;
    case Cardinality::Uncountable: break;
  }
  return ObjectivityVerdict::NoObjectiveEstimate;
}

}  // namespace objest
