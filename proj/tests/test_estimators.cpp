#include <catch_amalgamated.hpp>
#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "objest/distributions.hpp"
#include "objest/error.hpp"
#include "objest/estimators.hpp"

using namespace objest;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const DistributionSpec kStdNormal = DistributionSpec::standard(DistributionKind::Gaussian);
const DistributionSpec kStdCauchy = DistributionSpec::standard(DistributionKind::Cauchy);

// Oracle values from tests/oracles/fixtures.txt (mpmath, 60 digits).
constexpr double kPhiMinusOne = 0.15865525393145705;

std::vector<double> gaussian_theta1(std::size_t n) {
  const auto w = sample_via_weyl({DistributionKind::Gaussian, 1.0, 1.0}, n);
  return {w.values().begin(), w.values().end()};
}

std::vector<double> cauchy_theta1(std::size_t n) {
  const auto w = sample_via_weyl({DistributionKind::Cauchy, 1.0, 1.0}, n);
  return {w.values().begin(), w.values().end()};
}

std::vector<double> alternating_powers(std::size_t n) {
  std::vector<double> xs;
  double v = -2.0;
  for (std::size_t k = 0; k < n; ++k, v *= -2.0) xs.push_back(v);
  return xs;
}

}  // namespace

TEST_CASE("sign_count_estimate examples", "[estimators]") {
  CHECK_THAT(sign_count_estimate(gaussian_theta1(200), kStdNormal), WithinAbs(1.036433389, 1e-4));
  CHECK_THAT(sign_count_estimate(std::vector<double>{-1, 2, 3, -4, 5}, kStdNormal),
             WithinAbs(0.2533471031357998, 1e-14));
  CHECK(sign_count_estimate(std::vector<double>{-1, 1, -2, 2}, kStdNormal) == 0.0);
  CHECK_THAT(sign_count_estimate(cauchy_theta1(1000), kStdCauchy), WithinAbs(1.0126459941540735, 1e-12));
}

TEST_CASE("sign_count_estimate is undefined at fraction 0 or 1", "[estimators]") {
  CHECK_THROWS_AS(sign_count_estimate(std::vector<double>{1, 2, 3}, kStdNormal), EstimateUndefined);
  CHECK_THROWS_AS(sign_count_estimate(std::vector<double>{-1, 0}, kStdNormal), EstimateUndefined);
  CHECK_THROWS_AS(sign_count_estimate(std::vector<double>{}, kStdNormal), std::domain_error);
}

TEST_CASE("cdf_point_estimate examples", "[estimators]") {
  CHECK(cdf_point_estimate(std::vector<double>{-1, -2, 3}, {0.0}) == 2.0 / 3.0);
  CHECK(cdf_point_estimate(std::vector<double>{5}, {0.0}) == 0.0);
  CHECK(cdf_point_estimate(std::vector<double>{0.0, 1.0}, {0.0}) == 0.5);  // closed ray
  CHECK(cdf_point_estimate(gaussian_theta1(10000), {0.0}) == 0.1571);
  CHECK_THAT(cdf_point_estimate(gaussian_theta1(10000), {0.0}), WithinAbs(kPhiMinusOne, 0.02));
}

TEST_CASE("sample_mean examples", "[estimators]") {
  CHECK(sample_mean(std::vector<double>{2, 4}) == 3.0);
  CHECK_THAT(sample_mean(gaussian_theta1(100)), WithinAbs(1.010190601, 1e-4));
  CHECK_THAT(sample_mean(cauchy_theta1(200)), WithinRel(54.09578271, 0.1));
  CHECK_THAT(sample_mean(cauchy_theta1(1000)), WithinAbs(29.734054189789882, 1e-9));
  CHECK(sample_mean(std::vector<double>{1e16, 1.0, -1e16, 1.0}) == 0.5);
}

TEST_CASE("trace examples", "[estimators]") {
  CHECK(trace(std::vector<double>{-1, 2, -3}, {0.0}).values == std::vector<double>{1.0, 0.5, 2.0 / 3.0});
  CHECK(trace(std::vector<double>{5}, {0.0}).values == std::vector<double>{0.0});
  const auto xs = gaussian_theta1(1000);
  const auto t = trace(xs, {0.0});
  REQUIRE(t.size() == xs.size());
  for (std::size_t n = 1; n <= xs.size(); n += 37) {
    REQUIRE(t.values[n - 1] == cdf_point_estimate(std::span(xs).first(n), {0.0}));
  }
  CHECK(t.values.back() == cdf_point_estimate(xs, {0.0}));
}

TEST_CASE("tail_extrema examples", "[estimators]") {
  const auto te = tail_extrema(EstimatorTrace{{3, 1, 4, 1, 5}}, 3);
  CHECK(te.sup_tail == 5.0);
  CHECK(te.inf_tail == 1.0);
  const auto single = tail_extrema(EstimatorTrace{{0.2}}, 1);
  CHECK(single.sup_tail == 0.2);
  CHECK(single.inf_tail == 0.2);
  CHECK_THROWS_AS(tail_extrema(EstimatorTrace{{0.2}}, 2), std::domain_error);
  CHECK_THROWS_AS(tail_extrema(EstimatorTrace{{0.2}}, 0), std::domain_error);

  const auto big = tail_extrema(trace(gaussian_theta1(10000), {0.0}), 5000);
  CHECK_THAT(big.sup_tail, WithinAbs(0.15727510565506138, 1e-15));
  CHECK_THAT(big.inf_tail, WithinAbs(0.15483234714003945, 1e-15));
  CHECK_THAT(big.sup_tail, WithinAbs(kPhiMinusOne, 0.02));
  CHECK_THAT(big.inf_tail, WithinAbs(kPhiMinusOne, 0.02));
}

TEST_CASE("objective_cdf_estimate", "[estimators]") {
  const auto xs = gaussian_theta1(10000);
  const auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  CHECK_THAT(objective_cdf_estimate(xs, {0.0}, in_unit, {0.9}, 5000, TailLimit::Upper),
             WithinAbs(kPhiMinusOne, 0.02));
  CHECK(objective_cdf_estimate(xs, {0.0}, in_unit, {0.9}, 5000, TailLimit::Lower) == 0.15483234714003945);
  CHECK(objective_cdf_estimate(xs, {0.0}, [](double) { return false; }, {0.9}, 5000, TailLimit::Upper) == 0.9);
  CHECK(objective_cdf_estimate(std::vector<double>{-1, 1}, {0.0}, in_unit, {0.5}, 2, TailLimit::Upper) == 0.5);
  CHECK_THROWS_AS(objective_cdf_estimate(xs, {0.0}, in_unit, {0.9}, 10001, TailLimit::Upper), std::domain_error);
}

TEST_CASE("strong_fractional_estimate", "[estimators]") {
  CHECK_THAT(strong_fractional_estimate(std::vector<double>(20, 3.7), 1e-9, 20), WithinAbs(0.7, 1e-12));
  CHECK(strong_fractional_estimate(std::vector<double>(20, 1.0), 1e-9, 20) == 1.0);
  CHECK_THAT(strong_fractional_estimate(std::vector<double>(20, -0.25), 1e-9, 20), WithinAbs(0.75, 1e-15));
  const auto div = alternating_powers(10);
  CHECK(strong_fractional_estimate(div, 0.01, 10) == binary_shadow(div, 10));
  CHECK_THROWS_AS(strong_fractional_estimate(std::vector<double>{1, 2, 3}, 0.01, 3), std::domain_error);
}

TEST_CASE("binary_shadow", "[estimators]") {
  CHECK(binary_shadow(alternating_powers(10), 10) == 1023.0 / 3072.0);
  CHECK(binary_shadow(std::vector<double>(60, 1.0), 53) == 1.0 - std::ldexp(1.0, -53));
  CHECK(binary_shadow(std::vector<double>{0.0, -1.0, -2.0}, 3) == 0.0);
  CHECK_THROWS_AS(binary_shadow(std::vector<double>{1.0}, 2), std::domain_error);
  CHECK(default_shadow_depth(10) == 10);
  CHECK(default_shadow_depth(1000) == 53);
}

TEST_CASE("convergence diagnostic", "[estimators]") {
  const auto d = diagnose_convergence(std::vector<double>{5, 4, 3, 3.001, 3.0}, 0.01);
  CHECK(d.converged);
  CHECK(d.limit == 3.0);
  CHECK_FALSE(diagnose_convergence(std::vector<double>{5, 4, 3, 3.5, 3.0}, 0.01).converged);
  CHECK(half_tail_start(5) == 3);
  CHECK(half_tail_start(10000) == 5000);
}

TEST_CASE("consistency at scale", "[estimators][property]") {
  const auto xs = gaussian_theta1(100000);
  CHECK(std::fabs(cdf_point_estimate(std::span(xs).first(10000), {0.0}) - kPhiMinusOne) <= 0.02);
  CHECK(std::fabs(cdf_point_estimate(xs, {0.0}) - kPhiMinusOne) <= 0.007);
  CHECK(cdf_point_estimate(xs, {0.0}) == 0.15862);
}

TEST_CASE("tail extrema bracket monotonically", "[estimators][property]") {
  const auto t = trace(gaussian_theta1(3000), {0.0});
  TailExtrema prev = tail_extrema(t, 1);
  for (std::size_t n0 = 2; n0 <= t.size(); n0 += 13) {
    const auto cur = tail_extrema(t, n0);
    REQUIRE(cur.sup_tail <= prev.sup_tail);
    REQUIRE(cur.inf_tail >= prev.inf_tail);
    REQUIRE(cur.inf_tail <= cur.sup_tail);
    prev = cur;
  }
}

TEST_CASE("permutation invariance", "[estimators][property]") {
  auto xs = gaussian_theta1(512);
  const double s0 = sign_count_estimate(xs, kStdNormal);
  const double c0 = cdf_point_estimate(xs, {0.5});
  const double m0 = sample_mean(xs);
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    std::shuffle(xs.begin(), xs.end(), rng);
    REQUIRE(sign_count_estimate(xs, kStdNormal) == s0);
    REQUIRE(cdf_point_estimate(xs, {0.5}) == c0);
    REQUIRE_THAT(sample_mean(xs), WithinAbs(m0, 1e-15));
  }
}

TEST_CASE("sign-count and CDF duality", "[estimators][property]") {
  for (const auto& spec : {kStdNormal, kStdCauchy}) {
    const auto xs = gaussian_theta1(5000);
    for (std::size_t n = 2; n <= xs.size(); n += 97) {
      const auto prefix = std::span(xs).first(n);
      const double frac = cdf_point_estimate(prefix, {0.0});
      if (frac == 0.0 || frac == 1.0) continue;
      REQUIRE(sign_count_estimate(prefix, spec) == -quantile(spec, frac));
    }
  }
}

TEST_CASE("heavy-tail contrast", "[estimators][property]") {
  const auto xs = cauchy_theta1(1000);
  CHECK(std::fabs(sign_count_estimate(xs, kStdCauchy) - 1.0) <= 0.05);
  CHECK(std::fabs(sample_mean(xs) - 1.0) >= 1.0);
}

TEST_CASE("fractional part contract", "[estimators][property]") {
  for (double l : {-1e9 - 0.5, -3.25, -1.0, -1e-300, -0.5, 0.0, 0.5, 1.0, 2.999999, 4503599627370495.5, 1e300}) {
    const double f = fractional_part(l);
    REQUIRE(f >= 0.0);
    REQUIRE(f < 1.0);
    REQUIRE(std::fabs((l - f) - std::round(l - f)) <= 0x1p-52);
  }
  CHECK(fractional_part(-3.25) == 0.75);
}
