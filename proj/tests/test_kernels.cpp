#include <omp.h>

#include <catch_amalgamated.hpp>
#include <cmath>
#include <vector>

#include "objest/distributions.hpp"
#include "objest/kernels.hpp"
#include "objest/philox.hpp"

using namespace objest;
namespace ks = objest::kernels::serial;
namespace kp = objest::kernels::parallel;

namespace {

struct ThreadCount {
  explicit ThreadCount(int n) : saved(omp_get_max_threads()) { omp_set_num_threads(n); }
  ~ThreadCount() { omp_set_num_threads(saved); }
  int saved;
};

}  // namespace

TEST_CASE("Philox4x32-10 known-answer vectors", "[philox]") {
  using C = Philox4x32::Counter;
  CHECK(Philox4x32::block({0, 0, 0, 0}, {0, 0}) == C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(Philox4x32::block({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
}

TEST_CASE("Philox draws are addressable and open-interval uniform", "[philox]") {
  const auto pair = Philox4x32::pair64(5, 9, 21);
  CHECK(Philox4x32::bits64(5, 9, 42) == pair[0]);
  CHECK(Philox4x32::bits64(5, 9, 43) == pair[1]);
  CHECK(Philox4x32::bits64(5, 9, 42) != Philox4x32::bits64(6, 9, 42));
  CHECK(Philox4x32::bits64(5, 9, 42) != Philox4x32::bits64(5, 10, 42));
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const double u = Philox4x32::uniform_open(1, 0, i);
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("elementwise kernels match the serial reference bit for bit", "[kernels]") {
  const int threads = GENERATE(1, 2, 4);
  ThreadCount guard(threads);

  std::vector<double> a(5000), b(5000);
  ks::weyl_fill(a, 17, Irrational::GoldenRatio, 256);
  kp::weyl_fill(b, 17, Irrational::GoldenRatio, 256);
  CHECK(a == b);

  const DistributionSpec spec{DistributionKind::Cauchy, -2.0, 0.5};
  ks::quantile_transform(a, spec);
  kp::quantile_transform(b, spec);
  CHECK(a == b);

  ks::uniform_fill(a, 11, 3);
  kp::uniform_fill(b, 11, 3);
  CHECK(a == b);

  std::vector<std::uint8_t> bits_a(4099), bits_b(4099);
  ks::bernoulli_fill(bits_a, 0.3, 8, 2);
  kp::bernoulli_fill(bits_b, 0.3, 8, 2);
  CHECK(bits_a == bits_b);

  std::vector<std::uint64_t> ones_a(33), ones_b(33);
  ks::haar_trial_ones(ones_a, 1001, 4);  // odd length exercises the unpaired draw
  kp::haar_trial_ones(ones_b, 1001, 4);
  CHECK(ones_a == ones_b);
}

TEST_CASE("quantile_transform rejects values outside (0,1) before touching data", "[kernels]") {
  std::vector<double> v = {0.25, 1.0, 0.5};
  const DistributionSpec spec;
  CHECK_THROWS_AS(kp::quantile_transform(v, spec), std::domain_error);
  CHECK(v[0] == 0.25);
  CHECK_THROWS_AS(ks::quantile_transform(v, spec), std::domain_error);
}

TEST_CASE("blocked kernel sum is thread-count invariant and agrees with the serial sum", "[kernels]") {
  std::vector<double> xs(3 * kernels::kReductionBlock + 123);
  ks::weyl_fill(xs, 1, Irrational::Pi, 128);
  ks::quantile_transform(xs, DistributionSpec{});

  double reference = 0.0;
  {
    ThreadCount guard(1);
    reference = kp::gaussian_kernel_sum(xs, 0.3, 0.2);
  }
  for (int threads : {2, 3, 4}) {
    ThreadCount guard(threads);
    CHECK(kp::gaussian_kernel_sum(xs, 0.3, 0.2) == reference);
  }
  const double serial = ks::gaussian_kernel_sum(xs, 0.3, 0.2);
  CHECK(std::fabs(serial - reference) <= 1e-13 * serial);

  const std::vector<double> grid = {-1.0, 0.0, 0.3, 2.5};
  std::vector<double> out(grid.size());
  kp::gaussian_kernel_grid(xs, grid, 0.2, out);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    CHECK(out[j] == kp::gaussian_kernel_sum(xs, grid[j], 0.2));
  }
}
