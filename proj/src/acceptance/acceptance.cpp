#include "objest/acceptance.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "objest/coin_group.hpp"
#include "objest/density.hpp"
#include "objest/distributions.hpp"
#include "objest/estimators.hpp"
#include "objest/harness.hpp"
#include "objest/philox.hpp"

namespace objest::acceptance {
namespace {

using Clock = std::chrono::steady_clock;

// Printed values of the three reference tables. Table 3 is keyed by the
// estimator formula: the printed T^(2) and T^(3) columns hold the values of
// -(mean)/Phi^{-1}(u_n) and -a/Phi^{-1}(u_n) respectively, i.e. they are
// swapped relative to their headings, and five printed cells disagree with
// the recipe beyond 1e-4. Those cells carry the 60-digit oracle value from
// tests/oracles/compute_fixtures.py instead (marked corrected).
struct FixtureCell {
  double value;
  bool corrected = false;
};

struct FixtureRow {
  std::size_t n;
  std::vector<FixtureCell> cells;
};

const std::vector<FixtureRow> kTable1 = {
    {50, {{0.994457883}, {1.146952654}}},   {100, {{1.036433389}, {1.010190601}}},
    {150, {{1.022241387}, {1.064790041}}},  {200, {{1.036433389}, {1.037987511}}},
    {250, {{1.027893346}, {1.045296447}}},  {300, {{1.036433389}, {1.044049728}}},
    {350, {{1.030325691}, {1.034339407}}},  {400, {{1.036433389}, {1.045181911}}},
    {450, {{1.031679632}, {1.023083495}}},  {500, {{1.036433389}, {1.044635371}}},
    {550, {{1.04034032}, {1.034899747}}},   {600, {{1.036433389}, {1.043940988}}},
    {650, {{1.03313984}, {1.036321771}}},   {700, {{1.030325691}, {1.037905202}}},
    {750, {{1.033578332}, {1.03728633}}},   {800, {{1.03108705}, {1.032630945}}},
    {850, {{1.033913784}, {1.037321098}}},  {900, {{1.031679632}, {1.026202323}}},
    {950, {{1.034178696}, {1.036669278}}},  {1000, {{1.036433389}, {1.031131694}}},
};

const std::vector<FixtureRow> kTable2 = {
    {50, {{1.20879235}, {2.555449288}}},    {100, {{0.939062506}, {1.331789564}}},
    {150, {{1.06489184}, {71.87525566}}},   {200, {{1.00000000}, {54.09578271}}},
    {250, {{1.06489184}, {64.59240343}}},   {300, {{1.021166379}, {54.03265563}}},
    {350, {{1.027297114}, {56.39846672}}},  {400, {{1.031919949}, {49.58316089}}},
    {450, {{1.0070058}, {44.00842613}}},    {500, {{1.038428014}, {45.14322051}}},
    {550, {{1.017284476}, {41.08688757}}},  {600, {{1.042790358}, {41.30221291}}},
    {650, {{1.014605804}, {38.1800532}}},   {700, {{1.027297114}, {38.03399768}}},
    {750, {{1.012645994}, {35.57956117}}},  {800, {{1.015832638}, {35.25149408}}},
    {850, {{1.018652839}, {33.28723503}}},  {900, {{1.0070058}, {31.4036155}}},
    {950, {{1.023420701}, {31.27321466}}},  {1000, {{1.012645994}, {29.73405416}}},
};

// Columns: sd, sd_corrected, sigma_signcount, sigma_mean_signcount.
const std::vector<FixtureRow> kTable3 = {
    {200, {{4.992413159}, {5.004941192}, {4.895457577}, {5.205401325}}},
    {400, {{5.07062604205, true}, {5.07697623369, true}, {4.835655399}, {5.19979565204, true}}},
    {600, {{5.10523925}, {5.109498942}, {4.855457413}, {5.211046737}}},
    {800, {{5.106390271}, {5.109584761}, {4.92581015}, {5.19369988}}},
    {1000, {{5.066642282}, {5.069177505}, {4.944169095}, {5.20070302819, true}}},
    {1200, {{5.072294934}, {5.074409712}, {4.935995814}, {5.235885276}}},
    {1400, {{5.081110418}, {5.082926073}, {4.96528786}, {5.249446371}}},
    {1600, {{5.079219075}, {5.080807075}, {4.9564705}, {5.2161589218, true}}},
    {1800, {{5.060850283}, {5.06225666}, {4.963326232}, {5.207913228}}},
    {2000, {{5.063112113}, {5.064378366}, {4.981223889}, {5.239119585}}},
};

// Compares one report against a fixture with a per-column tolerance.
// ERR cells fail by construction.
bool compare_table(const ReportTable& report, const std::vector<FixtureRow>& fixture,
                   const std::vector<double>& tolerances, std::ostringstream& detail) {
  bool ok = report.rows.size() == fixture.size();
  double worst = 0.0;
  int corrected = 0;
  for (const auto& frow : fixture) {
    for (std::size_t j = 0; j < frow.cells.size(); ++j) {
      const auto got = report.value(frow.n, report.columns[j]);
      if (frow.cells[j].corrected) ++corrected;
      if (!got) {
        ok = false;
        detail << " n=" << frow.n << ' ' << report.columns[j] << "=ERR";
        continue;
      }
      const double err = std::fabs(*got - frow.cells[j].value);
      worst = std::max(worst, err / tolerances[j]);
      if (!(err <= tolerances[j])) {
        ok = false;
        detail << " n=" << frow.n << ' ' << report.columns[j] << " off by " << err;
      }
    }
  }
  detail << " worst error/tolerance " << worst;
  if (corrected > 0) detail << "; " << corrected << " oracle-corrected cells";
  return ok;
}

template <typename Body>
CriterionResult timed(int id, std::string name, double limit_seconds, Body body) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  std::ostringstream detail;
  const auto start = Clock::now();
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail << " threw: " << e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (limit_seconds > 0.0 && r.seconds >= limit_seconds) {
    ok = false;
    detail << " runtime " << r.seconds << " s exceeds " << limit_seconds << " s";
  }
  r.passed = ok;
  r.detail = detail.str();
  return r;
}

CriterionResult table1() {
  return timed(1, "table1-gaussian-signal", 1.0, [](std::ostringstream& d) {
    return compare_table(reproduce_table(ReferenceTable::Table1), kTable1, {1e-4, 1e-4}, d);
  });
}

CriterionResult table2() {
  return timed(2, "table2-cauchy-signal", 1.0, [](std::ostringstream& d) {
    return compare_table(reproduce_table(ReferenceTable::Table2), kTable2, {1e-4, 0.1}, d);
  });
}

CriterionResult table3() {
  return timed(3, "table3-sigma", 1.0, [](std::ostringstream& d) {
    return compare_table(reproduce_table(ReferenceTable::Table3), kTable3, {1e-4, 1e-4, 1e-4, 1e-4},
                         d);
  });
}

CriterionResult consistency_sweep() {
  return timed(4, "cdf-point-consistency", 2.0, [](std::ostringstream& d) {
    bool ok = true;
    for (double theta : {0.0, 1.0, 2.0}) {
      const DistributionSpec spec{DistributionKind::Gaussian, theta, 1.0};
      const SampleWindow w = sample_via_weyl(spec, 100000);
      const double err =
          std::fabs(cdf_point_estimate(w.values(), {0.0}) - standard_normal_cdf(-theta));
      d << " theta=" << theta << " err=" << err;
      ok = ok && err <= 0.007;
    }
    return ok;
  });
}

CriterionResult heavy_tail() {
  return timed(5, "cauchy-heavy-tail-contrast", 0.0, [](std::ostringstream& d) {
    const DistributionSpec spec{DistributionKind::Cauchy, 1.0, 1.0};
    const SampleWindow w = sample_via_weyl(spec, 1000);
    const double sc = sign_count_estimate(w.values(), DistributionSpec::standard(DistributionKind::Cauchy));
    const double mean = sample_mean(w.values());
    d << " sign_count=" << sc << " mean=" << mean;
    return std::fabs(sc - 1.0) <= 0.05 && std::fabs(mean - 1.0) >= 1.0;
  });
}

CriterionResult kernel_convergence() {
  return timed(6, "kernel-density-convergence", 10.0, [](std::ostringstream& d) {
    const SampleWindow w = sample_via_weyl(DistributionSpec::standard(DistributionKind::Gaussian), 100000);
    std::vector<double> grid(101);
    for (std::size_t j = 0; j < grid.size(); ++j) grid[j] = -4.0 + 0.08 * static_cast<double>(j);
    const DistributionSpec phi = DistributionSpec::standard(DistributionKind::Gaussian);
    auto sup_error = [&](std::size_t n) {
      const std::vector<double> f = kernel_density_grid(w.prefix(n), grid, BandwidthSchedule{});
      double worst = 0.0;
      for (std::size_t j = 0; j < grid.size(); ++j) {
        worst = std::max(worst, std::fabs(f[j] - density(phi, grid[j])));
      }
      return worst;
    };
    const double e3 = sup_error(1000);
    const double e5 = sup_error(100000);
    d << " sup|f_n - phi| N=1e3: " << e3 << ", N=1e5: " << e5;

    const std::size_t n = 100000;
    const SampleWindow g = sample_via_weyl({DistributionKind::Gaussian, 3.0, 5.0}, n);
    SigmaEstimateConfig cfg;
    cfg.known_mean = 3.0;
    cfg.fallback_sigma = 1.0;
    cfg.n0 = half_tail_start(n);
    cfg.trace_stride = default_kernel_trace_stride(n);
    const double sigma = sigma_kernel_estimate(g.values(), cfg, BandwidthSchedule{});
    d << "; sigma_kernel=" << sigma;
    return e5 <= 0.02 && e5 < e3 && std::fabs(sigma - 5.0) <= 0.5;
  });
}

CriterionResult quantile_round_trip() {
  return timed(7, "quantile-round-trip", 0.0, [](std::ostringstream& d) {
    std::vector<double> us;
    for (int k = 6; k >= 1; --k) us.push_back(std::pow(10.0, -k));
    for (double u : {0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8}) us.push_back(u);
    for (int k = 1; k <= 6; ++k) us.push_back(1.0 - std::pow(10.0, -k));
    double worst = 0.0;
    for (auto kind : {DistributionKind::Gaussian, DistributionKind::Cauchy}) {
      for (const DistributionSpec spec : {DistributionSpec::standard(kind), DistributionSpec{kind, 3.0, 5.0}}) {
        for (double u : us) worst = std::max(worst, std::fabs(cdf(spec, quantile(spec, u)) - u));
      }
    }
    d << " max |cdf(quantile(u)) - u| = " << worst << " over " << us.size() << " points x 4 specs";
    return worst <= 1e-9;
  });
}

CriterionResult coin_group() {
  return timed(8, "coin-group", 30.0, [](std::ostringstream& d) {
    bool ok = true;
    const double prevalence = prevalence_monte_carlo(0.02, 10000, 10000, 3);
    d << " prevalence=" << prevalence;
    ok = ok && prevalence >= 0.99;

    double worst = 0.0;
    for (double theta : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const double est = cesaro_estimate(bernoulli_sample(theta, 100000, seed), {0.05}, 0.01);
        worst = std::max(worst, std::fabs(est - theta));
      }
    }
    d << "; cesaro worst error=" << worst;
    ok = ok && worst <= 0.01;

    ParameterSetDescriptor countable;
    countable.kind = Cardinality::CountablyInfinite;
    const bool fixtures =
        classify_objectivity(ParameterSetDescriptor::finite({0.3, 0.7})) ==
            ObjectivityVerdict::StrongObjectiveExists &&
        classify_objectivity(countable) == ObjectivityVerdict::ObjectiveExistsNotStrong &&
        classify_objectivity(ParameterSetDescriptor::finite({0.5, 0.9})) ==
            ObjectivityVerdict::NoObjectiveEstimate;
    ok = ok && fixtures;

    int agree = 0;
    for (std::uint64_t t = 0; t < 20; ++t) {
      std::vector<int> pool(19);
      for (int j = 0; j < 19; ++j) pool[static_cast<std::size_t>(j)] = j + 1;
      const std::size_t size = 2 + Philox4x32::bits64(88, t, 0) % 5;
      std::vector<double> elements;
      for (std::size_t k = 0; k < size; ++k) {
        const std::size_t pick = k + Philox4x32::bits64(88, t, k + 1) % (pool.size() - k);
        std::swap(pool[k], pool[pick]);
        elements.push_back(pool[k] / 20.0);
      }
      const bool has_half = std::find(elements.begin(), elements.end(), 0.5) != elements.end();
      const auto expected =
          has_half ? ObjectivityVerdict::NoObjectiveEstimate : ObjectivityVerdict::StrongObjectiveExists;
      agree += classify_objectivity(ParameterSetDescriptor::finite(elements)) == expected ? 1 : 0;
    }
    d << "; classifier fixtures " << (fixtures ? "ok" : "FAIL") << ", randomized " << agree << "/20";
    return ok && agree == 20;
  });
}

CriterionResult brute_force_oracles() {
  return timed(9, "brute-force-oracle-equivalence", 0.0, [](std::ostringstream& d) {
    int mismatches = 0;
    for (std::uint64_t w = 0; w < 100; ++w) {
      const std::size_t n = 1 + Philox4x32::bits64(99, w, 0) % 20;
      std::vector<double> xs(n);
      for (std::size_t i = 0; i < n; ++i) {
        xs[i] = static_cast<double>(static_cast<int>(Philox4x32::bits64(99, w, i + 1) % 11) - 5);
      }
      const double probe = static_cast<double>(static_cast<int>(Philox4x32::bits64(99, w, 40) % 3) - 1);
      const std::size_t n0 = 1 + Philox4x32::bits64(99, w, 41) % n;

      const EstimatorTrace tr = trace(xs, {probe});
      std::vector<double> naive(n);
      for (std::size_t m = 1; m <= n; ++m) {
        std::size_t count = 0;
        for (std::size_t i = 0; i < m; ++i) count += xs[i] <= probe ? 1 : 0;
        naive[m - 1] = static_cast<double>(count) / static_cast<double>(m);
      }
      double sup = naive[n0 - 1];
      double inf = naive[n0 - 1];
      for (std::size_t m = n0; m <= n; ++m) {
        sup = std::max(sup, naive[m - 1]);
        inf = std::min(inf, naive[m - 1]);
      }
      const TailExtrema ext = tail_extrema(tr, n0);
      if (tr.values != naive || ext.sup_tail != sup || ext.inf_tail != inf) ++mismatches;

      double shadow = 0.0;
      for (std::size_t k = 1; k <= n; ++k) {
        if (xs[k - 1] > 0.0) shadow += std::ldexp(1.0, -static_cast<int>(k));
      }
      if (binary_shadow(xs, n) != shadow) ++mismatches;
    }
    d << " mismatches " << mismatches << " over 100 windows";
    return mismatches == 0;
  });
}

CriterionResult determinism() {
  return timed(10, "report-determinism", 0.0, [](std::ostringstream& d) {
    bool ok = true;
    const int saved_threads = omp_get_max_threads();
    for (auto which : {ReferenceTable::Table1, ReferenceTable::Table2, ReferenceTable::Table3}) {
      const std::string serial_a = emit_report(reproduce_table(which, false), ReportFormat::Csv);
      const std::string serial_b = emit_report(reproduce_table(which, false), ReportFormat::Csv);
      omp_set_num_threads(4);
      const std::string parallel_a = emit_report(reproduce_table(which, true), ReportFormat::Csv);
      const std::string parallel_b = emit_report(reproduce_table(which, true), ReportFormat::Csv);
      omp_set_num_threads(saved_threads);
      const bool same = serial_a == serial_b && serial_a == parallel_a && serial_a == parallel_b;
      d << " table" << (static_cast<int>(which) + 1) << (same ? " identical" : " DIFFERS");
      ok = ok && same;
    }
    return ok;
  });
}

}  // namespace

std::vector<CriterionResult> run_all() {
  return {table1(),      table2(),      table3(),           consistency_sweep(),
          heavy_tail(),  kernel_convergence(), quantile_round_trip(), coin_group(),
          brute_force_oracles(), determinism()};
}

std::string format_line(const CriterionResult& r) {
  char head[96];
  std::snprintf(head, sizeof head, "[%s] %2d %-32s (%.3f s)", r.passed ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.seconds);
  return std::string(head) + r.detail;
}

}  // namespace objest::acceptance
