#include <catch_amalgamated.hpp>
#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "objest/error.hpp"
#include "objest/harness.hpp"

using namespace objest;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::StartsWith;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> data_lines(const std::string& csv) {
  auto all = lines_of(csv);
  std::erase_if(all, [](const std::string& l) { return l.empty() || l[0] == '#'; });
  return all;
}

ExperimentConfig all_positive_config() {
  ExperimentConfig cfg;
  cfg.distribution = {DistributionKind::Gaussian, 100.0, 1.0};
  cfg.n_grid = {10};
  cfg.estimators = {"sign_count", "mean"};
  return cfg;
}

}  // namespace

TEST_CASE("run_experiment reproduces the Gaussian signal table", "[harness]") {
  const auto t1 = reproduce_table(ReferenceTable::Table1);
  REQUIRE(t1.rows.size() == 20);
  CHECK_THAT(*t1.value(50, "sign_count"), WithinAbs(0.994457883, 1e-4));
  CHECK_THAT(*t1.value(50, "mean"), WithinAbs(1.146952654, 1e-4));
  CHECK_THAT(*t1.value(1000, "sign_count"), WithinAbs(1.036433389, 1e-4));
  CHECK_FALSE(t1.value(75, "mean").has_value());
  CHECK_FALSE(t1.value(50, "sd").has_value());
}

TEST_CASE("run_experiment reproduces the Cauchy signal table", "[harness]") {
  const auto t2 = reproduce_table(ReferenceTable::Table2);
  CHECK_THAT(*t2.value(200, "sign_count"), WithinAbs(1.0, 1e-6));
  CHECK_THAT(*t2.value(1000, "mean"), WithinAbs(29.73405416, 0.1));
  CHECK_THAT(*t2.value(1000, "sign_count"), WithinAbs(1.0126459941540735, 1e-12));
}

TEST_CASE("the sigma table matches the oracle row at n = 800", "[harness]") {
  const auto t3 = reproduce_table(ReferenceTable::Table3);
  REQUIRE(t3.columns == std::vector<std::string>{"sd", "sd_corrected", "sigma_signcount", "sigma_mean_signcount"});
  CHECK_THAT(*t3.value(800, "sd"), WithinAbs(5.106390271, 1e-4));
  CHECK_THAT(*t3.value(800, "sd_corrected"), WithinAbs(5.109584761, 1e-4));
  CHECK_THAT(*t3.value(800, "sigma_signcount"), WithinAbs(4.92581015, 1e-4));
  CHECK_THAT(*t3.value(800, "sigma_mean_signcount"), WithinAbs(5.19369988, 1e-4));
}

TEST_CASE("estimator failures become error cells", "[harness]") {
  const auto report = run_experiment(all_positive_config());
  const auto& cell = report.rows.at(0).cells.at(0);
  CHECK_FALSE(cell.ok());
  CHECK_FALSE(cell.error.empty());
  CHECK_FALSE(report.value(10, "sign_count").has_value());
  CHECK(report.value(10, "mean").has_value());
  CHECK_THAT(emit_report(report, ReportFormat::Csv), ContainsSubstring("\n10,ERR,"));
  CHECK_THAT(emit_report(report, ReportFormat::Markdown), ContainsSubstring("| ERR |"));
}

TEST_CASE("emit_report shape", "[harness]") {
  ExperimentConfig cfg = table_config(ReferenceTable::Table1);
  cfg.n_grid = {50};
  const std::string csv = emit_report(run_experiment(cfg), ReportFormat::Csv);
  const auto rows = data_lines(csv);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == "n,sign_count,mean");
  CHECK_THAT(rows[1], StartsWith("50,0.994457883,"));
  for (const auto& line : lines_of(csv)) CHECK((line.empty() || line[0] == '#' || line[0] == 'n' || line[0] == '5'));
  CHECK_THAT(csv, ContainsSubstring("# objest_version: 0.1.0"));

  const std::string md = emit_report(run_experiment(cfg), ReportFormat::Markdown);
  CHECK_THAT(md, ContainsSubstring("| n | sign_count | mean |"));
  CHECK_THAT(md, ContainsSubstring("| 50 | 0.994457883 |"));
  CHECK_THAT(md, ContainsSubstring("### Metadata"));
}

TEST_CASE("the full Gaussian table prints its first row", "[harness]") {
  const auto rows = data_lines(emit_report(reproduce_table(ReferenceTable::Table1), ReportFormat::Csv));
  REQUIRE(rows.size() == 21);
  CHECK_THAT(rows[1], StartsWith("50,0.994457883,"));
}

TEST_CASE("reports are byte-identical across runs and row schedules", "[harness][property]") {
  for (auto which : {ReferenceTable::Table1, ReferenceTable::Table2, ReferenceTable::Table3}) {
    const auto a = emit_report(reproduce_table(which, true), ReportFormat::Csv);
    const auto b = emit_report(reproduce_table(which, true), ReportFormat::Csv);
    const auto c = emit_report(reproduce_table(which, false), ReportFormat::Csv);
    REQUIRE(a == b);
    REQUIRE(a == c);
  }
  ExperimentConfig pseudo = table_config(ReferenceTable::Table2);
  pseudo.generator = SampleGenerator::PseudoRandom;
  pseudo.seed = 2024;
  CHECK(emit_report(run_experiment(pseudo), ReportFormat::Csv) ==
        emit_report(run_experiment(pseudo), ReportFormat::Csv));
}

TEST_CASE("rows are prefixes of one shared sample", "[harness][property]") {
  ExperimentConfig cfg = table_config(ReferenceTable::Table1);
  cfg.estimators = {"sign_count", "mean", "cdf_point", "limsup_cdf", "liminf_cdf"};
  const auto full = run_experiment(cfg);
  for (std::size_t n : {50u, 350u, 700u}) {
    ExperimentConfig single = cfg;
    single.n_grid = {n};
    const auto one = run_experiment(single);
    for (const auto& col : cfg.estimators) REQUIRE(*one.value(n, col) == *full.value(n, col));
  }
}

TEST_CASE("pseudo-random generator runs", "[harness]") {
  ExperimentConfig cfg = table_config(ReferenceTable::Table1);
  cfg.generator = SampleGenerator::PseudoRandom;
  cfg.seed = 5;
  const auto report = run_experiment(cfg);
  CHECK_THAT(*report.value(1000, "mean"), WithinAbs(1.0, 0.2));
  bool has_seed = false;
  for (const auto& [k, v] : report.metadata) has_seed |= (k == "seed" && v == "5");
  CHECK(has_seed);
}

TEST_CASE("config validation names the field", "[harness]") {
  auto field_of = [](const ExperimentConfig& cfg) {
    try {
      cfg.validate();
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string("none");
  };
  ExperimentConfig ok = table_config(ReferenceTable::Table1);
  CHECK(field_of(ok) == "none");

  auto bad = ok;
  bad.n_grid = {100, 50};
  CHECK(field_of(bad) == "n_grid");
  bad = ok;
  bad.n_grid = {};
  CHECK(field_of(bad) == "n_grid");
  bad = ok;
  bad.estimators = {"median"};
  CHECK(field_of(bad) == "estimators");
  bad = ok;
  bad.precision_bits = 70;
  CHECK(field_of(bad) == "precision_bits");
  bad = ok;
  bad.distribution.scale = 0.0;
  CHECK(field_of(bad) == "distribution");
  CHECK_THROWS_AS(run_experiment(bad), ConfigError);
}

TEST_CASE("parse_n_grid", "[harness]") {
  CHECK(parse_n_grid("50:200:50") == std::vector<std::size_t>{50, 100, 150, 200});
  CHECK(parse_n_grid("10:25:10") == std::vector<std::size_t>{10, 20});
  CHECK(parse_n_grid("7") == std::vector<std::size_t>{7});
  CHECK_THROWS_AS(parse_n_grid("0:10:5"), ConfigError);
  CHECK_THROWS_AS(parse_n_grid("10:5:1"), ConfigError);
  CHECK_THROWS_AS(parse_n_grid("1:10:0"), ConfigError);
  CHECK_THROWS_AS(parse_n_grid("a:b:c"), ConfigError);
}

TEST_CASE("settings and config text", "[harness]") {
  const auto kv = parse_config_text("# comment\ntable = 2\n  n-grid = 100:300:100  # trailing\n\nformat=md\n");
  REQUIRE(kv.size() == 3);
  CHECK(kv[0] == std::pair<std::string, std::string>{"table", "2"});
  CHECK(kv[1] == std::pair<std::string, std::string>{"n-grid", "100:300:100"});
  CHECK(kv[2] == std::pair<std::string, std::string>{"format", "md"});

  ExperimentConfig cfg;
  for (const auto& [k, v] : kv) apply_setting(cfg, k, v);
  CHECK(cfg.distribution.kind == DistributionKind::Cauchy);
  CHECK(cfg.n_grid == std::vector<std::size_t>{100, 200, 300});
  CHECK(cfg.format == ReportFormat::Markdown);

  apply_setting(cfg, "estimators", "mean,cdf_point");
  CHECK(cfg.estimators == std::vector<std::string>{"mean", "cdf_point"});
  apply_setting(cfg, "n0", "40");
  CHECK_FALSE(cfg.n0.half);
  CHECK(cfg.n0.resolve(1000) == 40);
  apply_setting(cfg, "alpha", "sqrt2");
  CHECK(cfg.alpha == Irrational::Sqrt2);
  apply_setting(cfg, "gen", "pseudo");
  CHECK(cfg.generator == SampleGenerator::PseudoRandom);

  CHECK_THROWS_AS(apply_setting(cfg, "colour", "red"), ConfigError);
  CHECK_THROWS_AS(apply_setting(cfg, "scale", "wide"), ConfigError);
  CHECK_THROWS_AS(apply_setting(cfg, "format", "xml"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("no equals sign here\n"), ConfigError);
}

TEST_CASE("registered estimators", "[harness]") {
  const auto& ids = registered_estimators();
  for (const char* id : {"sign_count", "mean", "cdf_point", "limsup_cdf", "liminf_cdf", "strong_fractional",
                         "binary_shadow", "sd", "sd_corrected", "sigma_signcount", "sigma_mean_signcount",
                         "sigma_kernel"}) {
    CHECK(std::find(ids.begin(), ids.end(), id) != ids.end());
  }
  ExperimentConfig cfg;
  cfg.distribution = {DistributionKind::Gaussian, 3.0, 5.0};
  cfg.n_grid = {400, 800};
  cfg.estimators = ids;
  const auto report = run_experiment(cfg);
  CHECK(report.columns == ids);
  CHECK_THAT(*report.value(800, "sigma_kernel"), WithinRel(5.0, 0.3));
  CHECK(*report.value(800, "binary_shadow") >= 0.0);
}
