#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "objest/distributions.hpp"
#include "objest/estimators.hpp"

namespace objest {

inline constexpr std::string_view kVersion = "0.1.0";

// Registered estimator identifiers, in the order they are documented.
const std::vector<std::string>& registered_estimators();

enum class ReportFormat { Csv, Markdown };

struct N0Rule {
  bool half = true;     // ceil(n / 2) for each row
  std::size_t fixed = 0;  // used when half == false

  std::size_t resolve(std::size_t n) const noexcept { return half ? half_tail_start(n) : fixed; }
};

struct ExperimentConfig {
  std::string caption = "experiment";
  DistributionSpec distribution;
  double probe = 0.0;
  std::vector<std::size_t> n_grid;
  std::vector<std::string> estimators;
  SampleGenerator generator = SampleGenerator::WeylInverseCdf;
  Irrational alpha = Irrational::Pi;
  unsigned precision_bits = kDefaultPrecisionBits;
  std::uint64_t seed = 0;
  N0Rule n0;
  ReportFormat format = ReportFormat::Csv;
  std::string out_path;       // empty means standard output
  bool parallel_rows = true;  // evaluate n-grid rows concurrently

  // Throws ConfigError naming the offending field.
  void validate() const;
};

// One cell: a value or an error marker carrying the reason.
struct Cell {
  std::optional<double> value;
  std::string error;

  bool ok() const noexcept { return value.has_value(); }
};

struct ReportRow {
  std::size_t n = 0;
  std::vector<Cell> cells;
};

struct ReportTable {
  std::string caption;
  std::vector<std::string> columns;  // estimator identifiers; "n" is implicit
  std::vector<ReportRow> rows;
  std::vector<std::pair<std::string, std::string>> metadata;

  const ReportRow* row(std::size_t n) const noexcept;
  // Value of a cell; nullopt when the row/column is missing or holds ERR.
  std::optional<double> value(std::size_t n, std::string_view column) const;
};

/// Evaluates each estimator on each length-n prefix of one sample window of
/// length max(n_grid). Estimator failures become error cells.
ReportTable run_experiment(const ExperimentConfig& config);

enum class ReferenceTable { Table1, Table2, Table3 };

ExperimentConfig table_config(ReferenceTable which);
ReportTable reproduce_table(ReferenceTable which, bool parallel_rows = true);

/// CSV: "#"-prefixed metadata lines, a header row, one row per n, values to
/// 9 significant digits, ERR for error cells. Markdown: the same cells as a
/// pipe table followed by a metadata section.
std::string emit_report(const ReportTable& report, ReportFormat format);

// "a:b:step" -> a, a+step, ..., <= b
std::vector<std::size_t> parse_n_grid(std::string_view text);

// Applies one "key = value" setting (keys mirror the long CLI flags without
// the dashes). Throws ConfigError on an unknown key or malformed value.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);

// Reads "key = value" lines; '#' starts a comment.
std::vector<std::pair<std::string, std::string>> parse_config_text(std::string_view text);

}  // namespace objest
