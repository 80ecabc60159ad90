#include "objest/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "objest/density.hpp"
#include "objest/error.hpp"

namespace objest {
namespace {

// Fallbacks for the objective estimators; the harness has no caller to ask.
constexpr double kCdfFallbackTheta0 = 0.5;
constexpr double kSigmaFallback = 1.0;
constexpr double kStrongConvergenceTol = 0.01;

struct EvalContext {
  const ExperimentConfig& config;
  std::size_t n0;
};

using EstimatorFn = std::function<double(std::span<const double>, const EvalContext&)>;

bool in_open_unit(double v) { return v > 0.0 && v < 1.0; }

SigmaEstimateConfig sigma_config(const EvalContext& ctx) {
  SigmaEstimateConfig cfg;
  cfg.known_mean = ctx.config.distribution.location;
  cfg.fallback_sigma = kSigmaFallback;
  cfg.n0 = ctx.n0;
  return cfg;
}

const std::vector<std::pair<std::string, EstimatorFn>>& registry() {
  static const std::vector<std::pair<std::string, EstimatorFn>> table = {
      {"sign_count",
       [](std::span<const double> xs, const EvalContext& ctx) {
         const DistributionSpec noise{ctx.config.distribution.kind, 0.0,
                                      ctx.config.distribution.scale};
         return sign_count_estimate(xs, noise);
       }},
      {"mean", [](std::span<const double> xs, const EvalContext&) { return sample_mean(xs); }},
      {"cdf_point",
       [](std::span<const double> xs, const EvalContext& ctx) {
         return cdf_point_estimate(xs, {ctx.config.probe});
       }},
      {"limsup_cdf",
       [](std::span<const double> xs, const EvalContext& ctx) {
         return objective_cdf_estimate(xs, {ctx.config.probe}, in_open_unit,
                                       {kCdfFallbackTheta0}, ctx.n0, TailLimit::Upper);
       }},
      {"liminf_cdf",
       [](std::span<const double> xs, const EvalContext& ctx) {
         return objective_cdf_estimate(xs, {ctx.config.probe}, in_open_unit,
                                       {kCdfFallbackTheta0}, ctx.n0, TailLimit::Lower);
       }},
      {"strong_fractional",
       [](std::span<const double> xs, const EvalContext&) {
         return strong_fractional_estimate(xs, kStrongConvergenceTol,
                                           default_shadow_depth(xs.size()));
       }},
      {"binary_shadow",
       [](std::span<const double> xs, const EvalContext&) {
         return binary_shadow(xs, default_shadow_depth(xs.size()));
       }},
      {"sd", [](std::span<const double> xs, const EvalContext&) { return sample_sd(xs, false); }},
      {"sd_corrected",
       [](std::span<const double> xs, const EvalContext&) { return sample_sd(xs, true); }},
      {"sigma_signcount",
       [](std::span<const double> xs, const EvalContext& ctx) {
         return sigma_signcount_term(xs, ctx.config.distribution.location);
       }},
      {"sigma_mean_signcount",
       [](std::span<const double> xs, const EvalContext&) { return sigma_mean_signcount_term(xs); }},
      {"sigma_signcount_sup",
       [](std::span<const double> xs, const EvalContext& ctx) {
         return sigma_signcount_estimate(xs, sigma_config(ctx));
       }},
      {"sigma_mean_signcount_sup",
       [](std::span<const double> xs, const EvalContext& ctx) {
         return sigma_mean_signcount_estimate(xs, sigma_config(ctx));
       }},
      {"sigma_kernel",
       [](std::span<const double> xs, const EvalContext& ctx) {
         SigmaEstimateConfig cfg = sigma_config(ctx);
         cfg.trace_stride = default_kernel_trace_stride(xs.size());
         return sigma_kernel_estimate(xs, cfg, BandwidthSchedule{});
       }},
  };
  return table;
}

const EstimatorFn* find_estimator(std::string_view name) {
  for (const auto& [id, fn] : registry()) {
    if (id == name) return &fn;
  }
  return nullptr;
}

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

std::string describe_grid(const std::vector<std::size_t>& grid) {
  std::vector<std::string> parts;
  parts.reserve(grid.size());
  for (std::size_t n : grid) parts.push_back(std::to_string(n));
  return join(parts, " ");
}

std::vector<std::pair<std::string, std::string>> metadata_for(const ExperimentConfig& c) {
  std::vector<std::pair<std::string, std::string>> md = {
      {"objest_version", std::string(kVersion)},
      {"caption", c.caption},
      {"dist", std::string(to_string(c.distribution.kind))},
      {"loc", format_value(c.distribution.location)},
      {"scale", format_value(c.distribution.scale)},
      {"probe", format_value(c.probe)},
      {"n_grid", describe_grid(c.n_grid)},
      {"estimators", join(c.estimators, ",")},
      {"gen", c.generator == SampleGenerator::WeylInverseCdf ? "weyl" : "pseudo"},
  };
  if (c.generator == SampleGenerator::WeylInverseCdf) {
    md.emplace_back("alpha", std::string(to_string(c.alpha)));
    md.emplace_back("precision_bits", std::to_string(c.precision_bits));
  } else {
    md.emplace_back("seed", std::to_string(c.seed));
    md.emplace_back("rng", "philox4x32-10");
  }
  md.emplace_back("n0", c.n0.half ? "half" : std::to_string(c.n0.fixed));
  md.emplace_back("theta0_cdf", format_value(kCdfFallbackTheta0));
  md.emplace_back("sigma0", format_value(kSigmaFallback));
  md.emplace_back("strong_convergence_tol", format_value(kStrongConvergenceTol));
  return md;
}

template <typename T>
T parse_number(std::string_view field, std::string_view text) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ConfigError(std::string(field), "cannot parse '" + std::string(text) + "'");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.emplace_back(trim(text.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

const std::vector<std::string>& registered_estimators() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& entry : registry()) v.push_back(entry.first);
    return v;
  }();
  return names;
}

void ExperimentConfig::validate() const {
  try {
    distribution.validate();
  } catch (const std::domain_error& e) {
    throw ConfigError("distribution", e.what());
  }
  if (!std::isfinite(probe)) throw ConfigError("probe", "must be finite");
  if (n_grid.empty()) throw ConfigError("n_grid", "must not be empty");
  if (n_grid.front() == 0) throw ConfigError("n_grid", "sizes must be >= 1");
  if (std::adjacent_find(n_grid.begin(), n_grid.end(), std::greater_equal<>()) != n_grid.end()) {
    throw ConfigError("n_grid", "must be strictly ascending");
  }
  if (estimators.empty()) throw ConfigError("estimators", "must not be empty");
  for (const auto& name : estimators) {
    if (!find_estimator(name)) {
      throw ConfigError("estimators", "unknown estimator '" + name + "'; registered: " +
                                          join(registered_estimators(), ","));
    }
  }
  if (generator == SampleGenerator::WeylInverseCdf) {
    const unsigned need = min_precision_bits(n_grid.back());
    if (precision_bits < need || precision_bits > kMaxPrecisionBits) {
      throw ConfigError("precision_bits", "must lie in [" + std::to_string(need) + ", " +
                                              std::to_string(kMaxPrecisionBits) + "] for n = " +
                                              std::to_string(n_grid.back()));
    }
  }
  if (!n0.half && n0.fixed == 0) throw ConfigError("n0", "fixed tail start must be >= 1");
}

const ReportRow* ReportTable::row(std::size_t n) const noexcept {
  for (const auto& r : rows) {
    if (r.n == n) return &r;
  }
  return nullptr;
}

std::optional<double> ReportTable::value(std::size_t n, std::string_view column) const {
  const ReportRow* r = row(n);
  if (!r) return std::nullopt;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j] == column) return r->cells[j].value;
  }
  return std::nullopt;
}

ReportTable run_experiment(const ExperimentConfig& config) {
  config.validate();
  const std::size_t length = config.n_grid.back();
  const SampleWindow window =
      config.generator == SampleGenerator::WeylInverseCdf
          ? sample_via_weyl(config.distribution, length, config.alpha, config.precision_bits)
          : sample_pseudo_random(config.distribution, length, config.seed);

  std::vector<const EstimatorFn*> fns;
  for (const auto& name : config.estimators) fns.push_back(find_estimator(name));

  ReportTable report;
  report.caption = config.caption;
  report.columns = config.estimators;
  report.metadata = metadata_for(config);
  report.rows.resize(config.n_grid.size());

  // Rows share the immutable window; each writes only its own slot.
  const auto nrows = static_cast<std::ptrdiff_t>(config.n_grid.size());
#pragma omp parallel for schedule(dynamic, 1) if (config.parallel_rows)
  for (std::ptrdiff_t r = 0; r < nrows; ++r) {
    const std::size_t n = config.n_grid[static_cast<std::size_t>(r)];
    ReportRow& row = report.rows[static_cast<std::size_t>(r)];
    row.n = n;
    const EvalContext ctx{config, config.n0.resolve(n)};
    const std::span<const double> prefix = window.values().first(n);
    for (const EstimatorFn* fn : fns) {
      Cell cell;
      try {
        const double v = (*fn)(prefix, ctx);
        if (std::isfinite(v)) {
          cell.value = v;
        } else {
          cell.error = "non-finite value";
        }
      } catch (const std::exception& e) {
        cell.error = e.what();
      }
      row.cells.push_back(std::move(cell));
    }
  }
  return report;
}

ExperimentConfig table_config(ReferenceTable which) {
  ExperimentConfig c;
  switch (which) {
    case ReferenceTable::Table1:
      c.caption = "Estimates of the useful signal theta=1, standard Gaussian noise";
      c.distribution = {DistributionKind::Gaussian, 1.0, 1.0};
      c.n_grid = parse_n_grid("50:1000:50");
      c.estimators = {"sign_count", "mean"};
      break;
    case ReferenceTable::Table2:
      c.caption = "Estimates of the useful signal theta=1, Cauchy noise";
      c.distribution = {DistributionKind::Cauchy, 1.0, 1.0};
      c.n_grid = parse_n_grid("50:1000:50");
      c.estimators = {"sign_count", "mean"};
      break;
    case ReferenceTable::Table3:
      c.caption = "Estimates of an unknown standard deviation sigma=5 (known mean a=3)";
      c.distribution = {DistributionKind::Gaussian, 3.0, 5.0};
      c.n_grid = parse_n_grid("200:2000:200");
      c.estimators = {"sd", "sd_corrected", "sigma_signcount", "sigma_mean_signcount"};
      break;
  }
  return c;
}

ReportTable reproduce_table(ReferenceTable which, bool parallel_rows) {
  ExperimentConfig c = table_config(which);
  c.parallel_rows = parallel_rows;
  return run_experiment(c);
}

std::string emit_report(const ReportTable& report, ReportFormat format) {
  std::ostringstream os;
  auto cell_text = [](const Cell& cell) {
    return cell.value ? format_value(*cell.value) : std::string("ERR");
  };
  if (format == ReportFormat::Csv) {
    for (const auto& [key, value] : report.metadata) os << "# " << key << ": " << value << '\n';
    os << "n";
    for (const auto& col : report.columns) os << ',' << col;
    os << '\n';
    for (const auto& row : report.rows) {
      os << row.n;
      for (const auto& cell : row.cells) os << ',' << cell_text(cell);
      os << '\n';
    }
    return os.str();
  }

  os << "**" << report.caption << "**\n\n| n |";
  for (const auto& col : report.columns) os << ' ' << col << " |";
  os << "\n|---:|";
  for (std::size_t j = 0; j < report.columns.size(); ++j) os << "---:|";
  os << '\n';
  for (const auto& row : report.rows) {
    os << "| " << row.n << " |";
    for (const auto& cell : row.cells) os << ' ' << cell_text(cell) << " |";
    os << '\n';
  }
  os << "\n### Metadata\n\n";
  for (const auto& [key, value] : report.metadata) os << "- " << key << ": " << value << '\n';
  return os.str();
}

std::vector<std::size_t> parse_n_grid(std::string_view text) {
  const std::vector<std::string> parts = split(text, ':');
  if (parts.size() == 1) return {parse_number<std::size_t>("n_grid", parts[0])};
  if (parts.size() != 3) throw ConfigError("n_grid", "expected a:b:step, got '" + std::string(text) + "'");
  const auto a = parse_number<std::size_t>("n_grid", parts[0]);
  const auto b = parse_number<std::size_t>("n_grid", parts[1]);
  const auto step = parse_number<std::size_t>("n_grid", parts[2]);
  if (a == 0 || step == 0 || b < a) throw ConfigError("n_grid", "need 1 <= a <= b and step >= 1");
  std::vector<std::size_t> grid;
  for (std::size_t n = a; n <= b; n += step) grid.push_back(n);
  return grid;
}

void apply_setting(ExperimentConfig& c, std::string_view key, std::string_view raw) {
  const std::string_view value = trim(raw);
  const std::string field(key);
  try {
    if (key == "table") {
      const auto t = parse_number<int>(field, value);
      if (t < 1 || t > 3) throw ConfigError(field, "must be 1, 2 or 3");
      const ExperimentConfig base = table_config(static_cast<ReferenceTable>(t - 1));
      c.caption = base.caption;
      c.distribution = base.distribution;
      c.n_grid = base.n_grid;
      c.estimators = base.estimators;
    } else if (key == "dist") {
      c.distribution.kind = parse_distribution_kind(value);
    } else if (key == "loc" || key == "theta") {
      c.distribution.location = parse_number<double>(field, value);
    } else if (key == "scale") {
      c.distribution.scale = parse_number<double>(field, value);
    } else if (key == "probe") {
      c.probe = parse_number<double>(field, value);
    } else if (key == "n-grid") {
      c.n_grid = parse_n_grid(value);
    } else if (key == "estimators") {
      c.estimators = split(value, ',');
    } else if (key == "gen") {
      if (value == "weyl") {
        c.generator = SampleGenerator::WeylInverseCdf;
      } else if (value == "pseudo") {
        c.generator = SampleGenerator::PseudoRandom;
      } else {
        throw ConfigError(field, "expected weyl or pseudo");
      }
    } else if (key == "alpha") {
      c.alpha = parse_irrational(value);
    } else if (key == "precision-bits") {
      c.precision_bits = parse_number<unsigned>(field, value);
    } else if (key == "seed") {
      c.seed = parse_number<std::uint64_t>(field, value);
    } else if (key == "n0") {
      if (value == "half") {
        c.n0 = {true, 0};
      } else {
        c.n0 = {false, parse_number<std::size_t>(field, value)};
      }
    } else if (key == "format") {
      if (value == "csv") {
        c.format = ReportFormat::Csv;
      } else if (value == "md") {
        c.format = ReportFormat::Markdown;
      } else {
        throw ConfigError(field, "expected csv or md");
      }
    } else if (key == "out") {
      c.out_path = std::string(value);
    } else {
      throw ConfigError(field, "unknown setting");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(field, e.what());
  }
}

std::vector<std::pair<std::string, std::string>> parse_config_text(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t line_no = 0;
  for (const std::string& line : split(text, '\n')) {
    ++line_no;
    std::string_view body = line;
    if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config", "line " + std::to_string(line_no) + ": expected key = value");
    }
    out.emplace_back(std::string(trim(body.substr(0, eq))), std::string(trim(body.substr(eq + 1))));
  }
  return out;
}

}  // namespace objest
