// objest: reproduce the reference tables, run ad-hoc estimator experiments
// on deterministic equidistributed samples, or run the acceptance checks.
//
// Exit codes: 0 success, 1 configuration error, 2 acceptance failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "objest/acceptance.hpp"
#include "objest/error.hpp"
#include "objest/harness.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitCheck = 2;

int run_checks() {
  bool ok = true;
  for (const auto& r : objest::acceptance::run_all()) {
    std::cout << objest::acceptance::format_line(r) << '\n';
    ok = ok && r.passed;
  }
  return ok ? 0 : kExitCheck;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw objest::ConfigError("config", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Consistent and objective estimators on Weyl-equidistributed samples"};
  app.option_defaults()->always_capture_default(false);

  // Every value option is kept as text and applied in a fixed order through
  // the same parser the config file uses.
  const std::vector<std::pair<std::string, std::string>> value_options = {
      {"table", "Reproduce a reference table: 1, 2 or 3"},
      {"dist", "Noise family: gaussian | cauchy"},
      {"loc", "Location of the sampled distribution"},
      {"scale", "Scale of the sampled distribution"},
      {"theta", "Useful signal; alias for --loc"},
      {"probe", "Probe point x* for CDF-valued estimators"},
      {"n-grid", "Sample sizes a:b:step"},
      {"estimators", "Comma-separated estimator identifiers"},
      {"gen", "Sample generator: weyl | pseudo"},
      {"alpha", "Weyl multiplier: pi | sqrt2 | phi"},
      {"precision-bits", "Bits of the multiplier used for {n*alpha}"},
      {"seed", "Seed for --gen pseudo"},
      {"n0", "Tail start for limsup/liminf estimators: half | K"},
      {"format", "Output format: csv | md"},
      {"out", "Output path (default: standard output)"},
  };
  std::vector<std::optional<std::string>> values(value_options.size());
  for (std::size_t i = 0; i < value_options.size(); ++i) {
    app.add_option_function<std::string>(
        "--" + value_options[i].first, [&values, i](const std::string& v) { values[i] = v; },
        value_options[i].second);
  }
  std::string config_path;
  bool check = false;
  bool list = false;
  app.add_option("--config", config_path, "Plain-text key = value settings; flags override");
  app.add_flag("--check", check, "Run the acceptance suite; exit 2 on any failure");
  app.add_flag("--list-estimators", list, "Print the registered estimator identifiers");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  if (check) return run_checks();
  if (list) {
    for (const auto& name : objest::registered_estimators()) std::cout << name << '\n';
    return 0;
  }

  try {
    std::vector<std::pair<std::string, std::string>> settings;
    if (!config_path.empty()) settings = objest::parse_config_text(read_file(config_path));
    for (std::size_t i = 0; i < value_options.size(); ++i) {
      if (values[i]) settings.emplace_back(value_options[i].first, *values[i]);
    }

    std::optional<std::string> loc;
    std::optional<std::string> theta;
    for (const auto& [key, value] : settings) {
      if (key == "loc") loc = value;
      if (key == "theta") theta = value;
    }
    objest::ExperimentConfig config = objest::table_config(objest::ReferenceTable::Table1);
    // A table selection resets the experiment before other settings apply.
    for (const auto& [key, value] : settings) {
      if (key == "table") objest::apply_setting(config, key, value);
    }
    for (const auto& [key, value] : settings) {
      if (key != "table") objest::apply_setting(config, key, value);
    }
    if (loc && theta && std::stod(*loc) != std::stod(*theta)) {
      throw objest::ConfigError("theta", "conflicts with --loc");
    }

    const objest::ReportTable report = objest::run_experiment(config);
    const std::string text = objest::emit_report(report, config.format);
    if (config.out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(config.out_path, std::ios::binary);
      if (!out) throw objest::ConfigError("out", "cannot write '" + config.out_path + "'");
      out << text;
    }
  } catch (const objest::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return 0;
}
