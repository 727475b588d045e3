// Copyright 2026 The chronoq Authors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <iostream>
#include <stdexcept>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace chronoq::cli;
  RunConfig config;
  Report report;

  CLI::App app{"chronoq: temporal entanglement, quantum chain and foundations toolkit"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.add_option("--seed", config.seed, "Base seed")->envname("CHRONOQ_SEED");
  app.add_option("--trials", config.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  app.add_option("--tol", config.tol, "Tolerance for exact checks")->check(CLI::PositiveNumber);
  bool json = false, csv = false;
  auto* json_flag = app.add_flag("--json", json, "Emit JSON");
  auto* csv_flag = app.add_flag("--csv", csv, "Emit CSV");
  json_flag->excludes(csv_flag);
  app.add_option("--out", config.out_path, "Write output to a file");
  app.fallthrough();
  add_commands(app, config, report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  if (!report.ran) return 2;
  if (json) config.format = Format::Json;
  if (csv) config.format = Format::Csv;

  const std::string text = render(report.body, config.format);
  if (config.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(config.out_path, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write " << config.out_path << "\n";
      return 2;
    }
    f << text;
  }
  return report.ok ? 0 : 1;
}
