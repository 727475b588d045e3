// Copyright 2026 The chronoq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

namespace chronoq::cli {

using Json = nlohmann::ordered_json;

enum class Format { Table, Json, Csv };

struct RunConfig {
  std::uint64_t seed = 42;
  std::size_t trials = 100000;
  double tol = 1e-9;
  Format format = Format::Table;
  std::string out_path;
};

/// JSON body of a command plus whether its checks held.
struct Report {
  Json body;
  bool ok = true;
  bool ran = false;
};

/// Registers every subcommand; callbacks fill `report` after parsing.
void add_commands(CLI::App& app, const RunConfig& config, Report& report);

std::string render(const Json& body, Format format);

}  // namespace chronoq::cli
