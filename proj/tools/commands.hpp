#pragma once

#include "scenario.hpp"

#include "equitrans/suites.hpp"

#include <string>
#include <vector>

namespace equitrans::cli {

using suites::Record;

struct Report {
  std::string command;
  Settings settings;
  std::vector<Record> records;
  /// Only for `suite`: per-suite grouping and wall time (text output only).
  std::vector<suites::SuiteReport> suites;

  [[nodiscard]] bool pass() const;
};

/// Subcommand names grouped as `<area> <verb>`.
const std::vector<std::pair<std::string, std::vector<std::string>>>& command_table();

/// Runs one subcommand. InvalidInput propagates; mathematical failures
/// become failing records.
Report run_command(const std::string& area, const std::string& verb, const Json& scenario, const Settings& settings);
Report run_suites(const std::string& name, const Settings& settings);

OrderedJson to_json(const Report& report);
std::string to_text(const Report& report);

}  // namespace equitrans::cli
