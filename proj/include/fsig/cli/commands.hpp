#pragma once

#include "fsig/cli/spec.hpp"

#include <exception>
#include <optional>
#include <string>

namespace fsig::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitVerification = 4;

struct CommandResult {
  json report;
  std::string table;
  int exit_code = kExitOk;
};

/// compute, verify, bounds, chain or purity.
CommandResult run_command(const std::string& command, const RingSpecDocument& doc);

/// Exit code for an exception escaping run_command.
int exit_code_for(const std::exception& e);

/// Error report with the same shape for every command.
json error_report(const std::string& command, const std::exception& e, int exit_code);

/// Describes the first difference between two reports, if any.
std::optional<std::string> report_difference(const json& expected, const json& actual, const std::string& path = "");

}  // namespace fsig::cli
