#pragma once

#include "metlie/json_io.hpp"

namespace metlie {

struct CliResult {
  int exit_code = 0;  // 0 computed, 1 input error, 2 unsupported case
  Json report;
};

/// Runs one CLI command (same surface as the binary). Deterministic:
/// identical arguments and files produce identical reports.
CliResult run_command(const std::vector<std::string>& args);

}  // namespace metlie
