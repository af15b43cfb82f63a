#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rqt/config.hpp"

namespace rqt {

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitNumeric = 3, kExitOracle = 4 };

struct CommandOptions {
  int jobs = 1;
  std::optional<std::uint64_t> seed;
  std::optional<OutputFormat> format;
  /// Negative control for oracle-check: flips the sign of E_AB on one side.
  bool inject_sign_error = false;
};

struct CommandResult {
  std::string text;  // serialized CSV or JSON, LF line endings
  int exit_code = kExitOk;
};

struct CapacityRow {
  double axis_value, e_ab, nu_b, capacity_closed_form, holevo_numeric, c_min, c_max;
};

/// Column order of the capacity CSV.
inline constexpr const char* kCapacityColumns =
    "axis_value,e_ab,nu_b,capacity_closed_form,holevo_numeric,c_min,c_max";

/// The teleport configuration at sweep point i, with E_AB re-tuned when requested.
TeleportConfig sweep_point(const RunConfig& cfg, int i);
int sweep_size(const RunConfig& cfg);

std::vector<CapacityRow> capacity_rows(const RunConfig& cfg, int jobs = 1);

CommandResult cmd_capacity(const RunConfig& cfg, const CommandOptions& opts = {});
CommandResult cmd_teleport(const RunConfig& cfg, const CommandOptions& opts = {});
CommandResult cmd_causality_scan(const RunConfig& cfg, const CommandOptions& opts = {});
CommandResult cmd_oracle_check(const RunConfig& cfg, const CommandOptions& opts = {});

}  // namespace rqt
