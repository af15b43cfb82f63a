#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "rqt/teleport.hpp"

namespace rqt {

enum class OutputFormat { Csv, Json };

struct SweepAxis {
  std::string parameter;  // e.g. detector_b.coupling_strength, detector_b.position.x
  double start = 0.0;
  double stop = 0.0;
  int steps = 1;

  double value(int i) const {
    return steps == 1 ? start : start + (stop - start) * i / (steps - 1);
  }
};

struct RunConfig {
  TeleportConfig teleport;
  std::optional<SweepAxis> sweep;
  double epsilon = 0.05;
  double tolerance = 1e-10;
  OutputFormat format = OutputFormat::Csv;
  std::string output;
  /// Rescale Alice's coupling at every point so that E_AB equals this value.
  std::optional<double> target_e_ab;
  int one_shot_grid = 50;
  int oracle_draws = 100;
};

/// `key = value` per line, `#` starts a comment, vectors are `x,y,z` and
/// complex numbers `re` or `re,im`.  Throws ConfigError naming the line or key.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Sets one scalar detector parameter by its config key.
void set_parameter(TeleportConfig& cfg, const std::string& key, double value);
bool is_sweepable(const std::string& key);

}  // namespace rqt
