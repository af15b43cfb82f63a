#pragma once

#include <stdexcept>
#include <string>

namespace rqt {

/// Raised when a numerical routine cannot meet its accuracy contract
/// (quadrature non-convergence, channel positivity violated beyond tolerance).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent run configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rqt
