#pragma once

#include <functional>

namespace rqt {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  int max_intervals = 4000;
  int initial_pieces = 8;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // sum of per-interval |K15 - G7|
  int evaluations = 0;
  int intervals = 0;
};

/// Adaptive Gauss-Kronrod (7/15) integration of f over [a, b].
/// Bisects the interval with the largest error estimate until the total
/// estimate is below opts.abs_tol.  Throws NumericError when the interval cap
/// is reached first.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opts = {});

}  // namespace rqt
