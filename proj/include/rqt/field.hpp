#pragma once

#include <Eigen/Dense>

#include "rqt/quadrature.hpp"

namespace rqt {

enum class DetectorLabel { A, B };

/// One delta-coupled Unruh-DeWitt detector with a Gaussian spatial profile.
struct DetectorConfig {
  DetectorLabel label = DetectorLabel::A;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  double coupling_time = 0.0;
  double coupling_strength = 0.0;  // lambda >= 0
  double smearing_width = 1.0;     // sigma > 0
  double gap = 0.0;
  double monopole_phase = 0.0;

  /// Throws std::invalid_argument on a non-positive width or negative coupling.
  void validate() const;
};

/// The field numbers a two-detector channel depends on.
struct CorrelatorSet {
  double w_aa = 0.0;
  double w_bb = 0.0;
  double re_w_ab = 0.0;
  double e_ab = 0.0;
  double nu_b = 1.0;  // exp(-2 w_bb)

  static CorrelatorSet from_parts(double w_aa, double w_bb, double re_w_ab, double e_ab);
};

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

/// W(f, f) for the massless vacuum in flat 3+1 dimensions.
Estimate smeared_wightman_self_estimate(const DetectorConfig& d, const QuadratureOptions& q = {});
double smeared_wightman_self(const DetectorConfig& d, const QuadratureOptions& q = {});

/// E(f_a, f_b).  Requires a.label != b.label.  E(a, b) = -E(b, a).
Estimate smeared_causal_propagator_estimate(const DetectorConfig& a, const DetectorConfig& b,
                                            const QuadratureOptions& q = {});
double smeared_causal_propagator(const DetectorConfig& a, const DetectorConfig& b,
                                 const QuadratureOptions& q = {});

/// Re W(f_a, f_b); symmetric in its arguments.
Estimate smeared_wightman_cross_re_estimate(const DetectorConfig& a, const DetectorConfig& b,
                                            const QuadratureOptions& q = {});
double smeared_wightman_cross_re(const DetectorConfig& a, const DetectorConfig& b,
                                 const QuadratureOptions& q = {});

/// Detector a is Alice's, b is Bob's.
CorrelatorSet correlators(const DetectorConfig& a, const DetectorConfig& b,
                          const QuadratureOptions& q = {});

/// |dt| + 1e-12 < r - n (sigma_a + sigma_b).  Gaussian profiles have unbounded
/// support, so "spacelike" here means the overlap with the lightcone is
/// suppressed by at least n widths; the residual propagator is not exactly 0.
bool is_spacelike(const DetectorConfig& a, const DetectorConfig& b,
                  double support_radius_sigmas = 5.0);

/// <pi(f)^2> for the conjugate momentum smeared with the same profile.
Estimate momentum_variance_estimate(const DetectorConfig& d, const QuadratureOptions& q = {});
double momentum_variance(const DetectorConfig& d, const QuadratureOptions& q = {});

/// -i [phi(f), pi(f)] = lambda^2 * integral of F^2.
double equal_time_commutator(const DetectorConfig& d);

}  // namespace rqt
