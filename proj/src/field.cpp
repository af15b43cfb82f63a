#include "rqt/field.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rqt {

namespace {

constexpr double kPi = std::numbers::pi;
// exp(-46) ~ 1e-20: Gaussian weights are cut there.
constexpr double kCutExponent = 46.0;

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

// Enough initial pieces that each holds a few oscillations at most.
QuadratureOptions with_pieces(QuadratureOptions q, double kmax, double freq) {
  int n = static_cast<int>(std::ceil(kmax * freq / kPi)) + 1;
  q.initial_pieces = std::max(q.initial_pieces, std::min(n, q.max_intervals / 4));
  return q;
}

struct Geometry {
  double r, dt, s;
};

Geometry geometry(const DetectorConfig& a, const DetectorConfig& b) {
  return {(a.position - b.position).norm(), a.coupling_time - b.coupling_time,
          a.smearing_width * a.smearing_width + b.smearing_width * b.smearing_width};
}

// Integral over k of k^p exp(-sigma^2 k^2), p = 1 or 3, evaluated in u = sigma k.
Estimate self_kernel(double sigma, int p, const QuadratureOptions& q) {
  auto r = integrate([&](double u) { return std::pow(u, p) * std::exp(-u * u); }, 0.0,
                     std::sqrt(kCutExponent), q);
  const double scale = std::pow(sigma, -(p + 1));
  return {scale * r.value, scale * r.error};
}

// Integral over k of k sinc(k r) trig(k dt) exp(-s k^2 / 2), evaluated in u = sqrt(s) k.
template <typename Trig>
Estimate cross_kernel(const Geometry& g, Trig trig, const QuadratureOptions& q) {
  const double root = std::sqrt(g.s);
  const double r = g.r / root, dt = g.dt / root;
  const double umax = std::sqrt(2.0 * kCutExponent);
  auto res = integrate(
      [&](double u) { return u * sinc(u * r) * trig(u * dt) * std::exp(-0.5 * u * u); }, 0.0,
      umax, with_pieces(q, umax, r + std::abs(dt)));
  return {res.value / g.s, res.error / g.s};
}

}  // namespace

void DetectorConfig::validate() const {
  if (!(smearing_width > 0.0)) throw std::invalid_argument("smearing_width must be positive");
  if (!(coupling_strength >= 0.0))
    throw std::invalid_argument("coupling_strength must be non-negative");
  if (!position.allFinite() || !std::isfinite(coupling_time))
    throw std::invalid_argument("detector position and coupling time must be finite");
}

CorrelatorSet CorrelatorSet::from_parts(double w_aa, double w_bb, double re_w_ab, double e_ab) {
  return {w_aa, w_bb, re_w_ab, e_ab, std::exp(-2.0 * w_bb)};
}

Estimate smeared_wightman_self_estimate(const DetectorConfig& d, const QuadratureOptions& q) {
  d.validate();
  if (d.coupling_strength == 0.0) return {};
  Estimate e = self_kernel(d.smearing_width, 1, q);
  const double scale = d.coupling_strength * d.coupling_strength / (4.0 * kPi * kPi);
  return {scale * e.value, scale * e.error};
}

double smeared_wightman_self(const DetectorConfig& d, const QuadratureOptions& q) {
  return smeared_wightman_self_estimate(d, q).value;
}

Estimate smeared_causal_propagator_estimate(const DetectorConfig& a, const DetectorConfig& b,
                                            const QuadratureOptions& q) {
  if (a.label == b.label)
    throw std::invalid_argument("smeared_causal_propagator: detectors must have distinct labels");
  a.validate();
  b.validate();
  const double lam = a.coupling_strength * b.coupling_strength;
  if (lam == 0.0) return {};
  // Canonical argument order so that swapping a and b negates bit-for-bit.
  if (a.label == DetectorLabel::B) {
    Estimate e = smeared_causal_propagator_estimate(b, a, q);
    return {-e.value, e.error};
  }
  const Geometry g = geometry(a, b);
  if (g.dt == 0.0) return {};
  Estimate r = cross_kernel(g, [](double x) { return std::sin(x); }, q);
  const double scale = -lam / (2.0 * kPi * kPi);
  return {scale * r.value, std::abs(scale) * r.error};
}

double smeared_causal_propagator(const DetectorConfig& a, const DetectorConfig& b,
                                 const QuadratureOptions& q) {
  return smeared_causal_propagator_estimate(a, b, q).value;
}

Estimate smeared_wightman_cross_re_estimate(const DetectorConfig& a, const DetectorConfig& b,
                                            const QuadratureOptions& q) {
  a.validate();
  b.validate();
  const double lam = a.coupling_strength * b.coupling_strength;
  if (lam == 0.0) return {};
  const Geometry g = geometry(a, b);
  Estimate r = cross_kernel(g, [](double x) { return std::cos(x); }, q);
  const double scale = lam / (4.0 * kPi * kPi);
  return {scale * r.value, scale * r.error};
}

double smeared_wightman_cross_re(const DetectorConfig& a, const DetectorConfig& b,
                                 const QuadratureOptions& q) {
  return smeared_wightman_cross_re_estimate(a, b, q).value;
}

CorrelatorSet correlators(const DetectorConfig& a, const DetectorConfig& b,
                          const QuadratureOptions& q) {
  return CorrelatorSet::from_parts(smeared_wightman_self(a, q), smeared_wightman_self(b, q),
                                   smeared_wightman_cross_re(a, b, q),
                                   smeared_causal_propagator(a, b, q));
}

bool is_spacelike(const DetectorConfig& a, const DetectorConfig& b,
                  double support_radius_sigmas) {
  const Geometry g = geometry(a, b);
  return std::abs(g.dt) + 1e-12 <
         g.r - support_radius_sigmas * (a.smearing_width + b.smearing_width);
}

Estimate momentum_variance_estimate(const DetectorConfig& d, const QuadratureOptions& q) {
  d.validate();
  if (d.coupling_strength == 0.0) return {};
  Estimate e = self_kernel(d.smearing_width, 3, q);
  const double scale = d.coupling_strength * d.coupling_strength / (4.0 * kPi * kPi);
  return {scale * e.value, scale * e.error};
}

double momentum_variance(const DetectorConfig& d, const QuadratureOptions& q) {
  return momentum_variance_estimate(d, q).value;
}

double equal_time_commutator(const DetectorConfig& d) {
  const double s2 = d.smearing_width * d.smearing_width;
  return d.coupling_strength * d.coupling_strength * std::pow(4.0 * kPi * s2, -1.5);
}

}  // namespace rqt
