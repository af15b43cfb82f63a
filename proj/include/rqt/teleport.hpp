#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "rqt/capacity.hpp"
#include "rqt/channel.hpp"
#include "rqt/field.hpp"
#include "rqt/qmath.hpp"

namespace rqt {

/// Message labels 00, 01, 10, 11 as integers 0..3 (first bit is the high bit).
/// Bell states: 00 = Phi+, 01 = Phi-, 10 = Psi+, 11 = Psi-.
std::string message_label(int m);

struct BellOutcome {
  int label;
  CMatrix bell_state;  // 4x4 projector on (input, Alice's half)
  PureQubit conditional_state;
};

/// Bell-basis decomposition of |zeta_00> (x) |Phi+>: Bob holds zeta_m after outcome m.
std::array<BellOutcome, 4> bell_decompose(const PureQubit& input);

/// I, sigma_z, sigma_x, sigma_y for 00, 01, 10, 11.
Eigen::Matrix2cd correction_unitary(int m);

enum class Scheme { TwoBinaryUses, VariantFourMessage };
enum class CausalStatus { Timelike, Spacelike, Marginal };

std::string to_string(Scheme s);
std::string to_string(CausalStatus s);

struct EncodingPlan {
  Scheme scheme;
  /// two_binary_uses: detector-A input for each use (first bit first).
  std::vector<DensityOperator> inputs;
  /// variant_four_message: the coupling used for the single use.
  VariantId variant;
};

/// Bit 0 -> +1 eigenstate of mu_A, bit 1 -> -1 eigenstate.
EncodingPlan encode_message(int m, Scheme scheme, double monopole_phase = 0.0);
DensityOperator bit_state(int bit, double monopole_phase);

struct HelstromResult {
  std::array<CMatrix, 2> povm;
  double p_success;
};

/// Minimum-error POVM for Phi(rho0) vs Phi(rho1) with equal priors.
HelstromResult helstrom_decode(const ChannelModel& ch, const DensityOperator& rho0,
                               const DensityOperator& rho1);

struct TeleportConfig {
  PureQubit input{1.0, 0.0};
  DetectorConfig a;
  DetectorConfig b{DetectorLabel::B};
  DensityOperator rho_b0 = DensityOperator::pure(CVector::Unit(2, 0));
  Scheme scheme = Scheme::TwoBinaryUses;
  std::uint64_t seed = 0;
  /// Replace the field channel with a perfect classical link.
  bool noiseless_side_channel = false;
  QuadratureOptions quadrature;
};

struct TeleportReport {
  Eigen::Matrix4d confusion;             // P(m' | m), row m
  Eigen::Matrix4d per_outcome_fidelity;  // |<zeta_00| U_m' |zeta_m>|^2
  double average_fidelity = 0.0;
  double haar_average_fidelity = 0.0;
  double capacity_closed_form = 0.0;
  double holevo = 0.0;
  double p_success = 0.0;  // per binary use, or mean over messages for the variant scheme
  CausalStatus causal_status = CausalStatus::Marginal;
  CorrelatorSet corr;
  /// Bob's uncorrected qubit given his decoded message m'.
  std::array<CMatrix, 4> bob_conditional_states;
  /// Largest trace distance of bob_conditional_states to I/2.
  double bob_mixedness = 0.0;
};

TeleportReport run_teleport(const TeleportConfig& cfg);

/// Spacelike per is_spacelike; timelike when |dt| > r + sigma_A + sigma_B.
CausalStatus causality_guard(const DetectorConfig& a, const DetectorConfig& b);

}  // namespace rqt
