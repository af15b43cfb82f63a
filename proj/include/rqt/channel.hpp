#pragma once

#include <optional>
#include <vector>

#include "rqt/field.hpp"
#include "rqt/qmath.hpp"

namespace rqt {

struct ChannelMeta {
  CorrelatorSet corr;
  DetectorConfig a, b;
};

/// Qubit CPTP map.  The Choi matrix J = sum_ij |i><j| (x) Phi(|i><j|) (input
/// index slow, trace 2) is the primary form; Kraus operators are cached.
class ChannelModel {
 public:
  /// Validates trace preservation and positivity.  Eigenvalues of J down to
  /// -1e-10 are clipped; anything more negative throws NumericError.
  static ChannelModel from_choi(const CMatrix& choi, std::optional<ChannelMeta> meta = {});
  /// Choi matrix of the linear map given on matrix units.
  template <typename Map>
  static ChannelModel from_map(Map&& phi, std::optional<ChannelMeta> meta = {}) {
    CMatrix j = CMatrix::Zero(4, 4);
    for (Index r = 0; r < 2; ++r)
      for (Index c = 0; c < 2; ++c) {
        CMatrix unit = CMatrix::Zero(2, 2);
        unit(r, c) = 1.0;
        j.block(2 * r, 2 * c, 2, 2) = phi(unit);
      }
    return from_choi(j, std::move(meta));
  }
  static ChannelModel identity();
  static ChannelModel replacement(const DensityOperator& out);

  const CMatrix& choi() const noexcept { return choi_; }
  const std::vector<CMatrix>& kraus() const noexcept { return kraus_; }
  const std::optional<ChannelMeta>& meta() const noexcept { return meta_; }

 private:
  ChannelModel() = default;
  CMatrix choi_;
  std::vector<CMatrix> kraus_;
  std::optional<ChannelMeta> meta_;
};

/// Monopole moment [[0, e^{-i theta}], [e^{i theta}, 0]] in the (|g>, |e>) basis.
Eigen::Matrix2cd monopole(double phase);

/// Bob's detector output as a function of Alice's detector input after
/// U = U_B U_A, tracing out Alice and the field.  Every field factor is a
/// quasifree expectation of a trig-operator product.
ChannelModel build_channel(const DetectorConfig& a, const DetectorConfig& b,
                           const DensityOperator& rho_b0, const CorrelatorSet& corr);

struct ClosedFormCoefficients {
  double p_plus, p_minus, commutator_coeff;
};
ClosedFormCoefficients closed_form_coefficients(const CorrelatorSet& corr);

DensityOperator apply(const ChannelModel& ch, const DensityOperator& rho);
/// Kraus action on an arbitrary 2x2 operator.
CMatrix apply(const ChannelModel& ch, const CMatrix& m);
/// Action through the Choi matrix: Phi(m) = sum_ij m_ij J_ij.
CMatrix apply_choi(const ChannelModel& ch, const CMatrix& m);

double choi_partial_transpose_min_eigenvalue(const ChannelModel& ch);
bool is_entanglement_breaking(const ChannelModel& ch);

enum class VariantId { M00, M01, M10, M11 };

/// Coupling operator for message m: I, sigma_z, sigma_x, sigma_y.
Eigen::Matrix2cd variant_coupling(VariantId m);

/// rho -> p+ rho + p- mu rho mu + (i/2) nu sin(2E) [mu, rho] with
/// p+- = (1 +- nu cos 2E) / 2 and mu the coupling for m.
ChannelModel build_variant_channel(VariantId m, const DetectorConfig& a, const DetectorConfig& b,
                                   const DensityOperator& rho_b0, double variant_nu);
ChannelModel build_variant_channel(VariantId m, const CorrelatorSet& corr, double variant_nu);

struct VariantNu {
  double nu;     // |omega(exp(i O_m(f)))|
  double theta;  // constant BCH phase, irrelevant for distinguishability
};

/// m = 10 (momentum) or 11 (field plus momentum) for Bob's detector.
VariantNu variant_nu_momentum(const DetectorConfig& b, VariantId which,
                              const QuadratureOptions& q = {});

/// nu^m for all four messages: 1, exp(-W/2), then variant_nu_momentum.
double variant_nu(VariantId m, const DetectorConfig& b, const QuadratureOptions& q = {});

}  // namespace rqt
