#include "rqt/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "rqt/errors.hpp"
#include "rqt/weyl.hpp"

namespace rqt {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kChoiTol = 1e-10;

}  // namespace

ChannelModel ChannelModel::from_choi(const CMatrix& choi, std::optional<ChannelMeta> meta) {
  if (choi.rows() != 4 || choi.cols() != 4)
    throw std::invalid_argument("from_choi: qubit channel needs a 4x4 Choi matrix");
  if (!is_hermitian(choi, kChoiTol)) throw NumericError("Choi matrix is not Hermitian");
  const CMatrix j = 0.5 * (choi + choi.adjoint());
  const CMatrix tp = partial_trace(j, Subsystem::A, 2, 2);
  if ((tp - CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() > kChoiTol)
    throw NumericError("channel is not trace preserving");

  HermitianEigen es = eig_hermitian(j);
  if (es.values.minCoeff() < -kChoiTol)
    throw NumericError("channel is not completely positive: Choi eigenvalue " +
                       std::to_string(es.values.minCoeff()));
  ChannelModel ch;
  ch.choi_ = j;
  ch.meta_ = std::move(meta);
  CMatrix sum = CMatrix::Zero(2, 2);
  for (Index k = 0; k < es.values.size(); ++k) {
    if (es.values(k) <= 0.0) continue;
    CMatrix kr(2, 2);
    const double s = std::sqrt(es.values(k));
    for (Index in = 0; in < 2; ++in)
      for (Index o = 0; o < 2; ++o) kr(o, in) = s * es.vectors(2 * in + o, k);
    sum += kr.adjoint() * kr;
    ch.kraus_.push_back(kr);
  }
  // Clipping can leave sum K^dag K a hair away from I.
  const CMatrix fix =
      hermitian_function(0.5 * (sum + sum.adjoint()), [](double x) { return 1.0 / std::sqrt(x); });
  for (auto& kr : ch.kraus_) kr = kr * fix;
  return ch;
}

ChannelModel ChannelModel::identity() {
  return from_map([](const CMatrix& m) { return m; });
}

ChannelModel ChannelModel::replacement(const DensityOperator& out) {
  if (out.dim() != 2) throw std::invalid_argument("replacement: qubit output expected");
  return from_map([&](const CMatrix& m) -> CMatrix { return m.trace() * out.matrix(); });
}

Eigen::Matrix2cd monopole(double phase) {
  Eigen::Matrix2cd m;
  m << 0, std::exp(-kI * phase), std::exp(kI * phase), 0;
  return m;
}

ChannelModel build_channel(const DetectorConfig& a, const DetectorConfig& b,
                           const DensityOperator& rho_b0, const CorrelatorSet& corr) {
  if (a.coupling_time > b.coupling_time)
    throw std::invalid_argument("build_channel: Alice's coupling must not come after Bob's");
  if (rho_b0.dim() != 2) throw std::invalid_argument("build_channel: qubit detector state expected");

  const Eigen::Matrix2cd mu_a = monopole(a.monopole_phase), mu_b = monopole(b.monopole_phase);
  const TrigKind kinds[2] = {TrigKind::Cos, TrigKind::Sin};
  // exp(-i mu phi) = cos(phi) - i mu sin(phi)
  const Complex unitary_coeff[2] = {1.0, -kI};
  const Eigen::Matrix2cd ops_a[2] = {Eigen::Matrix2cd::Identity(), mu_a};
  const Eigen::Matrix2cd ops_b[2] = {Eigen::Matrix2cd::Identity(), mu_b};

  // Field factor omega(X_A^x' X_B^y' X_B^y X_A^x) for the U^dag ... U sandwich.
  Complex field[2][2][2][2];
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int xp = 0; xp < 2; ++xp)
        for (int yp = 0; yp < 2; ++yp) {
          const TrigFactor f[4] = {{DetectorLabel::A, kinds[xp]},
                                   {DetectorLabel::B, kinds[yp]},
                                   {DetectorLabel::B, kinds[y]},
                                   {DetectorLabel::A, kinds[x]}};
          field[x][y][xp][yp] = expectation_of_trig_product(f, corr);
        }

  auto phi = [&](const CMatrix& rho_a) -> CMatrix {
    CMatrix out = CMatrix::Zero(2, 2);
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        for (int xp = 0; xp < 2; ++xp)
          for (int yp = 0; yp < 2; ++yp) {
            const Complex c = unitary_coeff[x] * unitary_coeff[y] *
                              std::conj(unitary_coeff[xp]) * std::conj(unitary_coeff[yp]);
            const Complex alice = (ops_a[xp] * ops_a[x] * rho_a).trace();
            out += c * alice * field[x][y][xp][yp] * ops_b[y] * rho_b0.matrix() * ops_b[yp];
          }
    return out;
  };
  return ChannelModel::from_map(phi, ChannelMeta{corr, a, b});
}

ClosedFormCoefficients closed_form_coefficients(const CorrelatorSet& corr) {
  const double c = corr.nu_b * std::cos(2.0 * corr.e_ab);
  return {0.5 * (1.0 + c), 0.5 * (1.0 - c), 0.5 * corr.nu_b * std::sin(2.0 * corr.e_ab)};
}

CMatrix apply(const ChannelModel& ch, const CMatrix& m) {
  CMatrix out = CMatrix::Zero(2, 2);
  for (const auto& k : ch.kraus()) out += k * m * k.adjoint();
  return out;
}

DensityOperator apply(const ChannelModel& ch, const DensityOperator& rho) {
  CMatrix out = apply(ch, rho.matrix());
  return DensityOperator(0.5 * (out + out.adjoint()));
}

CMatrix apply_choi(const ChannelModel& ch, const CMatrix& m) {
  CMatrix out = CMatrix::Zero(2, 2);
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 2; ++j) out += m(i, j) * ch.choi().block(2 * i, 2 * j, 2, 2);
  return out;
}

double choi_partial_transpose_min_eigenvalue(const ChannelModel& ch) {
  return eigvals_hermitian(partial_transpose_a(ch.choi(), 2, 2)).minCoeff();
}

bool is_entanglement_breaking(const ChannelModel& ch) {
  return choi_partial_transpose_min_eigenvalue(ch) >= -kChoiTol;
}

Eigen::Matrix2cd variant_coupling(VariantId m) {
  switch (m) {
    case VariantId::M00: return pauli::identity();
    case VariantId::M01: return pauli::z();
    case VariantId::M10: return pauli::x();
    case VariantId::M11: return pauli::y();
  }
  throw std::invalid_argument("variant_coupling: bad message label");
}

ChannelModel build_variant_channel(VariantId m, const CorrelatorSet& corr, double variant_nu) {
  if (!(variant_nu > 0.0 && variant_nu <= 1.0))
    throw std::invalid_argument("build_variant_channel: nu must lie in (0, 1]");
  const Eigen::Matrix2cd mu = variant_coupling(m);
  const double c = variant_nu * std::cos(2.0 * corr.e_ab);
  const double p_plus = 0.5 * (1.0 + c), p_minus = 0.5 * (1.0 - c);
  const Complex comm = 0.5 * kI * variant_nu * std::sin(2.0 * corr.e_ab);
  return ChannelModel::from_map([&](const CMatrix& rho) -> CMatrix {
    return p_plus * rho + p_minus * mu * rho * mu + comm * (mu * rho - rho * mu);
  });
}

ChannelModel build_variant_channel(VariantId m, const DetectorConfig& a, const DetectorConfig& b,
                                   const DensityOperator& rho_b0, double variant_nu) {
  if (rho_b0.dim() != 2)
    throw std::invalid_argument("build_variant_channel: qubit detector state expected");
  const CorrelatorSet corr = correlators(a, b);
  ChannelModel base = build_variant_channel(m, corr, variant_nu);
  return ChannelModel::from_choi(base.choi(), ChannelMeta{corr, a, b});
}

VariantNu variant_nu_momentum(const DetectorConfig& b, VariantId which,
                              const QuadratureOptions& q) {
  const double theta = 0.5 * equal_time_commutator(b);
  if (which == VariantId::M10) return {std::exp(-0.5 * momentum_variance(b, q)), 0.0};
  if (which == VariantId::M11)
    return {std::exp(-0.5 * (smeared_wightman_self(b, q) + momentum_variance(b, q))), theta};
  throw std::invalid_argument("variant_nu_momentum: only messages 10 and 11 use the momentum");
}

double variant_nu(VariantId m, const DetectorConfig& b, const QuadratureOptions& q) {
  switch (m) {
    case VariantId::M00: return 1.0;
    case VariantId::M01: return std::exp(-0.5 * smeared_wightman_self(b, q));
    default: return variant_nu_momentum(b, m, q).nu;
  }
}

}  // namespace rqt
