#include "rqt/teleport.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rqt {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_label(int m) {
  if (m < 0 || m > 3) throw std::invalid_argument("message label must be 0..3");
}

Eigen::Vector4cd ket4(Complex c00, Complex c01, Complex c10, Complex c11) {
  return Eigen::Vector4cd(c00, c01, c10, c11) / std::sqrt(2.0);
}

}  // namespace

std::string message_label(int m) {
  check_label(m);
  return std::string{static_cast<char>('0' + (m >> 1)), static_cast<char>('0' + (m & 1))};
}

std::array<BellOutcome, 4> bell_decompose(const PureQubit& in) {
  const Complex a = in.alpha(), b = in.beta();
  const Eigen::Vector4cd bell[4] = {ket4(1, 0, 0, 1), ket4(1, 0, 0, -1), ket4(0, 1, 1, 0),
                                    ket4(0, 1, -1, 0)};
  const PureQubit zeta[4] = {PureQubit(a, b), PureQubit(a, -b), PureQubit(b, a), PureQubit(b, -a)};
  std::array<BellOutcome, 4> out{BellOutcome{0, bell[0] * bell[0].adjoint(), zeta[0]},
                                 BellOutcome{1, bell[1] * bell[1].adjoint(), zeta[1]},
                                 BellOutcome{2, bell[2] * bell[2].adjoint(), zeta[2]},
                                 BellOutcome{3, bell[3] * bell[3].adjoint(), zeta[3]}};
  return out;
}

Eigen::Matrix2cd correction_unitary(int m) {
  check_label(m);
  const Eigen::Matrix2cd u[4] = {pauli::identity(), pauli::z(), pauli::x(), pauli::y()};
  return u[m];
}

std::string to_string(Scheme s) {
  return s == Scheme::TwoBinaryUses ? "two_binary_uses" : "variant_four_message";
}

std::string to_string(CausalStatus s) {
  switch (s) {
    case CausalStatus::Timelike: return "timelike";
    case CausalStatus::Spacelike: return "spacelike";
    case CausalStatus::Marginal: return "marginal";
  }
  return "marginal";
}

DensityOperator bit_state(int bit, double monopole_phase) {
  const double sign = bit == 0 ? 1.0 : -1.0;
  return DensityOperator::pure(
      Eigen::Vector2cd(1.0, sign * std::exp(kI * monopole_phase)) / std::sqrt(2.0));
}

EncodingPlan encode_message(int m, Scheme scheme, double monopole_phase) {
  check_label(m);
  EncodingPlan plan{scheme, {}, static_cast<VariantId>(m)};
  if (scheme == Scheme::TwoBinaryUses) {
    plan.inputs.push_back(bit_state(m >> 1, monopole_phase));
    plan.inputs.push_back(bit_state(m & 1, monopole_phase));
  }
  return plan;
}

HelstromResult helstrom_decode(const ChannelModel& ch, const DensityOperator& rho0,
                               const DensityOperator& rho1) {
  const CMatrix diff = rqt::apply(ch, rho0).matrix() - rqt::apply(ch, rho1).matrix();
  const CMatrix herm = 0.5 * (diff + diff.adjoint());
  HermitianEigen es = eig_hermitian(herm);
  CMatrix e0 = CMatrix::Zero(2, 2);
  for (Index j = 0; j < es.values.size(); ++j)
    if (es.values(j) > 0.0) e0 += es.vectors.col(j) * es.vectors.col(j).adjoint();
  HelstromResult r;
  r.povm = {e0, CMatrix(CMatrix::Identity(2, 2) - e0)};
  r.p_success = 0.5 + 0.25 * trace_norm(herm);
  return r;
}

CausalStatus causality_guard(const DetectorConfig& a, const DetectorConfig& b) {
  if (is_spacelike(a, b)) return CausalStatus::Spacelike;
  const double r = (a.position - b.position).norm();
  const double dt = std::abs(a.coupling_time - b.coupling_time);
  if (dt > r + a.smearing_width + b.smearing_width) return CausalStatus::Timelike;
  return CausalStatus::Marginal;
}

TeleportReport run_teleport(const TeleportConfig& cfg) {
  cfg.a.validate();
  cfg.b.validate();
  if (cfg.rho_b0.dim() != 2) throw std::invalid_argument("run_teleport: qubit detector expected");

  TeleportReport rep;
  rep.causal_status = causality_guard(cfg.a, cfg.b);
  rep.corr = correlators(cfg.a, cfg.b, cfg.quadrature);
  rep.capacity_closed_form = classical_capacity_closed_form(rep.corr);

  if (cfg.noiseless_side_channel) {
    rep.confusion.setIdentity();
    rep.p_success = 1.0;
    rep.holevo = 1.0;
  } else if (cfg.scheme == Scheme::TwoBinaryUses) {
    const ChannelModel ch = build_channel(cfg.a, cfg.b, cfg.rho_b0, rep.corr);
    const DensityOperator in[2] = {bit_state(0, cfg.a.monopole_phase),
                                   bit_state(1, cfg.a.monopole_phase)};
    const HelstromResult h = helstrom_decode(ch, in[0], in[1]);
    Eigen::Matrix2d bit;  // P(b' | b)
    for (int b = 0; b < 2; ++b) {
      const CMatrix out = rqt::apply(ch, in[b]).matrix();
      for (int g = 0; g < 2; ++g) bit(b, g) = (h.povm[g] * out).trace().real();
    }
    for (int m = 0; m < 4; ++m)
      for (int g = 0; g < 4; ++g) rep.confusion(m, g) = bit(m >> 1, g >> 1) * bit(m & 1, g & 1);
    rep.p_success = h.p_success;
    rep.holevo = holevo_numeric(ch).chi;
  } else {
    // One use of Phi_m on Bob's fiducial state, decoded by the square-root measurement.
    std::vector<CMatrix> outs;
    for (int m = 0; m < 4; ++m) {
      const VariantId id = static_cast<VariantId>(m);
      const ChannelModel ch =
          build_variant_channel(id, rep.corr, variant_nu(id, cfg.b, cfg.quadrature));
      outs.push_back(rqt::apply(ch, cfg.rho_b0).matrix());
    }
    CMatrix avg = CMatrix::Zero(2, 2);
    for (const auto& o : outs) avg += 0.25 * o;
    const CMatrix inv_sqrt = hermitian_function(
        avg, [](double x) { return x > kSupportTol ? 1.0 / std::sqrt(x) : 0.0; });
    const CMatrix support = hermitian_function(
        avg, [](double x) { return x > kSupportTol ? 1.0 : 0.0; });
    std::array<CMatrix, 4> povm;
    for (int m = 0; m < 4; ++m) povm[m] = inv_sqrt * (0.25 * outs[m]) * inv_sqrt;
    povm[0] += CMatrix::Identity(2, 2) - support;
    double success = 0.0;
    for (int m = 0; m < 4; ++m) {
      for (int g = 0; g < 4; ++g) rep.confusion(m, g) = (povm[g] * outs[m]).trace().real();
      success += 0.25 * rep.confusion(m, m);
    }
    rep.p_success = success;
    rep.holevo = holevo_quantity({0.25, 0.25, 0.25, 0.25}, outs);
  }

  const auto outcomes = bell_decompose(cfg.input);
  const Eigen::Vector2cd target = outcomes[0].conditional_state.ket();
  for (int m = 0; m < 4; ++m)
    for (int g = 0; g < 4; ++g) {
      const Eigen::Vector2cd v = correction_unitary(g) * outcomes[m].conditional_state.ket();
      rep.per_outcome_fidelity(m, g) = std::norm(target.dot(v));
    }
  rep.average_fidelity = 0.0;
  rep.haar_average_fidelity = 0.0;
  for (int m = 0; m < 4; ++m)
    for (int g = 0; g < 4; ++g) {
      rep.average_fidelity += 0.25 * rep.confusion(m, g) * rep.per_outcome_fidelity(m, g);
      rep.haar_average_fidelity += 0.25 * rep.confusion(m, g) * (m == g ? 1.0 : 1.0 / 3.0);
    }

  const CMatrix half = 0.5 * CMatrix::Identity(2, 2);
  rep.bob_mixedness = 0.0;
  for (int g = 0; g < 4; ++g) {
    const double p_guess = 0.25 * rep.confusion.col(g).sum();
    CMatrix st = CMatrix::Zero(2, 2);
    if (p_guess > 0.0) {
      for (int m = 0; m < 4; ++m) {
        const Eigen::Vector2cd z = outcomes[m].conditional_state.ket();
        st += (0.25 * rep.confusion(m, g) / p_guess) * (z * z.adjoint());
      }
      rep.bob_mixedness = std::max(rep.bob_mixedness, trace_distance(st, half));
    }
    rep.bob_conditional_states[g] = st;
  }
  return rep;
}

}  // namespace rqt
