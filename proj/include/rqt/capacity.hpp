#pragma once

#include <cstdint>
#include <vector>

#include "rqt/channel.hpp"
#include "rqt/field.hpp"
#include "rqt/qmath.hpp"

namespace rqt {

struct Ensemble {
  std::vector<DensityOperator> states;
  std::vector<double> probs;
};

/// Classical-quantum state sum_m p(m) |m><m| (x) rho_m, kept block-diagonal.
struct CqState {
  std::vector<double> probs;
  std::vector<DensityOperator> cond_states;
};

/// H(1/2 + nu |cos 2E| / 2) - H(1/2 + nu / 2), in bits.
double classical_capacity_closed_form(const CorrelatorSet& corr);

struct HolevoOptions {
  int max_states = 4;
  int starts = 32;
  std::uint64_t seed = 7;
  double min_step = 1e-8;
};

struct HolevoResult {
  double chi = 0.0;
  Ensemble argmax;
};

/// Product-state capacity chi(Phi), maximised over ensembles of up to
/// max_states pure inputs by multi-start coordinate ascent on the Bloch sphere.
HolevoResult holevo_numeric(const ChannelModel& ch, const HolevoOptions& opts = {});
/// Holevo quantity of a fixed ensemble of output states.
double holevo_quantity(const std::vector<double>& probs, const std::vector<CMatrix>& states);

/// D_H^eps(rho || sigma) in bits: -log2 of the least tr(Q sigma) over tests
/// 0 <= Q <= I with tr(Q rho) >= 1 - eps.  +infinity when a test with
/// tr(Q sigma) = 0 exists.
double hypothesis_testing_re(const DensityOperator& rho, const DensityOperator& sigma, double eps);
double hypothesis_testing_re(const CMatrix& rho, const CMatrix& sigma, double eps);
/// Same for block-diagonal rho = (+) rho_k and sigma = (+) sigma_k.
double hypothesis_testing_re_blocks(const std::vector<CMatrix>& rho,
                                    const std::vector<CMatrix>& sigma, double eps);

/// D_H^eps(pi^{AB} || pi^A (x) pi^B) for the cq state.
double cq_hypothesis_testing_re(const CqState& cq, double eps);

struct OneShotBounds {
  double c_min, c_max;
  std::vector<double> argmax_min, argmax_max;
};

/// sup over message distributions of D_H^{eps/2} - log2(1/eps) - 4 and of
/// D_H^eps, on a simplex grid of step 1/grid refined around the best point.
OneShotBounds one_shot_bounds(const std::vector<DensityOperator>& cond_states, double eps,
                              int grid = 50);

struct SteinPoint {
  int n;
  double value;     // D_H^eps(rho^n || sigma^n) / n
  double relative;  // D(rho || sigma)
};

/// Tensor powers are built explicitly; total dimension is capped at 4096.
std::vector<SteinPoint> stein_convergence(const DensityOperator& rho, const DensityOperator& sigma,
                                          double eps, const std::vector<int>& n_list);

}  // namespace rqt
