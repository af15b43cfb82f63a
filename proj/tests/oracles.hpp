#pragma once

// Independent reference computations used only by the tests.  None of these
// call the quadrature, channel or capacity code under test.

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

/// W(f, f) for lambda = 1: Cartesian momentum grid (octant midpoint rule,
/// box 8/sigma, N = n, 2n, 4n per axis) with two Richardson steps.
double wightman_self_grid(double sigma, int n = 100);
/// <pi(f)^2> for lambda = 1, same grid scheme with weight |k| / 2.
double momentum_variance_grid(double sigma, int n = 100);

struct ModeSum {
  double re_w, e;
};
/// Re W(f_A, f_B) and E(f_A, f_B) for unit couplings by summing plane waves:
/// radial Simpson grid in |k| times Gauss-Legendre in the direction cosine.
ModeSum mode_sum(double r, double dt_ab, double sigma_a, double sigma_b, int nk = 20000,
                 int nu = 256);

/// Closed forms for Gaussian profiles.
double wightman_self_exact(double sigma);
double causal_propagator_exact(double r, double dt_ab, double s);

/// Classical Neyman-Pearson: minimal sum(q over test) with sum(p over test) >= 1 - eps.
double classical_dh(const std::vector<double>& p, const std::vector<double>& q, double eps);

/// Dual form max_mu mu (1 - eps) - tr(mu rho - sigma)_+, dense grid in log mu
/// plus golden-section refinement.
double dual_dh(const CMatrix& rho, const CMatrix& sigma, double eps);

/// Best projective two-outcome measurement found by a Bloch-sphere grid with
/// local refinement: max_n 1/2 + tr(P_n (rho0 - rho1)) / 2.
double helstrom_grid(const CMatrix& rho0, const CMatrix& rho1);

/// Bob's reduced state after U_B U_A acting on rho_a (x) rho_b (x) |0><0|, in a
/// single-mode Fock space of dimension `dim` with phi_j = c_j x + d_j p.
struct FockField {
  double ca, da, cb, db;  // phi_A = ca x + da p, phi_B = cb x + db p
  int dim = 80;
  double w_aa() const { return 0.5 * (ca * ca + da * da); }
  double w_bb() const { return 0.5 * (cb * cb + db * db); }
  double re_w_ab() const { return 0.5 * (ca * cb + da * db); }
  double e_ab() const { return ca * db - da * cb; }
};
CMatrix fock_bob_output(const FockField& f, const CMatrix& mu_a, const CMatrix& mu_b,
                        const CMatrix& rho_a, const CMatrix& rho_b);

/// <0| W(u) W(v) |0> and <0| W(u+v) |0> in the truncated Fock space, where
/// W(g) = exp(i (g_a phi_A + g_b phi_B)).  `tail` receives the population in
/// the top 10 levels of W(v)|0>.
struct FockWeyl {
  Complex product, combined;
  double tail;
};
FockWeyl fock_weyl_pair(const FockField& f, double ua, double ub, double va, double vb);

/// Haar average over pure inputs of sum_m 1/4 sum_m' P(m'|m) |<z00|U_m' z_m>|^2.
double haar_fidelity_monte_carlo(const Eigen::Matrix4d& confusion, int samples, std::uint64_t seed);

}  // namespace oracle
