#pragma once

#include <complex>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

namespace rqt {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPositivityTol = 1e-10;
inline constexpr double kSupportTol = 1e-12;

/// Kronecker product; the left factor carries the slow index.
template <typename DA, typename DB>
Eigen::Matrix<typename DA::Scalar, Eigen::Dynamic, Eigen::Dynamic> kron(
    const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  Eigen::Matrix<typename DA::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(
      a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol = kHermitianTol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

/// Validated density operator: Hermitian, unit trace, positive semidefinite.
class DensityOperator {
 public:
  /// Throws std::invalid_argument if any invariant is violated.
  explicit DensityOperator(CMatrix m);

  static DensityOperator pure(const CVector& ket);
  static DensityOperator maximally_mixed(Index dim);
  /// Qubit state from a Bloch vector (|r| <= 1).
  static DensityOperator from_bloch(const Eigen::Vector3d& r);

  const CMatrix& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }

 private:
  CMatrix m_;
};

/// Normalised qubit ket alpha|0> + beta|1>.
class PureQubit {
 public:
  PureQubit(Complex alpha, Complex beta);

  /// Haar-random pure qubit.
  template <typename Rng>
  static PureQubit random(Rng& rng) {
    std::normal_distribution<double> g;
    Complex a{g(rng), g(rng)}, b{g(rng), g(rng)};
    double n = std::sqrt(std::norm(a) + std::norm(b));
    return PureQubit(a / n, b / n);
  }

  Complex alpha() const noexcept { return alpha_; }
  Complex beta() const noexcept { return beta_; }
  Eigen::Vector2cd ket() const { return {alpha_, beta_}; }
  DensityOperator density() const { return DensityOperator::pure(ket()); }

 private:
  Complex alpha_, beta_;
};

enum class Subsystem { A, B };

/// Partial trace of an operator on A (x) B; keeps `keep`.
CMatrix partial_trace(const CMatrix& rho, Subsystem keep, Index dim_a, Index dim_b);
DensityOperator partial_trace(const DensityOperator& rho, Subsystem keep, Index dim_a,
                              Index dim_b);

/// Partial transpose on the A factor of an operator on A (x) B.
CMatrix partial_transpose_a(const CMatrix& m, Index dim_a, Index dim_b);

struct HermitianEigen {
  Eigen::VectorXd values;  // descending
  CMatrix vectors;         // orthonormal columns, matching `values`
};

/// Eigendecomposition of a Hermitian matrix; eigenvalues in descending order.
/// Throws std::invalid_argument if `h` is not Hermitian within 1e-10.
HermitianEigen eig_hermitian(const CMatrix& h);

/// Eigenvalues only, descending.  2x2 input takes a closed-form path.
Eigen::VectorXd eigvals_hermitian(const CMatrix& h);

double trace_norm(const CMatrix& m);
inline double trace_distance(const CMatrix& a, const CMatrix& b) {
  return 0.5 * trace_norm(a - b);
}

/// <psi| rho |psi>.
double fidelity(const DensityOperator& rho, const PureQubit& psi);

/// Bits.  Inputs within 1e-12 outside [0,1] are clamped; further out throws.
double binary_entropy(double p);
double von_neumann_entropy(const DensityOperator& rho);
double von_neumann_entropy(const CMatrix& rho);
/// Bits; +infinity when supp(rho) is not contained in supp(sigma).
double relative_entropy(const DensityOperator& rho, const DensityOperator& sigma);

/// f(h) for Hermitian h via its spectral decomposition.
template <typename F>
CMatrix hermitian_function(const CMatrix& h, F&& f) {
  HermitianEigen e = eig_hermitian(h);
  Eigen::VectorXcd fv(e.values.size());
  for (Index i = 0; i < fv.size(); ++i) fv(i) = f(e.values(i));
  return e.vectors * fv.asDiagonal() * e.vectors.adjoint();
}

namespace pauli {
Eigen::Matrix2cd identity();
Eigen::Matrix2cd x();
Eigen::Matrix2cd y();
Eigen::Matrix2cd z();
}  // namespace pauli

/// Bloch vector of a 2x2 operator: r_k = tr(sigma_k m), real parts.
Eigen::Vector3d bloch_vector(const CMatrix& m);

/// Random density operator of dimension d (Ginibre ensemble, full rank a.s.).
template <typename Rng>
DensityOperator random_density(Index d, Rng& rng) {
  std::normal_distribution<double> g;
  CMatrix x(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) x(i, j) = Complex{g(rng), g(rng)};
  CMatrix r = x * x.adjoint();
  r /= r.trace().real();
  return DensityOperator(0.5 * (r + r.adjoint()));
}

template <typename Rng>
CMatrix random_hermitian(Index d, Rng& rng) {
  std::normal_distribution<double> g;
  CMatrix x(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) x(i, j) = Complex{g(rng), g(rng)};
  return 0.5 * (x + x.adjoint());
}

}  // namespace rqt
