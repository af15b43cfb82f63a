#include "rqt/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace rqt {

namespace {

void require_density(const CMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw std::invalid_argument("density operator must be a non-empty square matrix");
  if (!is_hermitian(m, kTraceTol))
    throw std::invalid_argument("density operator is not Hermitian");
  if (std::abs(m.trace() - Complex{1.0, 0.0}) > kTraceTol)
    throw std::invalid_argument("density operator trace is not 1");
  double lmin = eigvals_hermitian(m).minCoeff();
  if (lmin < -kPositivityTol)
    throw std::invalid_argument("density operator has eigenvalue " + std::to_string(lmin));
}

// Closed-form eigensystem of a 2x2 Hermitian matrix, descending.
HermitianEigen eig2(const CMatrix& h) {
  const double a = h(0, 0).real(), d = h(1, 1).real();
  const Complex b = h(0, 1);
  const double mean = 0.5 * (a + d);
  const double rad = std::hypot(0.5 * (a - d), std::abs(b));
  HermitianEigen out;
  out.values = Eigen::Vector2d(mean + rad, mean - rad);
  out.vectors.resize(2, 2);
  if (std::abs(b) <= std::numeric_limits<double>::min() * 16) {
    if (a >= d) {
      out.vectors << 1, 0, 0, 1;
    } else {
      out.vectors << 0, 1, 1, 0;
    }
    return out;
  }
  const double l1 = mean + rad;
  // Two algebraically equivalent eigenvectors; keep the better-conditioned one.
  Eigen::Vector2cd u(b, l1 - a);
  Eigen::Vector2cd w(l1 - d, std::conj(b));
  Eigen::Vector2cd v = u.norm() >= w.norm() ? u : w;
  v.normalize();
  out.vectors.col(0) = v;
  out.vectors.col(1) = Eigen::Vector2cd(-std::conj(v(1)), std::conj(v(0)));
  return out;
}

}  // namespace

DensityOperator::DensityOperator(CMatrix m) {
  require_density(m);
  m_ = 0.5 * (m + m.adjoint());
}

DensityOperator DensityOperator::pure(const CVector& ket) {
  CVector k = ket / ket.norm();
  return DensityOperator(k * k.adjoint());
}

DensityOperator DensityOperator::maximally_mixed(Index dim) {
  return DensityOperator(CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityOperator DensityOperator::from_bloch(const Eigen::Vector3d& r) {
  if (r.norm() > 1.0 + kTraceTol) throw std::invalid_argument("Bloch vector longer than 1");
  CMatrix m = 0.5 * (pauli::identity() + r(0) * pauli::x() + r(1) * pauli::y() + r(2) * pauli::z());
  return DensityOperator(m);
}

PureQubit::PureQubit(Complex alpha, Complex beta) : alpha_(alpha), beta_(beta) {
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > kTraceTol)
    throw std::invalid_argument("qubit amplitudes are not normalised");
}

CMatrix partial_trace(const CMatrix& rho, Subsystem keep, Index dim_a, Index dim_b) {
  if (rho.rows() != dim_a * dim_b || rho.cols() != dim_a * dim_b)
    throw std::invalid_argument("partial_trace: dimensions do not match operator");
  if (keep == Subsystem::A) {
    CMatrix out = CMatrix::Zero(dim_a, dim_a);
    for (Index i = 0; i < dim_a; ++i)
      for (Index j = 0; j < dim_a; ++j)
        out(i, j) = rho.block(i * dim_b, j * dim_b, dim_b, dim_b).trace();
    return out;
  }
  CMatrix out = CMatrix::Zero(dim_b, dim_b);
  for (Index i = 0; i < dim_a; ++i) out += rho.block(i * dim_b, i * dim_b, dim_b, dim_b);
  return out;
}

DensityOperator partial_trace(const DensityOperator& rho, Subsystem keep, Index dim_a,
                              Index dim_b) {
  return DensityOperator(partial_trace(rho.matrix(), keep, dim_a, dim_b));
}

CMatrix partial_transpose_a(const CMatrix& m, Index dim_a, Index dim_b) {
  if (m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b)
    throw std::invalid_argument("partial_transpose_a: dimensions do not match operator");
  CMatrix out(m.rows(), m.cols());
  for (Index i = 0; i < dim_a; ++i)
    for (Index j = 0; j < dim_a; ++j)
      out.block(i * dim_b, j * dim_b, dim_b, dim_b) = m.block(j * dim_b, i * dim_b, dim_b, dim_b);
  return out;
}

HermitianEigen eig_hermitian(const CMatrix& h) {
  if (!is_hermitian(h, kHermitianTol))
    throw std::invalid_argument("eig_hermitian: matrix is not Hermitian");
  if (h.rows() == 2) return eig2(h);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("eig_hermitian: solver failed");
  HermitianEigen out;
  out.values = es.eigenvalues().reverse();
  out.vectors = es.eigenvectors().rowwise().reverse();
  return out;
}

Eigen::VectorXd eigvals_hermitian(const CMatrix& h) {
  if (h.rows() == 2) {
    const double a = h(0, 0).real(), d = h(1, 1).real();
    const double mean = 0.5 * (a + d);
    const double rad = std::hypot(0.5 * (a - d), std::abs(0.5 * (h(0, 1) + std::conj(h(1, 0)))));
    return Eigen::Vector2d(mean + rad, mean - rad);
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().reverse();
}

double trace_norm(const CMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("trace_norm: matrix must be square");
  if (is_hermitian(m, 1e-14 * std::max(1.0, m.cwiseAbs().maxCoeff())))
    return eigvals_hermitian(0.5 * (m + m.adjoint())).cwiseAbs().sum();
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues().sum();
}

double fidelity(const DensityOperator& rho, const PureQubit& psi) {
  if (rho.dim() != 2) throw std::invalid_argument("fidelity: qubit state expected");
  Eigen::Vector2cd k = psi.ket();
  double f = (k.adjoint() * rho.matrix() * k)(0, 0).real();
  return std::clamp(f, 0.0, 1.0);
}

double binary_entropy(double p) {
  if (p < -1e-12 || p > 1.0 + 1e-12)
    throw std::invalid_argument("binary_entropy: probability outside [0,1]");
  p = std::clamp(p, 0.0, 1.0);
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

double von_neumann_entropy(const CMatrix& rho) {
  double s = 0.0;
  for (double l : eigvals_hermitian(rho))
    if (l > 0.0) s -= l * std::log2(l);
  return s;
}

double von_neumann_entropy(const DensityOperator& rho) { return von_neumann_entropy(rho.matrix()); }

double relative_entropy(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw std::invalid_argument("relative_entropy: dimension mismatch");
  HermitianEigen es = eig_hermitian(sigma.matrix());
  double cross = 0.0;
  for (Index j = 0; j < es.values.size(); ++j) {
    CVector w = es.vectors.col(j);
    double weight = (w.adjoint() * rho.matrix() * w)(0, 0).real();
    if (es.values(j) <= kSupportTol) {
      if (weight > kSupportTol) return std::numeric_limits<double>::infinity();
      continue;
    }
    cross += weight * std::log2(es.values(j));
  }
  double d = -von_neumann_entropy(rho) - cross;
  return std::max(d, 0.0);
}

namespace pauli {
Eigen::Matrix2cd identity() { return Eigen::Matrix2cd::Identity(); }
Eigen::Matrix2cd x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}
Eigen::Matrix2cd y() {
  Eigen::Matrix2cd m;
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}
Eigen::Matrix2cd z() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}
}  // namespace pauli

Eigen::Vector3d bloch_vector(const CMatrix& m) {
  return {(pauli::x() * m).trace().real(), (pauli::y() * m).trace().real(),
          (pauli::z() * m).trace().real()};
}

}  // namespace rqt
