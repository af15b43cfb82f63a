#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace oracle {

namespace {

constexpr double kPi = std::numbers::pi;

// Octant midpoint sum of g(|k|^2) * exp(-sigma^2 k^2) over a cube of side 8/sigma.
template <typename G>
double octant_sum(double sigma, int n, G g) {
  const double h = 8.0 / sigma / n;
  std::vector<double> k2(n), ex(n);
  for (int i = 0; i < n; ++i) {
    const double k = (i + 0.5) * h;
    k2[i] = k * k;
    ex[i] = std::exp(-sigma * sigma * k2[i]);
  }
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    double plane = 0.0;
    for (int j = 0; j < n; ++j) {
      double row = 0.0;
      const double kij = k2[i] + k2[j];
      const double eij = ex[i] * ex[j];
      for (int l = 0; l < n; ++l) row += ex[l] * g(kij + k2[l]);
      plane += eij * row;
    }
    total += plane;
  }
  return 8.0 * h * h * h * total;
}

template <typename G>
double richardson(double sigma, int n, G g) {
  const double i1 = octant_sum(sigma, n, g);
  const double i2 = octant_sum(sigma, 2 * n, g);
  const double i4 = octant_sum(sigma, 4 * n, g);
  const double r1 = (4.0 * i2 - i1) / 3.0;
  const double r2 = (4.0 * i4 - i2) / 3.0;
  return (16.0 * r2 - r1) / 15.0;
}

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) {
        x[i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        break;
      }
    }
    // Recompute the weight at the converged node.
    double p0 = 1.0, p1 = z;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double dp = n * (z * p1 - p0) / (z * z - 1.0);
    x[i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

CMatrix expi_hermitian(const CMatrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  Eigen::VectorXcd d(h.rows());
  for (int i = 0; i < h.rows(); ++i) d(i) = std::exp(Complex{0.0, t * es.eigenvalues()(i)});
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

void ladder(int dim, CMatrix& x, CMatrix& p) {
  CMatrix a = CMatrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  x = (a + a.adjoint()) / std::sqrt(2.0);
  p = (a - a.adjoint()) / Complex{0.0, std::sqrt(2.0)};
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

double wightman_self_grid(double sigma, int n) {
  const double v = richardson(sigma, n, [](double k2) { return 0.5 / std::sqrt(k2); });
  return v / std::pow(2.0 * kPi, 3);
}

double momentum_variance_grid(double sigma, int n) {
  const double v = richardson(sigma, n, [](double k2) { return 0.5 * std::sqrt(k2); });
  return v / std::pow(2.0 * kPi, 3);
}

ModeSum mode_sum(double r, double dt_ab, double sigma_a, double sigma_b, int nk, int nu) {
  const double s = sigma_a * sigma_a + sigma_b * sigma_b;
  const double kmax = std::sqrt(80.0 / s);
  if (nk % 2) ++nk;
  const double h = kmax / nk;
  std::vector<double> ux, uw;
  gauss_legendre(nu, ux, uw);
  // W = (2 pi)^-3 * 2 pi * int k^2 dk e^{-s k^2/2} e^{-i k dt} / (2k) * int du e^{i k r u}
  double re = 0.0, im = 0.0;
  for (int i = 0; i <= nk; ++i) {
    const double k = i * h;
    const double simpson = (i == 0 || i == nk) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    double ang = 0.0;
    for (int j = 0; j < nu; ++j) ang += uw[j] * std::cos(k * r * ux[j]);
    const double radial = simpson * k * std::exp(-0.5 * s * k * k) * ang;
    re += radial * std::cos(k * dt_ab);
    im -= radial * std::sin(k * dt_ab);
  }
  const double scale = h / 3.0 / (8.0 * kPi * kPi);
  return {re * scale, 2.0 * im * scale};
}

double wightman_self_exact(double sigma) { return 1.0 / (8.0 * kPi * kPi * sigma * sigma); }

double causal_propagator_exact(double r, double dt_ab, double s) {
  return -1.0 / (8.0 * kPi * kPi * r) * std::sqrt(2.0 * kPi / s) *
         (std::exp(-(r - dt_ab) * (r - dt_ab) / (2.0 * s)) -
          std::exp(-(r + dt_ab) * (r + dt_ab) / (2.0 * s)));
}

double classical_dh(const std::vector<double>& p, const std::vector<double>& q, double eps) {
  std::vector<int> order(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) order[i] = static_cast<int>(i);
  auto ratio = [&](int i) {
    return q[i] == 0.0 ? std::numeric_limits<double>::infinity() : p[i] / q[i];
  };
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return ratio(a) > ratio(b); });
  const double target = 1.0 - eps;
  double mass = 0.0, cost = 0.0;
  for (int i : order) {
    if (mass >= target) break;
    if (mass + p[i] <= target) {
      mass += p[i];
      cost += q[i];
    } else {
      const double frac = (target - mass) / p[i];
      mass = target;
      cost += frac * q[i];
    }
  }
  return cost <= 0.0 ? std::numeric_limits<double>::infinity() : -std::log2(cost);
}

double dual_dh(const CMatrix& rho, const CMatrix& sigma, double eps) {
  auto h = [&](double log_mu) {
    const double mu = std::exp(log_mu);
    CMatrix m = mu * rho - sigma;
    m = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
    double pos = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) pos += std::max(es.eigenvalues()(i), 0.0);
    return mu * (1.0 - eps) - pos;
  };
  const double lo = -40.0, hi = 40.0, step = 0.005;
  double best_x = lo, best = h(lo);
  for (double x = lo; x <= hi; x += step) {
    const double v = h(x);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  double a = best_x - step, b = best_x + step;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = h(c), fd = h(d);
  for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = h(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = h(d);
    }
  }
  best = std::max({best, fc, fd});
  return best <= 0.0 ? std::numeric_limits<double>::infinity() : -std::log2(best);
}

double helstrom_grid(const CMatrix& rho0, const CMatrix& rho1) {
  const CMatrix diff = rho0 - rho1;
  CMatrix sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, Complex(0, -1), Complex(0, 1), 0;
  sz << 1, 0, 0, -1;
  auto p = [&](double th, double ph) {
    const CMatrix proj = 0.5 * (CMatrix::Identity(2, 2) + std::sin(th) * std::cos(ph) * sx +
                                std::sin(th) * std::sin(ph) * sy + std::cos(th) * sz);
    return 0.5 + 0.5 * (proj * diff).trace().real();
  };
  double bt = 0.0, bp = 0.0, best = p(0.0, 0.0);
  const int nt = 180, np = 360;
  for (int i = 0; i <= nt; ++i)
    for (int j = 0; j < np; ++j) {
      const double th = kPi * i / nt, ph = 2.0 * kPi * j / np;
      const double v = p(th, ph);
      if (v > best) {
        best = v;
        bt = th;
        bp = ph;
      }
    }
  for (double step = kPi / nt; step > 1e-10; step *= 0.5) {
    bool moved = true;
    while (moved) {
      moved = false;
      const double cand[4][2] = {{bt + step, bp}, {bt - step, bp}, {bt, bp + step}, {bt, bp - step}};
      for (const auto& c : cand) {
        const double v = p(c[0], c[1]);
        if (v > best) {
          best = v;
          bt = c[0];
          bp = c[1];
          moved = true;
        }
      }
    }
  }
  return best;
}

CMatrix fock_bob_output(const FockField& f, const CMatrix& mu_a, const CMatrix& mu_b,
                        const CMatrix& rho_a, const CMatrix& rho_b) {
  const int d = f.dim;
  CMatrix x, p;
  ladder(d, x, p);
  const CMatrix phi_a = f.ca * x + f.da * p;
  const CMatrix phi_b = f.cb * x + f.db * p;
  const CMatrix i2 = CMatrix::Identity(2, 2);
  // exp(-i mu (x) phi) = sum over eigenvalues s of mu: P_s (x) exp(-i s phi)
  auto coupling = [&](const CMatrix& mu, const CMatrix& phi) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(mu);
    CMatrix out = CMatrix::Zero(2 * d, 2 * d);
    for (int k = 0; k < 2; ++k) {
      const CMatrix proj = es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
      out += kron(proj, expi_hermitian(phi, -es.eigenvalues()(k)));
    }
    return out;
  };
  const CMatrix ua_af = coupling(mu_a, phi_a);  // on A (x) F
  const CMatrix ub_bf = coupling(mu_b, phi_b);  // on B (x) F
  // Embed in A (x) B (x) F.
  CMatrix ua = CMatrix::Zero(4 * d, 4 * d), ub = kron(i2, ub_bf);
  for (int a1 = 0; a1 < 2; ++a1)
    for (int a2 = 0; a2 < 2; ++a2)
      for (int b = 0; b < 2; ++b)
        ua.block((a1 * 2 + b) * d, (a2 * 2 + b) * d, d, d) = ua_af.block(a1 * d, a2 * d, d, d);
  CMatrix vac = CMatrix::Zero(d, d);
  vac(0, 0) = 1.0;
  const CMatrix rho0 = kron(kron(rho_a, rho_b), vac);
  const CMatrix u = ub * ua;
  const CMatrix rho = u * rho0 * u.adjoint();
  CMatrix bob = CMatrix::Zero(2, 2);
  for (int a = 0; a < 2; ++a)
    for (int b1 = 0; b1 < 2; ++b1)
      for (int b2 = 0; b2 < 2; ++b2)
        bob(b1, b2) += rho.block((a * 2 + b1) * d, (a * 2 + b2) * d, d, d).trace();
  return bob;
}

FockWeyl fock_weyl_pair(const FockField& f, double ua, double ub, double va, double vb) {
  CMatrix x, p;
  ladder(f.dim, x, p);
  auto phi = [&](double ga, double gb) {
    return CMatrix((ga * f.ca + gb * f.cb) * x + (ga * f.da + gb * f.db) * p);
  };
  Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(f.dim);
  vac(0) = 1.0;
  const Eigen::VectorXcd wv = expi_hermitian(phi(va, vb), 1.0) * vac;
  const Eigen::VectorXcd wu_dag = expi_hermitian(phi(ua, ub), -1.0) * vac;
  const Eigen::VectorXcd wuv = expi_hermitian(phi(ua + va, ub + vb), 1.0) * vac;
  FockWeyl out;
  out.product = wu_dag.dot(wv);
  out.combined = wuv(0);
  out.tail = wv.tail(10).squaredNorm();
  return out;
}

double haar_fidelity_monte_carlo(const Eigen::Matrix4d& confusion, int samples,
                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  CMatrix u[4] = {CMatrix::Identity(2, 2), CMatrix(2, 2), CMatrix(2, 2), CMatrix(2, 2)};
  u[1] << 1, 0, 0, -1;
  u[2] << 0, 1, 1, 0;
  u[3] << 0, Complex(0, -1), Complex(0, 1), 0;
  double total = 0.0;
  for (int s = 0; s < samples; ++s) {
    Complex a{g(rng), g(rng)}, b{g(rng), g(rng)};
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    a /= n;
    b /= n;
    Eigen::Vector2cd z[4] = {{a, b}, {a, -b}, {b, a}, {b, -a}};
    double f = 0.0;
    for (int m = 0; m < 4; ++m)
      for (int mp = 0; mp < 4; ++mp) {
        const Eigen::Vector2cd v = u[mp] * z[m];
        f += 0.25 * confusion(m, mp) * std::norm(z[0].dot(v));
      }
    total += f;
  }
  return total / samples;
}

}  // namespace oracle
