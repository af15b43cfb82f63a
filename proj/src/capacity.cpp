#include "rqt/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace rqt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double bloch_entropy(const Eigen::Vector3d& r) {
  return binary_entropy(0.5 * (1.0 + std::min(r.norm(), 1.0)));
}

struct BlochMap {
  Eigen::Matrix3d t;
  Eigen::Vector3d shift;
};

BlochMap bloch_map(const ChannelModel& ch) {
  BlochMap m;
  m.shift = bloch_vector(rqt::apply(ch, CMatrix(0.5 * pauli::identity())));
  const Eigen::Matrix2cd sig[3] = {pauli::x(), pauli::y(), pauli::z()};
  for (int k = 0; k < 3; ++k) m.t.col(k) = bloch_vector(rqt::apply(ch, CMatrix(0.5 * sig[k])));
  return m;
}

Eigen::Vector3d direction(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

bool is_diagonal(const CMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (i != j && m(i, j) != Complex{0.0, 0.0}) return false;
  return true;
}

// Weights tr(P rho), tr(P sigma) of the projector P onto the strictly positive
// (or, with `kernel`, the numerically null) eigenspace of each block of m.
struct Spectral {
  double on_rho = 0.0, on_sigma = 0.0;
};

class BlockPair {
 public:
  BlockPair(const std::vector<CMatrix>& rho, const std::vector<CMatrix>& sigma)
      : rho_(rho), sigma_(sigma) {
    if (rho.size() != sigma.size())
      throw std::invalid_argument("hypothesis_testing_re: block count mismatch");
    for (std::size_t k = 0; k < rho.size(); ++k) {
      if (rho[k].rows() != sigma[k].rows() || rho[k].cols() != sigma[k].cols())
        throw std::invalid_argument("hypothesis_testing_re: dimension mismatch");
      diagonal_.push_back(is_diagonal(rho[k]) && is_diagonal(sigma[k]));
    }
  }

  // Projector onto the positive part of mu rho - sigma.
  Spectral positive(double mu) const {
    Spectral s;
    for (std::size_t k = 0; k < rho_.size(); ++k) {
      const CMatrix& r = rho_[k];
      const CMatrix& g = sigma_[k];
      if (diagonal_[k]) {
        for (Index i = 0; i < r.rows(); ++i)
          if (mu * r(i, i).real() - g(i, i).real() > 0.0) {
            s.on_rho += r(i, i).real();
            s.on_sigma += g(i, i).real();
          }
        continue;
      }
      HermitianEigen es = eig_hermitian(mu * r - g);
      for (Index j = 0; j < es.values.size() && es.values(j) > 0.0; ++j) {
        const auto v = es.vectors.col(j);
        s.on_rho += (v.adjoint() * r * v)(0, 0).real();
        s.on_sigma += (v.adjoint() * g * v)(0, 0).real();
      }
    }
    return s;
  }

  // Projector onto the eigenvalues of m below kSupportTol, m = rho or sigma.
  Spectral null_space(bool of_sigma) const {
    Spectral s;
    for (std::size_t k = 0; k < rho_.size(); ++k) {
      const CMatrix& m = of_sigma ? sigma_[k] : rho_[k];
      if (diagonal_[k]) {
        for (Index i = 0; i < m.rows(); ++i)
          if (m(i, i).real() <= kSupportTol) {
            s.on_rho += rho_[k](i, i).real();
            s.on_sigma += sigma_[k](i, i).real();
          }
        continue;
      }
      HermitianEigen es = eig_hermitian(m);
      for (Index j = 0; j < es.values.size(); ++j) {
        if (es.values(j) > kSupportTol) continue;
        const auto v = es.vectors.col(j);
        s.on_rho += (v.adjoint() * rho_[k] * v)(0, 0).real();
        s.on_sigma += (v.adjoint() * sigma_[k] * v)(0, 0).real();
      }
    }
    return s;
  }

  double total_sigma() const {
    double t = 0.0;
    for (const auto& g : sigma_) t += g.trace().real();
    return t;
  }

 private:
  const std::vector<CMatrix>& rho_;
  const std::vector<CMatrix>& sigma_;
  std::vector<bool> diagonal_;
};

double neg_log2(double x) { return x <= 0.0 ? kInf : -std::log2(x); }

}  // namespace

double classical_capacity_closed_form(const CorrelatorSet& corr) {
  const double nu = std::clamp(corr.nu_b, 0.0, 1.0);
  const double c = binary_entropy(0.5 + 0.5 * nu * std::abs(std::cos(2.0 * corr.e_ab))) -
                   binary_entropy(0.5 + 0.5 * nu);
  return std::max(c, 0.0);
}

double holevo_quantity(const std::vector<double>& probs, const std::vector<CMatrix>& states) {
  if (probs.size() != states.size() || states.empty())
    throw std::invalid_argument("holevo_quantity: size mismatch");
  CMatrix avg = CMatrix::Zero(states[0].rows(), states[0].cols());
  double cond = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    avg += probs[i] * states[i];
    cond += probs[i] * von_neumann_entropy(states[i]);
  }
  return von_neumann_entropy(avg) - cond;
}

HolevoResult holevo_numeric(const ChannelModel& ch, const HolevoOptions& opts) {
  const int m = std::max(1, opts.max_states);
  const BlochMap map = bloch_map(ch);
  // x = (theta_k, phi_k, w_k) per state; p_k = w_k^2 / sum w^2.
  auto objective = [&](const std::vector<double>& x) {
    double norm = 0.0;
    for (int k = 0; k < m; ++k) norm += x[3 * k + 2] * x[3 * k + 2];
    if (norm <= 0.0) return 0.0;
    Eigen::Vector3d avg = Eigen::Vector3d::Zero();
    double cond = 0.0;
    for (int k = 0; k < m; ++k) {
      const double p = x[3 * k + 2] * x[3 * k + 2] / norm;
      const Eigen::Vector3d out = map.t * direction(x[3 * k], x[3 * k + 1]) + map.shift;
      avg += p * out;
      cond += p * bloch_entropy(out);
    }
    return bloch_entropy(avg) - cond;
  };

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> best_x;
  double best = -kInf;
  for (int start = 0; start < opts.starts; ++start) {
    std::vector<double> x(3 * m);
    for (int k = 0; k < m; ++k) {
      x[3 * k] = std::acos(2.0 * unit(rng) - 1.0);
      x[3 * k + 1] = 2.0 * std::numbers::pi * unit(rng);
      x[3 * k + 2] = 0.5 + unit(rng);
    }
    double value = objective(x);
    double step = 0.5;
    while (step >= opts.min_step) {
      bool moved = false;
      for (std::size_t j = 0; j < x.size(); ++j) {
        for (double dir : {1.0, -1.0}) {
          const double keep = x[j];
          x[j] = keep + dir * step;
          const double trial = objective(x);
          if (trial > value + 1e-15) {
            value = trial;
            moved = true;
            break;
          }
          x[j] = keep;
        }
      }
      if (!moved) step *= 0.5;
    }
    if (value > best) {
      best = value;
      best_x = x;
    }
  }

  HolevoResult res;
  res.chi = std::clamp(best, 0.0, 1.0);
  double norm = 0.0;
  for (int k = 0; k < m; ++k) norm += best_x[3 * k + 2] * best_x[3 * k + 2];
  for (int k = 0; k < m; ++k) {
    res.argmax.states.push_back(
        DensityOperator::from_bloch(direction(best_x[3 * k], best_x[3 * k + 1])));
    res.argmax.probs.push_back(best_x[3 * k + 2] * best_x[3 * k + 2] / norm);
  }
  return res;
}

double hypothesis_testing_re_blocks(const std::vector<CMatrix>& rho,
                                    const std::vector<CMatrix>& sigma, double eps) {
  if (!(eps >= 0.0 && eps < 1.0))
    throw std::invalid_argument("hypothesis_testing_re: eps must lie in [0, 1)");
  const BlockPair pair(rho, sigma);
  const double target = 1.0 - eps;

  // A test supported on ker(sigma) costs nothing.
  if (pair.null_space(true).on_rho >= target - kSupportTol) return kInf;
  // eps = 0 forces Q >= projector onto supp(rho).
  if (eps == 0.0) return neg_log2(pair.total_sigma() - pair.null_space(false).on_sigma);

  // tr(P(mu) rho) is nondecreasing in mu; bracket the crossing of the target.
  double lo = 1.0, hi = 1.0;
  Spectral s_lo = pair.positive(1.0), s_hi = s_lo;
  if (s_hi.on_rho >= target) {
    while (s_lo.on_rho >= target) {
      hi = lo;
      s_hi = s_lo;
      lo *= 0.5;
      if (lo < 1e-300) return neg_log2(s_hi.on_sigma);
      s_lo = pair.positive(lo);
    }
  } else {
    while (s_hi.on_rho < target) {
      lo = hi;
      s_lo = s_hi;
      hi *= 2.0;
      if (hi > 1e300) throw std::runtime_error("hypothesis_testing_re: threshold not bracketed");
      s_hi = pair.positive(hi);
    }
  }
  for (int it = 0; it < 200 && hi / lo - 1.0 > 4e-16; ++it) {
    const double mid = std::sqrt(lo * hi);
    const Spectral s = pair.positive(mid);
    if (s.on_rho >= target) {
      hi = mid;
      s_hi = s;
    } else {
      lo = mid;
      s_lo = s;
    }
  }
  // Mix the two neighbouring projectors so that tr(Q rho) = 1 - eps exactly.
  const double theta = (target - s_lo.on_rho) / (s_hi.on_rho - s_lo.on_rho);
  return neg_log2((1.0 - theta) * s_lo.on_sigma + theta * s_hi.on_sigma);
}

double hypothesis_testing_re(const CMatrix& rho, const CMatrix& sigma, double eps) {
  return hypothesis_testing_re_blocks({rho}, {sigma}, eps);
}

double hypothesis_testing_re(const DensityOperator& rho, const DensityOperator& sigma,
                             double eps) {
  if (rho.dim() != sigma.dim())
    throw std::invalid_argument("hypothesis_testing_re: dimension mismatch");
  return hypothesis_testing_re(rho.matrix(), sigma.matrix(), eps);
}

double cq_hypothesis_testing_re(const CqState& cq, double eps) {
  if (cq.probs.size() != cq.cond_states.size() || cq.probs.empty())
    throw std::invalid_argument("cq_hypothesis_testing_re: size mismatch");
  CMatrix avg = CMatrix::Zero(cq.cond_states[0].dim(), cq.cond_states[0].dim());
  for (std::size_t m = 0; m < cq.probs.size(); ++m) avg += cq.probs[m] * cq.cond_states[m].matrix();
  std::vector<CMatrix> rho, sigma;
  for (std::size_t m = 0; m < cq.probs.size(); ++m) {
    if (cq.probs[m] <= 0.0) continue;
    rho.push_back(cq.probs[m] * cq.cond_states[m].matrix());
    sigma.push_back(cq.probs[m] * avg);
  }
  return hypothesis_testing_re_blocks(rho, sigma, eps);
}

OneShotBounds one_shot_bounds(const std::vector<DensityOperator>& cond_states, double eps,
                              int grid) {
  const int m = static_cast<int>(cond_states.size());
  if (m < 1 || m > 4) throw std::invalid_argument("one_shot_bounds: 1 to 4 messages supported");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("one_shot_bounds: eps in (0, 1)");
  if (grid < 1) throw std::invalid_argument("one_shot_bounds: grid must be positive");

  auto value = [&](const std::vector<double>& p, double e) {
    return cq_hypothesis_testing_re(CqState{p, cond_states}, e);
  };

  // All compositions of `grid` into m parts.
  std::vector<std::vector<double>> points;
  std::vector<int> counts(m, 0);
  auto enumerate = [&](auto&& self, int slot, int left) -> void {
    if (slot == m - 1) {
      counts[slot] = left;
      std::vector<double> p(m);
      for (int i = 0; i < m; ++i) p[i] = static_cast<double>(counts[i]) / grid;
      points.push_back(std::move(p));
      return;
    }
    for (int c = 0; c <= left; ++c) {
      counts[slot] = c;
      self(self, slot + 1, left - c);
    }
  };
  enumerate(enumerate, 0, grid);

  auto maximise = [&](double e, std::vector<double>& arg) {
    double best = -kInf;
    for (const auto& p : points) {
      const double v = value(p, e);
      if (v > best) {
        best = v;
        arg = p;
      }
    }
    if (std::isinf(best)) return best;
    // Pattern search moving probability mass between pairs of messages.
    for (double step = 1.0 / grid; step >= 1e-6; step *= 0.5) {
      bool moved = true;
      while (moved) {
        moved = false;
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j) {
            if (i == j || arg[j] < step) continue;
            std::vector<double> p = arg;
            p[i] += step;
            p[j] -= step;
            const double v = value(p, e);
            if (v > best + 1e-12) {
              best = v;
              arg = p;
              moved = true;
            }
          }
      }
    }
    return best;
  };

  OneShotBounds out;
  out.c_min = maximise(0.5 * eps, out.argmax_min) - std::log2(1.0 / eps) - 4.0;
  out.c_max = maximise(eps, out.argmax_max);
  return out;
}

std::vector<SteinPoint> stein_convergence(const DensityOperator& rho, const DensityOperator& sigma,
                                          double eps, const std::vector<int>& n_list) {
  if (rho.dim() != sigma.dim()) throw std::invalid_argument("stein_convergence: dimension mismatch");
  const double rel = relative_entropy(rho, sigma);
  std::vector<SteinPoint> out;
  for (int n : n_list) {
    if (n < 1) throw std::invalid_argument("stein_convergence: n must be positive");
    if (std::pow(static_cast<double>(rho.dim()), n) > 4096.0)
      throw std::invalid_argument("stein_convergence: tensor power exceeds dimension 4096");
    CMatrix r = rho.matrix(), s = sigma.matrix();
    for (int k = 1; k < n; ++k) {
      r = kron(r, rho.matrix());
      s = kron(s, sigma.matrix());
    }
    out.push_back({n, hypothesis_testing_re(r, s, eps) / n, rel});
  }
  return out;
}

}  // namespace rqt
