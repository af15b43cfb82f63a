#include "rqt/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace rqt {

namespace {

constexpr Complex kI{0.0, 1.0};

// E(f, g) for f = (a1, b1), g = (a2, b2) in span{f_A, f_B}.
double propagator(double a1, double b1, double a2, double b2, double e_ab) {
  return (a1 * b2 - b1 * a2) * e_ab;
}

WeylSum as_sum(const std::array<WeylWord, 2>& w) { return {w[0], w[1]}; }

}  // namespace

std::array<WeylWord, 2> trig_expand(double ca, double cb, TrigKind kind) {
  WeylWord plus{ca, cb, 1.0, 0.5};
  WeylWord minus{-ca, -cb, 1.0, 0.5};
  if (kind == TrigKind::Sin) {
    plus.weight = 1.0 / (2.0 * kI);
    minus.weight = -1.0 / (2.0 * kI);
  }
  return {plus, minus};
}

std::array<WeylWord, 2> trig_expand(const TrigFactor& f) {
  return f.detector == DetectorLabel::A ? trig_expand(1.0, 0.0, f.kind)
                                        : trig_expand(0.0, 1.0, f.kind);
}

WeylWord weyl_product(const WeylWord& u, const WeylWord& v, const CorrelatorSet& corr) {
  const double e = propagator(u.coeff_a, u.coeff_b, v.coeff_a, v.coeff_b, corr.e_ab);
  WeylWord out;
  out.coeff_a = u.coeff_a + v.coeff_a;
  out.coeff_b = u.coeff_b + v.coeff_b;
  out.phase = u.phase * v.phase * std::exp(Complex{0.0, -0.5 * e});
  out.weight = u.weight * v.weight;
  return out;
}

WeylSum weyl_product(const WeylSum& u, const WeylSum& v, const CorrelatorSet& corr) {
  WeylSum out;
  out.reserve(u.size() * v.size());
  for (const auto& x : u)
    for (const auto& y : v) out.push_back(weyl_product(x, y, corr));
  return out;
}

Complex quasifree_expectation(const WeylWord& w, const CorrelatorSet& corr) {
  const double a = w.coeff_a, b = w.coeff_b;
  const double var = a * a * corr.w_aa + b * b * corr.w_bb + 2.0 * a * b * corr.re_w_ab;
  return w.weight * w.phase * std::exp(-0.5 * var);
}

Complex quasifree_expectation(const WeylSum& s, const CorrelatorSet& corr) {
  Complex total{0.0, 0.0};
  for (const auto& w : s) total += quasifree_expectation(w, corr);
  return total;
}

Complex expectation_of_trig_product(std::span<const TrigFactor> factors,
                                    const CorrelatorSet& corr) {
  if (factors.size() > 8)
    throw std::invalid_argument("expectation_of_trig_product: at most 8 factors");
  WeylSum acc{WeylWord{}};
  for (const auto& f : factors) acc = weyl_product(acc, as_sum(trig_expand(f)), corr);
  return quasifree_expectation(acc, corr);
}

Complex channel_gamma(TrigKind i, TrigKind j, TrigKind k, TrigKind l, const CorrelatorSet& corr) {
  const TrigFactor f[4] = {{DetectorLabel::A, j},
                           {DetectorLabel::B, i},
                           {DetectorLabel::B, l},
                           {DetectorLabel::A, k}};
  return expectation_of_trig_product(f, corr);
}

CoefficientIdentityReport check_coefficient_identities(const CorrelatorSet& corr) {
  constexpr TrigKind c = TrigKind::Cos, s = TrigKind::Sin;
  auto g = [&](TrigKind i, TrigKind j, TrigKind k, TrigKind l) {
    return channel_gamma(i, j, k, l, corr);
  };
  CoefficientIdentityReport r;
  r.cccc_plus_cssc = g(c, c, c, c) + g(c, s, s, c);
  r.sccs_plus_ssss = g(s, c, c, s) + g(s, s, s, s);
  r.cscs_minus_ccss = g(c, s, c, s) - g(c, c, s, s);
  r.sscc_minus_scsc = g(s, s, c, c) - g(s, c, s, c);
  const double cos2e = std::cos(2.0 * corr.e_ab), sin2e = std::sin(2.0 * corr.e_ab);
  const Complex plus = 0.5 * (1.0 + corr.nu_b * cos2e);
  const Complex minus = 0.5 * (1.0 - corr.nu_b * cos2e);
  const Complex comm = 0.5 * kI * corr.nu_b * sin2e;
  r.max_deviation = std::max({std::abs(r.cccc_plus_cssc - plus), std::abs(r.sccs_plus_ssss - minus),
                              std::abs(r.cscs_minus_ccss - comm),
                              std::abs(r.sscc_minus_scsc - comm)});
  return r;
}

ProductToSumReport verify_product_to_sum(const CorrelatorSet& corr,
                                         const ProductToSumOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  std::vector<WeylSum> aux;
  aux.reserve(opts.auxiliary_words);
  for (int n = 0; n < opts.auxiliary_words; ++n) aux.push_back({WeylWord{coeff(rng), coeff(rng)}});

  constexpr double unit[2][2] = {{1.0, 0.0}, {0.0, 1.0}};
  const double e_rhs = opts.flip_propagator_sign ? -corr.e_ab : corr.e_ab;
  ProductToSumReport report;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double ai = unit[i][0], bi = unit[i][1], aj = unit[j][0], bj = unit[j][1];
      const double eij = propagator(ai, bi, aj, bj, e_rhs);
      const Complex minus_half = std::exp(Complex{0.0, -0.5 * eij});
      const Complex plus_half = std::exp(Complex{0.0, 0.5 * eij});
      auto trig = [](double a, double b, TrigKind k) { return as_sum(trig_expand(a, b, k)); };
      auto scaled = [](WeylSum s, Complex f) {
        for (auto& w : s) w.weight *= f;
        return s;
      };
      auto concat = [](WeylSum x, const WeylSum& y) {
        x.insert(x.end(), y.begin(), y.end());
        return x;
      };
      const WeylSum ci = trig(ai, bi, TrigKind::Cos), si = trig(ai, bi, TrigKind::Sin);
      const WeylSum cj = trig(aj, bj, TrigKind::Cos), sj = trig(aj, bj, TrigKind::Sin);
      const WeylSum c_sum = trig(ai + aj, bi + bj, TrigKind::Cos);
      const WeylSum c_diff = trig(ai - aj, bi - bj, TrigKind::Cos);
      const WeylSum s_sum = trig(ai + aj, bi + bj, TrigKind::Sin);
      const WeylSum s_diff = trig(ai - aj, bi - bj, TrigKind::Sin);

      const std::pair<WeylSum, WeylSum> identities[4] = {
          {scaled(weyl_product(ci, cj, corr), 2.0),
           concat(scaled(c_sum, minus_half), scaled(c_diff, plus_half))},
          {scaled(weyl_product(si, sj, corr), -2.0),
           concat(scaled(c_sum, minus_half), scaled(c_diff, -plus_half))},
          {scaled(weyl_product(ci, sj, corr), 2.0),
           concat(scaled(s_sum, minus_half), scaled(s_diff, -plus_half))},
          {scaled(weyl_product(si, cj, corr), 2.0),
           concat(scaled(s_sum, minus_half), scaled(s_diff, plus_half))},
      };
      for (const auto& [lhs, rhs] : identities) {
        for (const auto& w : aux) {
          const Complex l1 = quasifree_expectation(weyl_product(w, lhs, corr), corr);
          const Complex r1 = quasifree_expectation(weyl_product(w, rhs, corr), corr);
          const Complex l2 = quasifree_expectation(weyl_product(lhs, w, corr), corr);
          const Complex r2 = quasifree_expectation(weyl_product(rhs, w, corr), corr);
          report.max_deviation =
              std::max({report.max_deviation, std::abs(l1 - r1), std::abs(l2 - r2)});
          report.checks += 2;
        }
      }
    }
  }
  report.passed = report.max_deviation <= opts.tolerance;
  return report;
}

}  // namespace rqt
