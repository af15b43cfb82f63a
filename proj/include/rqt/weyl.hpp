#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "rqt/field.hpp"
#include "rqt/qmath.hpp"

namespace rqt {

/// weight * phase * W(E(coeff_a f_A + coeff_b f_B)).
struct WeylWord {
  double coeff_a = 0.0;
  double coeff_b = 0.0;
  Complex phase{1.0, 0.0};
  Complex weight{1.0, 0.0};
};

using WeylSum = std::vector<WeylWord>;

enum class TrigKind { Cos, Sin };

struct TrigFactor {
  DetectorLabel detector;
  TrigKind kind;
};

/// cos -> (W(+) + W(-)) / 2,  sin -> (W(+) - W(-)) / 2i.
std::array<WeylWord, 2> trig_expand(const TrigFactor& f);
/// Same for cos/sin of phi(ca f_A + cb f_B).
std::array<WeylWord, 2> trig_expand(double ca, double cb, TrigKind kind);

/// Weyl relation W(Ef)W(Eg) = exp(-i E(f,g) / 2) W(E(f+g)), with E extended
/// bilinearly and antisymmetrically to span{f_A, f_B}.
WeylWord weyl_product(const WeylWord& u, const WeylWord& v, const CorrelatorSet& corr);
WeylSum weyl_product(const WeylSum& u, const WeylSum& v, const CorrelatorSet& corr);

/// Quasifree state: weight * phase * exp(-W(g, g) / 2) with g = a f_A + b f_B.
Complex quasifree_expectation(const WeylWord& w, const CorrelatorSet& corr);
Complex quasifree_expectation(const WeylSum& s, const CorrelatorSet& corr);

/// omega(X_1 X_2 ... X_n) for n <= 8, factors applied left to right.
Complex expectation_of_trig_product(std::span<const TrigFactor> factors,
                                    const CorrelatorSet& corr);

/// gamma_ijkl = omega(X_A^j X_B^i X_B^l X_A^k): i, l label Bob's inner
/// factors and j, k Alice's outer ones (the order in which they appear in
/// Bob's reduced output state).
Complex channel_gamma(TrigKind i, TrigKind j, TrigKind k, TrigKind l, const CorrelatorSet& corr);

struct CoefficientIdentityReport {
  Complex cccc_plus_cssc, sccs_plus_ssss, cscs_minus_ccss, sscc_minus_scsc;
  double max_deviation = 0.0;
};

/// Compares the four gamma combinations with
/// (1 +- nu cos 2E) / 2 and (i/2) nu sin 2E.
CoefficientIdentityReport check_coefficient_identities(const CorrelatorSet& corr);

struct ProductToSumOptions {
  int auxiliary_words = 100;
  std::uint64_t seed = 1;
  double tolerance = 1e-10;
  /// Negative control: evaluate the right-hand sides with -E_AB.
  bool flip_propagator_sign = false;
};

struct ProductToSumReport {
  double max_deviation = 0.0;
  int checks = 0;
  bool passed = true;
};

/// Checks 2CC, -2SS, 2CS and 2SC for every ordered detector pair by comparing
/// omega(aux * lhs) and omega(lhs * aux) with the right-hand sides.
ProductToSumReport verify_product_to_sum(const CorrelatorSet& corr,
                                         const ProductToSumOptions& opts = {});

}  // namespace rqt
