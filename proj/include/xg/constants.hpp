#pragma once

#include "xg/tensor.hpp"

#include <cmath>
#include <cstddef>
#include <numbers>

namespace xg::constants {

/// Upper estimates of the Grothendieck constants; the bounds certified here
/// hold a fortiori with the (smaller) true constants.
inline constexpr double kGrothendieckComplex = 1.40491;
inline constexpr double kGrothendieckReal = 1.7822;
/// K_G^R(2) = sqrt(2) (Krivine).
inline constexpr double kGrothendieckReal2 = std::numbers::sqrt2;
/// Best constant in the one-sided L1 Khintchine bound.
inline constexpr double kKhintchineA1 = std::numbers::sqrt2 / 2.0;

/// 2^{(3N-5)/2} K_G^C: the Schmidt/GHZ gap bound for N >= 2 players. The
/// multilinear chain starts at N = 2; for a single player the bound is the
/// trivial triangle inequality with constant 1.
inline double schmidt_gap_constant(std::size_t players) {
    if (players < 2) return 1.0;
    return std::exp2((3.0 * static_cast<double>(players) - 5.0) / 2.0) * kGrothendieckComplex;
}

/// 2^{k(3r-5)/2} (K_G^C)^k: the clique-wise gap bound for k coalitions of at
/// most r players each.
inline double cliquewise_gap_constant(std::size_t coalitions, std::size_t coalition_size) {
    const double k = static_cast<double>(coalitions);
    const double r = static_cast<double>(coalition_size);
    return std::exp2(k * (3.0 * r - 5.0) / 2.0) * std::pow(kGrothendieckComplex, k);
}

/// 8 (K_G^C)^4: the 3-player stabilizer-state gap bound (triangle plus three
/// pair coalitions).
inline double stabilizer3_gap_constant() {
    const double k4 = kGrothendieckComplex * kGrothendieckComplex * kGrothendieckComplex *
                      kGrothendieckComplex;
    return 8.0 * k4;
}

/// 2^{(N-2)/2} K_G^K: the field-matched vector-vs-scalar bound.
inline double field_matched_constant(std::size_t players, Field field) {
    const double kg = (field == Field::Complex) ? kGrothendieckComplex : kGrothendieckReal;
    return std::exp2((static_cast<double>(players) - 2.0) / 2.0) * kg;
}

/// Mixed-field bound (real tensor, complex vectors): 2^{(3N-5)/2} K_G^C.
inline double mixed_field_constant(std::size_t players) { return schmidt_gap_constant(players); }

/// Row-norm-sum vs sign/phase maximum: 2*sqrt(2) for the +-1 row signs,
/// sqrt(2) for field-matched scalars.
inline constexpr double kLittlewoodPm = 2.0 * std::numbers::sqrt2;
inline constexpr double kLittlewoodMatched = std::numbers::sqrt2;

}  // namespace xg::constants
