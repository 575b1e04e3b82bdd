#pragma once

#include "xg/config.hpp"
#include "xg/tensor.hpp"

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace xg {

/// One +-1 answer per question per player.
struct ClassicalStrategy {
    std::vector<std::vector<int>> signs;  // [player][question]

    static ClassicalStrategy all_plus(const std::vector<std::size_t>& dims);
    std::string encode() const;  // "+-+|++|..." per player, '|' separated
};

/// One unit-disc complex scalar per question per player.
struct PhaseStrategy {
    std::vector<std::vector<std::complex<double>>> phases;  // [player][question]
};

/// Signed sum  sum_I M[I] x_1(i_1)...x_N(i_N)  (callers take |.|).
double classical_value(const NTensor& m, const ClassicalStrategy& s);

/// sum_I M[I] phi_1(i_1)...phi_N(i_N) for unit-disc scalars.
std::complex<double> phase_value(const NTensor& m, const PhaseStrategy& s);

struct ClassicalBiasResult {
    double value = 0.0;
    ClassicalStrategy witness;
};

/// Exact bias by sign enumeration. Exactness rests on convexity: the maximum
/// of |multilinear form| over the cube [-1,1]^(sum n_k) is attained at a
/// vertex. Ties break to the lexicographically smallest assignment with +1
/// ordered before -1. Requires sum_k n_k <= caps.enumeration_bits.
ClassicalBiasResult classical_bias_exact(const NTensor& m, const Caps& caps = global_caps());

/// Seeded multi-restart conditional-sign ascent; a lower bound on the exact
/// bias. Restart r draws its start from seed + r; zero marginals keep the
/// incumbent sign so every sweep is monotone.
ClassicalBiasResult classical_bias_heuristic(const NTensor& m, int restarts, std::uint64_t seed);

enum class NormMode { Exact, Heuristic };

/// ||M||_{inf,K}: max of |multilinear form| over per-player scalar families
/// from Ball(K). Real/Exact = sign enumeration (the classical bias).
/// Complex/Heuristic = seeded alternating phase ascent, a lower bound.
/// Exact complex maximization is not supported.
double norm_inf(const NTensor& m, Field field, NormMode mode, std::uint64_t seed = 0,
                int restarts = 32, const Caps& caps = global_caps());

}  // namespace xg
