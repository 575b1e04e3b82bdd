#pragma once

#include "xg/config.hpp"
#include "xg/game.hpp"
#include "xg/quantum.hpp"
#include "xg/tensor.hpp"

#include <string>

namespace xg {

enum class CommModel { Randomized, Entangled, QuantumCliquewise };

/// Generalized-discrepancy communication lower bound. The bound field is the
/// raw formula value; reported_bound clamps it at zero since communication is
/// nonnegative. No bound is declared when the correlation margin is
/// nonpositive.
struct LowerBoundRecord {
    std::string target;   // id of the bounded tensor A
    std::string witness;  // id of the chosen (B, pi)
    CommModel model = CommModel::Randomized;
    double epsilon = 0.0;
    double correlation = 0.0;  // <A, B o pi>
    double bias = 0.0;         // beta(B o pi), or the see-saw denominator
    bool has_bound = false;
    double bound = 0.0;
    double reported_bound = 0.0;
    double additive_constant = 0.0;  // quantum clique-wise: 3(k+N^2)N/4
    bool certified = true;
};

/// log2((<A, B o pi> - 2 eps) / beta(B o pi)) with the exact classical bias.
LowerBoundRecord gen_disc_bound(const NTensor& a_signs, const Game& b, double eps,
                                const Caps& caps = global_caps());

/// Entangled variant: the denominator is a GHZ see-saw value. A heuristic
/// denominator weakens the bound in the unsound direction, so the record is
/// flagged non-certified (illustrative only).
LowerBoundRecord gen_disc_bound_entangled(const NTensor& a_signs, const Game& b, double eps,
                                          std::size_t dim, const SeesawOptions& opts = {},
                                          const Caps& caps = global_caps());

/// Quantum clique-wise bound: half the generalized-discrepancy bound minus
/// the concrete additive constant 3(k+N^2)N/4 from the gap chain.
LowerBoundRecord cliquewise_quantum_bound(const NTensor& a_signs, const Game& b, double eps,
                                          std::size_t cliques, const Caps& caps = global_caps());

/// Number-on-the-forehead lift: each player's question becomes the
/// (N-1)-tuple of the other players' inputs; inconsistent tuples carry weight
/// zero. The classical bias of the lifted game is the NOF discrepancy form.
Game nof_lift(const Game& game, const Caps& caps = global_caps());

}  // namespace xg
