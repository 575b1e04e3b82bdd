#pragma once

#include "xg/config.hpp"
#include "xg/game.hpp"

#include <cstdint>
#include <optional>

namespace xg {

/// CHSH: A[x,y] = (-1)^{xy} over {0,1}^2, uniform distribution.
Game chsh();

/// The standard XOR form of the GHZ game: 3 players, questions {0,1},
/// support {(0,0,0),(0,1,1),(1,0,1),(1,1,0)} with uniform weight 1/4,
/// sign +1 on (0,0,0) and -1 on the other supported triples.
Game mermin();

/// Generalized inner product: questions are n-bit strings, the sign is the
/// parity of the bitwise intersection, distribution uniform.
Game gip(std::size_t bits, std::size_t players, const Caps& caps = global_caps());

enum class Support { Full, Sparse };

/// Seeded random game: uniform +-1 signs on the support, uniform weights on
/// the support; Sparse draws `sparse_cells` distinct support cells.
Game random_game(std::size_t players, std::size_t questions, std::uint64_t seed,
                 Support support = Support::Full, std::size_t sparse_cells = 0,
                 const Caps& caps = global_caps());

}  // namespace xg
