#pragma once

#include "xg/config.hpp"
#include "xg/tensor.hpp"

#include <iosfwd>
#include <string>

namespace xg {

/// An N-player XOR game: a sign tensor A over the question tuples together
/// with a probability distribution pi on the same index set. The effective
/// tensor B = A o pi is what every bias evaluates.
class Game {
public:
    /// Validates shapes, sign entries, and the weight sum. A weight sum off
    /// unity by more than 1e-9 is rejected; within tolerance the weights are
    /// renormalized exactly so that sum |B| <= 1 holds for the bias contract.
    Game(NTensor signs, NTensor weights);

    const NTensor& signs() const { return signs_; }
    const NTensor& weights() const { return weights_; }
    const std::vector<std::size_t>& dims() const { return signs_.dims(); }
    std::size_t players() const { return signs_.order(); }

    /// B = A o pi.
    NTensor effective() const { return entrywise_product(signs_, weights_); }

private:
    NTensor signs_;
    NTensor weights_;
};

/// Pairwise XOR product: question (i,j) per player, flattened i-major; signs
/// and weights multiply.
Game xor_product(const Game& a, const Game& b, const Caps& caps = global_caps());

/// l-fold XOR repetition G^{(x)l}: the left fold of xor_product, so question
/// l-tuples flatten lexicographically.
Game xor_repeat(const Game& game, std::size_t times, const Caps& caps = global_caps());

/// `xorgame v1` ASCII format.
Game read_game(std::istream& in);
Game read_game_file(const std::string& path);
void write_game(std::ostream& out, const Game& game);
void write_game_file(const std::string& path, const Game& game);

}  // namespace xg
