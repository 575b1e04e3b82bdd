#include "xg/catalog.hpp"

#include "xg/errors.hpp"
#include "xg/rng.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace xg {

Game chsh() {
    NTensor signs({2, 2}, Field::Real);
    NTensor weights({2, 2}, Field::Real);
    for (std::size_t x = 0; x < 2; ++x) {
        for (std::size_t y = 0; y < 2; ++y) {
            signs[x * 2 + y] = (x == 1 && y == 1) ? -1.0 : 1.0;
            weights[x * 2 + y] = 0.25;
        }
    }
    return Game(std::move(signs), std::move(weights));
}

Game mermin() {
    NTensor signs({2, 2, 2}, Field::Real);
    NTensor weights({2, 2, 2}, Field::Real);
    for (std::size_t i = 0; i < 8; ++i) signs[i] = 1.0;
    // Even-parity promise triples; target bit is OR(x,y,z), encoded as
    // A = (-1)^{OR}: +1 only on (0,0,0).
    const std::size_t support[4][3] = {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
    for (const auto& triple : support) {
        const std::size_t flat = (triple[0] * 2 + triple[1]) * 2 + triple[2];
        signs[flat] = (triple[0] == 0 && triple[1] == 0 && triple[2] == 0) ? 1.0 : -1.0;
        weights[flat] = 0.25;
    }
    return Game(std::move(signs), std::move(weights));
}

Game gip(std::size_t bits, std::size_t players, const Caps& caps) {
    if (bits == 0 || players == 0) throw UsageError("gip: bits and players must be positive");
    if (bits >= 32 || players * bits > 60) throw ResourceError("gip: size exceeds caps");
    const std::size_t questions = std::size_t(1) << bits;
    double entry_bits = static_cast<double>(players) * static_cast<double>(bits);
    if (entry_bits > std::log2(static_cast<double>(caps.max_tensor_entries)))
        throw ResourceError("gip: tensor exceeds the entry cap");
    std::vector<std::size_t> dims(players, questions);
    NTensor signs(dims, Field::Real);
    NTensor weights(dims, Field::Real);
    const double w = 1.0 / static_cast<double>(signs.size());
    std::vector<std::size_t> idx(players);
    for (std::size_t flat = 0; flat < signs.size(); ++flat) {
        std::size_t f = flat;
        std::size_t meet = questions - 1;  // all-ones mask
        for (std::size_t k = players; k-- > 0;) {
            meet &= f % questions;
            f /= questions;
        }
        const bool odd = (std::popcount(static_cast<unsigned long long>(meet)) & 1) != 0;
        signs[flat] = odd ? -1.0 : 1.0;
        weights[flat] = w;
    }
    return Game(std::move(signs), std::move(weights));
}

Game random_game(std::size_t players, std::size_t questions, std::uint64_t seed, Support support,
                 std::size_t sparse_cells, const Caps& caps) {
    if (players == 0 || questions == 0)
        throw UsageError("random_game: players and questions must be positive");
    double entry_bits = static_cast<double>(players) * std::log2(static_cast<double>(questions));
    if (entry_bits > std::log2(static_cast<double>(caps.max_tensor_entries)))
        throw ResourceError("random_game: tensor exceeds the entry cap");
    std::vector<std::size_t> dims(players, questions);
    NTensor signs(dims, Field::Real);
    NTensor weights(dims, Field::Real);
    for (std::size_t i = 0; i < signs.size(); ++i) signs[i] = 1.0;
    Rng rng(seed);
    const std::size_t total = signs.size();
    if (support == Support::Full) {
        const double w = 1.0 / static_cast<double>(total);
        for (std::size_t i = 0; i < total; ++i) {
            signs[i] = static_cast<double>(rng.sign());
            weights[i] = w;
        }
    } else {
        if (sparse_cells == 0 || sparse_cells > total)
            throw UsageError("random_game: sparse support size out of range");
        // Seeded partial Fisher-Yates over cell indices.
        std::vector<std::size_t> cells(total);
        for (std::size_t i = 0; i < total; ++i) cells[i] = i;
        for (std::size_t i = 0; i < sparse_cells; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng.below(total - i));
            std::swap(cells[i], cells[j]);
        }
        const double w = 1.0 / static_cast<double>(sparse_cells);
        for (std::size_t i = 0; i < sparse_cells; ++i) {
            signs[cells[i]] = static_cast<double>(rng.sign());
            weights[cells[i]] = w;
        }
    }
    return Game(std::move(signs), std::move(weights));
}

}  // namespace xg
