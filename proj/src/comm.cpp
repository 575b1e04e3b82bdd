#include "xg/comm.hpp"

#include "xg/classical.hpp"
#include "xg/errors.hpp"

#include <cmath>

namespace xg {

namespace {

LowerBoundRecord base_record(const NTensor& a_signs, const Game& b, double eps) {
    if (!a_signs.same_shape(b.signs())) throw ShapeError("discrepancy bound: shape mismatch");
    if (eps < 0.0) throw UsageError("discrepancy bound: epsilon must be nonnegative");
    LowerBoundRecord rec;
    rec.epsilon = eps;
    rec.correlation = inner_product(a_signs, b.effective()).real();
    return rec;
}

void finish(LowerBoundRecord& rec, double numerator) {
    if (numerator <= 0.0 || rec.bias <= 0.0) {
        rec.has_bound = false;
        rec.bound = 0.0;
        rec.reported_bound = 0.0;
        return;
    }
    rec.has_bound = true;
    double value = std::log2(numerator / rec.bias);
    if (rec.model == CommModel::QuantumCliquewise) value = 0.5 * value - rec.additive_constant;
    rec.bound = value;
    rec.reported_bound = std::max(0.0, value);
}

}  // namespace

LowerBoundRecord gen_disc_bound(const NTensor& a_signs, const Game& b, double eps,
                                const Caps& caps) {
    LowerBoundRecord rec = base_record(a_signs, b, eps);
    rec.model = CommModel::Randomized;
    rec.bias = classical_bias_exact(b.effective(), caps).value;
    finish(rec, rec.correlation - 2.0 * eps);
    return rec;
}

LowerBoundRecord gen_disc_bound_entangled(const NTensor& a_signs, const Game& b, double eps,
                                          std::size_t dim, const SeesawOptions& opts,
                                          const Caps& caps) {
    (void)caps;
    LowerBoundRecord rec = base_record(a_signs, b, eps);
    rec.model = CommModel::Entangled;
    rec.bias = ghz_bias_seesaw(b.effective(), dim, opts).value;
    rec.certified = false;
    finish(rec, rec.correlation - 2.0 * eps);
    return rec;
}

LowerBoundRecord cliquewise_quantum_bound(const NTensor& a_signs, const Game& b, double eps,
                                          std::size_t cliques, const Caps& caps) {
    LowerBoundRecord rec = base_record(a_signs, b, eps);
    rec.model = CommModel::QuantumCliquewise;
    const double players = static_cast<double>(b.players());
    const double k = static_cast<double>(cliques);
    rec.additive_constant = 3.0 * (k + players * players) * players / 4.0;
    rec.bias = classical_bias_exact(b.effective(), caps).value;
    finish(rec, rec.correlation - 2.0 * eps);
    return rec;
}

Game nof_lift(const Game& game, const Caps& caps) {
    const auto& dims = game.dims();
    const std::size_t players = dims.size();
    if (players < 2) throw UsageError("nof_lift: needs at least 2 players");
    const std::size_t n = dims[0];
    for (std::size_t d : dims) {
        if (d != n) throw UsageError("nof_lift: requires a common question count");
    }
    // Lifted question count n^{N-1} per player.
    double lifted_bits = static_cast<double>(players) * (static_cast<double>(players) - 1.0) *
                         std::log2(static_cast<double>(n));
    if (lifted_bits > std::log2(static_cast<double>(caps.max_tensor_entries)))
        throw ResourceError("nof_lift: lifted tensor exceeds the entry cap");
    std::size_t lifted_n = 1;
    for (std::size_t k = 0; k + 1 < players; ++k) lifted_n *= n;

    std::vector<std::size_t> lifted_dims(players, lifted_n);
    NTensor signs(lifted_dims, Field::Real);
    NTensor weights(lifted_dims, Field::Real);
    for (std::size_t i = 0; i < signs.size(); ++i) signs[i] = 1.0;

    std::vector<std::size_t> idx(players);
    std::vector<std::size_t> tuple(players);
    for (std::size_t flat = 0; flat < game.signs().size(); ++flat) {
        std::size_t f = flat;
        for (std::size_t k = players; k-- > 0;) {
            idx[k] = f % n;
            f /= n;
        }
        // Player k sees every input but its own, ascending player order.
        for (std::size_t k = 0; k < players; ++k) {
            std::size_t t = 0;
            for (std::size_t l = 0; l < players; ++l) {
                if (l == k) continue;
                t = t * n + idx[l];
            }
            tuple[k] = t;
        }
        std::size_t lifted_flat = 0;
        for (std::size_t k = 0; k < players; ++k) lifted_flat = lifted_flat * lifted_n + tuple[k];
        signs[lifted_flat] = game.signs()[flat];
        weights[lifted_flat] = game.weights()[flat];
    }
    return Game(std::move(signs), std::move(weights));
}

}  // namespace xg
