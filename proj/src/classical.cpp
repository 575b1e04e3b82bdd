#include "xg/classical.hpp"

#include "xg/errors.hpp"
#include "xg/rng.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <future>
#include <numeric>

namespace xg {

namespace {

/// Per-entry tables driving the enumeration loops: for entry e of the tensor,
/// head_mask marks which (player,question) sign bits of players 1..N-1 touch
/// it, and tail_index is the last player's question.
struct EntryTables {
    std::vector<double> value;
    std::vector<std::uint64_t> head_mask;
    std::vector<std::uint32_t> tail_index;
    std::vector<std::uint32_t> question;  // [entry*N + player]
    std::size_t head_bits = 0;
    std::size_t tail_bits = 0;
    std::vector<std::size_t> offsets;  // position of (player,question 0) in the bit string
};

EntryTables build_tables(const NTensor& m) {
    EntryTables t;
    const auto& dims = m.dims();
    const std::size_t players = dims.size();
    t.offsets.resize(players);
    std::size_t pos = 0;
    for (std::size_t k = 0; k < players; ++k) {
        t.offsets[k] = pos;
        pos += dims[k];
    }
    t.tail_bits = dims[players - 1];
    t.head_bits = pos - t.tail_bits;
    const std::size_t total = m.size();
    t.value.resize(total);
    t.head_mask.resize(total);
    t.tail_index.resize(total);
    t.question.resize(total * players);
    std::vector<std::size_t> idx(players);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t f = flat;
        for (std::size_t k = players; k-- > 0;) {
            idx[k] = f % dims[k];
            f /= dims[k];
        }
        t.value[flat] = m[flat].real();
        std::uint64_t mask = 0;
        for (std::size_t k = 0; k + 1 < players; ++k) {
            // Bit 0 of the head integer is the most significant position in
            // lexicographic order, so flip within head_bits.
            const std::size_t p = t.offsets[k] + idx[k];
            mask |= std::uint64_t(1) << (t.head_bits - 1 - p);
        }
        t.head_mask[flat] = mask;
        t.tail_index[flat] = static_cast<std::uint32_t>(idx[players - 1]);
        for (std::size_t k = 0; k < players; ++k)
            t.question[flat * players + k] = static_cast<std::uint32_t>(idx[k]);
    }
    return t;
}

struct RangeBest {
    double value = -1.0;
    std::uint64_t head = 0;
    std::uint64_t tail = 0;
};

RangeBest enumerate_range(const EntryTables& t, std::uint64_t head_begin, std::uint64_t head_end) {
    RangeBest best;
    const std::size_t total = t.value.size();
    const std::size_t nq = t.tail_bits;
    std::vector<double> marginal(nq);
    for (std::uint64_t head = head_begin; head < head_end; ++head) {
        std::fill(marginal.begin(), marginal.end(), 0.0);
        for (std::size_t e = 0; e < total; ++e) {
            const bool flip = (std::popcount(head & t.head_mask[e]) & 1) != 0;
            marginal[t.tail_index[e]] += flip ? -t.value[e] : t.value[e];
        }
        for (std::uint64_t tail = 0; tail < (std::uint64_t(1) << nq); ++tail) {
            double v = 0.0;
            for (std::size_t j = 0; j < nq; ++j) {
                const bool neg = ((tail >> (nq - 1 - j)) & 1ULL) != 0;
                v += neg ? -marginal[j] : marginal[j];
            }
            v = std::abs(v);
            if (v > best.value) {
                best.value = v;
                best.head = head;
                best.tail = tail;
            }
        }
    }
    return best;
}

ClassicalStrategy decode_witness(const EntryTables& t, const std::vector<std::size_t>& dims,
                                 std::uint64_t head, std::uint64_t tail) {
    ClassicalStrategy s;
    const std::size_t players = dims.size();
    s.signs.resize(players);
    for (std::size_t k = 0; k < players; ++k) {
        s.signs[k].resize(dims[k]);
        for (std::size_t i = 0; i < dims[k]; ++i) {
            const std::size_t p = t.offsets[k] + i;
            bool neg;
            if (k + 1 < players) {
                neg = ((head >> (t.head_bits - 1 - p)) & 1ULL) != 0;
            } else {
                neg = ((tail >> (t.tail_bits - 1 - i)) & 1ULL) != 0;
            }
            s.signs[k][i] = neg ? -1 : 1;
        }
    }
    return s;
}

void require_real(const NTensor& m, const char* who) {
    if (m.field() != Field::Real)
        throw UsageError(std::string(who) + ": requires a Real-tagged tensor");
}

}  // namespace

ClassicalStrategy ClassicalStrategy::all_plus(const std::vector<std::size_t>& dims) {
    ClassicalStrategy s;
    s.signs.resize(dims.size());
    for (std::size_t k = 0; k < dims.size(); ++k) s.signs[k].assign(dims[k], 1);
    return s;
}

std::string ClassicalStrategy::encode() const {
    std::string out;
    for (std::size_t k = 0; k < signs.size(); ++k) {
        if (k) out += '|';
        for (int v : signs[k]) out += (v > 0 ? '+' : '-');
    }
    return out;
}

double classical_value(const NTensor& m, const ClassicalStrategy& s) {
    require_real(m, "classical_value");
    const auto& dims = m.dims();
    if (s.signs.size() != dims.size()) throw ShapeError("classical_value: player count mismatch");
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (s.signs[k].size() != dims[k]) throw ShapeError("classical_value: question count mismatch");
    }
    double sum = 0.0;
    std::vector<std::size_t> idx(dims.size());
    for (std::size_t flat = 0; flat < m.size(); ++flat) {
        std::size_t f = flat;
        int prod = 1;
        for (std::size_t k = dims.size(); k-- > 0;) {
            prod *= s.signs[k][f % dims[k]];
            f /= dims[k];
        }
        sum += prod * m[flat].real();
    }
    return sum;
}

std::complex<double> phase_value(const NTensor& m, const PhaseStrategy& s) {
    const auto& dims = m.dims();
    if (s.phases.size() != dims.size()) throw ShapeError("phase_value: player count mismatch");
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (s.phases[k].size() != dims[k]) throw ShapeError("phase_value: question count mismatch");
        for (const auto& p : s.phases[k]) {
            if (std::abs(p) > 1.0 + 1e-12)
                throw UsageError("phase_value: scalar outside the unit disc");
        }
    }
    std::complex<double> sum = 0.0;
    for (std::size_t flat = 0; flat < m.size(); ++flat) {
        std::size_t f = flat;
        std::complex<double> prod = 1.0;
        for (std::size_t k = dims.size(); k-- > 0;) {
            prod *= s.phases[k][f % dims[k]];
            f /= dims[k];
        }
        sum += prod * m[flat];
    }
    return sum;
}

ClassicalBiasResult classical_bias_exact(const NTensor& m, const Caps& caps) {
    require_real(m, "classical_bias_exact");
    const auto& dims = m.dims();
    std::size_t bits = std::accumulate(dims.begin(), dims.end(), std::size_t(0));
    if (bits > caps.enumeration_bits)
        throw ResourceError("classical_bias_exact: " + std::to_string(bits) +
                            " sign bits exceed the enumeration cap of " +
                            std::to_string(caps.enumeration_bits));

    const EntryTables tables = build_tables(m);
    const std::uint64_t heads = std::uint64_t(1) << tables.head_bits;

    // Workers take contiguous head ranges; since the head's leading bits are
    // player one's assignment, this partitions the first player's space. The
    // merge below is order-deterministic.
    const int workers = std::max(1, std::min<int>(thread_count(), static_cast<int>(std::min<std::uint64_t>(heads, 64))));
    std::vector<RangeBest> results;
    if (workers == 1) {
        results.push_back(enumerate_range(tables, 0, heads));
    } else {
        std::vector<std::future<RangeBest>> futures;
        const std::uint64_t chunk = (heads + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const std::uint64_t begin = std::min<std::uint64_t>(heads, w * chunk);
            const std::uint64_t end = std::min<std::uint64_t>(heads, begin + chunk);
            futures.push_back(std::async(std::launch::async, [&, begin, end] {
                return enumerate_range(tables, begin, end);
            }));
        }
        for (auto& f : futures) results.push_back(f.get());
    }

    RangeBest best;  // value -1 sentinel; any range beats it
    for (const RangeBest& r : results) {
        if (r.value > best.value) best = r;  // ranges are ordered; ties keep the earlier head
    }
    ClassicalBiasResult out;
    out.value = best.value;
    out.witness = decode_witness(tables, dims, best.head, best.tail);
    return out;
}

ClassicalBiasResult classical_bias_heuristic(const NTensor& m, int restarts, std::uint64_t seed) {
    require_real(m, "classical_bias_heuristic");
    const auto& dims = m.dims();
    const std::size_t players = dims.size();
    const EntryTables tables = build_tables(m);
    const std::size_t total = tables.value.size();

    ClassicalBiasResult best;
    best.value = 0.0;
    best.witness = ClassicalStrategy::all_plus(dims);

    std::vector<std::vector<int>> signs(players);
    std::vector<double> marginal;
    for (int r = 0; r < restarts; ++r) {
        Rng rng(seed + static_cast<std::uint64_t>(r));
        for (std::size_t k = 0; k < players; ++k) {
            signs[k].resize(dims[k]);
            for (auto& v : signs[k]) v = rng.sign();
        }
        double value = 0.0;
        for (std::size_t e = 0; e < total; ++e) {
            int prod = 1;
            for (std::size_t k = 0; k < players; ++k)
                prod *= signs[k][tables.question[e * players + k]];
            value += prod * tables.value[e];
        }
        for (int sweep = 0; sweep < 1000; ++sweep) {
            bool changed = false;
            for (std::size_t k = 0; k < players; ++k) {
                marginal.assign(dims[k], 0.0);
                for (std::size_t e = 0; e < total; ++e) {
                    int prod = 1;
                    for (std::size_t l = 0; l < players; ++l) {
                        if (l == k) continue;
                        prod *= signs[l][tables.question[e * players + l]];
                    }
                    marginal[tables.question[e * players + k]] += prod * tables.value[e];
                }
                double player_term = 0.0;
                for (std::size_t i = 0; i < dims[k]; ++i) {
                    // Conditional update: align with the marginal, keep the
                    // incumbent on a zero marginal so ascent is monotone.
                    if (marginal[i] > 0.0 && signs[k][i] < 0) {
                        signs[k][i] = 1;
                        changed = true;
                    } else if (marginal[i] < 0.0 && signs[k][i] > 0) {
                        signs[k][i] = -1;
                        changed = true;
                    }
                    player_term += marginal[i] * signs[k][i];
                }
                value = player_term;
            }
            if (!changed) break;
        }
        if (value < 0.0) {
            // Global flip of player one negates the sum exactly.
            for (auto& v : signs[0]) v = -v;
            value = -value;
        }
        if (value > best.value) {
            best.value = value;
            best.witness.signs = signs;
        }
    }
    return best;
}

namespace {

double phase_ascent(const NTensor& m, int restarts, std::uint64_t seed) {
    const auto& dims = m.dims();
    const std::size_t players = dims.size();
    const std::size_t total = m.size();
    std::vector<std::uint32_t> question(total * players);
    {
        std::vector<std::size_t> idx(players);
        for (std::size_t flat = 0; flat < total; ++flat) {
            std::size_t f = flat;
            for (std::size_t k = players; k-- > 0;) {
                question[flat * players + k] = static_cast<std::uint32_t>(f % dims[k]);
                f /= dims[k];
            }
        }
    }

    double best = 0.0;
    std::vector<std::vector<std::complex<double>>> phases(players);
    std::vector<std::complex<double>> marginal;
    for (int r = 0; r < restarts; ++r) {
        Rng rng(seed + static_cast<std::uint64_t>(r));
        for (std::size_t k = 0; k < players; ++k) {
            phases[k].resize(dims[k]);
            for (auto& p : phases[k]) p = rng.unit_phase();
        }
        double objective = 0.0;
        for (int sweep = 0; sweep < 500; ++sweep) {
            const double before = objective;
            for (std::size_t k = 0; k < players; ++k) {
                marginal.assign(dims[k], std::complex<double>(0.0, 0.0));
                for (std::size_t e = 0; e < total; ++e) {
                    std::complex<double> prod = 1.0;
                    for (std::size_t l = 0; l < players; ++l) {
                        if (l == k) continue;
                        prod *= phases[l][question[e * players + l]];
                    }
                    marginal[question[e * players + k]] += prod * m[e];
                }
                objective = 0.0;
                for (std::size_t i = 0; i < dims[k]; ++i) {
                    const double mag = std::abs(marginal[i]);
                    if (mag > 0.0) phases[k][i] = std::conj(marginal[i]) / mag;
                    objective += mag;
                }
            }
            if (objective - before < 1e-12 * std::max(1.0, objective)) break;
        }
        if (objective > best) best = objective;
    }
    return best;
}

}  // namespace

double norm_inf(const NTensor& m, Field field, NormMode mode, std::uint64_t seed, int restarts,
                const Caps& caps) {
    if (field == Field::Real) {
        if (mode == NormMode::Exact) return classical_bias_exact(m, caps).value;
        return classical_bias_heuristic(m, restarts, seed).value;
    }
    if (mode == NormMode::Exact)
        throw UsageError("norm_inf: exact complex maximization is not supported");
    return phase_ascent(m, restarts, seed);
}

}  // namespace xg
