#include "xg/game.hpp"

#include "xg/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace xg {

namespace {

constexpr double kWeightSumTol = 1e-9;

void check_weights(const NTensor& weights) {
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i].real() < 0.0 || weights[i].imag() != 0.0)
            throw UsageError("game weights must be nonnegative reals");
    }
}

}  // namespace

Game::Game(NTensor signs, NTensor weights) : signs_(std::move(signs)), weights_(std::move(weights)) {
    if (!signs_.same_shape(weights_)) throw ShapeError("game: sign tensor and distribution shape mismatch");
    if (signs_.field() != Field::Real) throw UsageError("game: sign tensor must be real");
    for (std::size_t i = 0; i < signs_.size(); ++i) {
        const double s = signs_[i].real();
        if (s != 1.0 && s != -1.0) throw UsageError("game: sign entries must be +1 or -1");
    }
    if (weights_.field() != Field::Real) throw UsageError("game: distribution must be real");
    check_weights(weights_);
    double sum = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i) sum += weights_[i].real();
    if (std::abs(sum - 1.0) > kWeightSumTol)
        throw UsageError("game: distribution sums to " + std::to_string(sum) + ", not 1");
    if (sum != 1.0) {
        for (std::size_t i = 0; i < weights_.size(); ++i)
            weights_[i] = NTensor::Scalar(weights_[i].real() / sum, 0.0);
    }
}

Game xor_product(const Game& a, const Game& b, const Caps& caps) {
    if (a.players() != b.players()) throw ShapeError("xor_product: player count mismatch");
    const std::vector<std::size_t>& a_dims = a.dims();
    const std::vector<std::size_t>& b_dims = b.dims();
    double bits = 0.0;
    for (std::size_t k = 0; k < a_dims.size(); ++k)
        bits += std::log2(static_cast<double>(a_dims[k]) * static_cast<double>(b_dims[k]));
    if (bits > std::log2(static_cast<double>(caps.max_tensor_entries)))
        throw ResourceError("xor_product: product tensor exceeds the entry cap");

    std::vector<std::size_t> dims(a_dims.size());
    for (std::size_t k = 0; k < dims.size(); ++k) dims[k] = a_dims[k] * b_dims[k];
    NTensor signs(dims, Field::Real);
    NTensor weights(dims, Field::Real);
    const std::size_t total = signs.size();
    std::vector<std::size_t> idx(dims.size());
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t f = flat;
        for (std::size_t k = dims.size(); k-- > 0;) {
            idx[k] = f % dims[k];
            f /= dims[k];
        }
        // Per axis the flattened pair index splits as i_k = a_k*n^b_k + b_k.
        std::size_t a_flat = 0, b_flat = 0;
        for (std::size_t k = 0; k < dims.size(); ++k) {
            a_flat = a_flat * a_dims[k] + idx[k] / b_dims[k];
            b_flat = b_flat * b_dims[k] + idx[k] % b_dims[k];
        }
        signs[flat] = NTensor::Scalar(a.signs()[a_flat].real() * b.signs()[b_flat].real(), 0.0);
        weights[flat] =
            NTensor::Scalar(a.weights()[a_flat].real() * b.weights()[b_flat].real(), 0.0);
    }
    return Game(std::move(signs), std::move(weights));
}

Game xor_repeat(const Game& game, std::size_t times, const Caps& caps) {
    if (times == 0) throw UsageError("xor_repeat: times must be positive");
    double bits = 0.0;
    for (std::size_t d : game.dims()) bits += std::log2(static_cast<double>(d));
    if (bits * static_cast<double>(times) > std::log2(static_cast<double>(caps.max_tensor_entries)))
        throw ResourceError("xor_repeat: repeated tensor exceeds the entry cap");
    Game out = game;
    for (std::size_t step = 1; step < times; ++step) out = xor_product(out, game, caps);
    return out;
}

Game read_game(std::istream& in) {
    std::string line;
    auto next_line = [&](const char* what) {
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) return;
        }
        throw ParseError(std::string("game file: missing ") + what);
    };

    next_line("header");
    if (line != "xorgame v1") throw ParseError("game file: expected 'xorgame v1' header");
    next_line("players line");
    std::istringstream players_line(line);
    std::string tag;
    std::size_t players = 0;
    if (!(players_line >> tag >> players) || tag != "players" || players == 0)
        throw ParseError("game file: malformed players line");
    next_line("questions line");
    std::istringstream questions_line(line);
    std::vector<std::size_t> dims(players);
    if (!(questions_line >> tag) || tag != "questions")
        throw ParseError("game file: malformed questions line");
    for (std::size_t k = 0; k < players; ++k) {
        if (!(questions_line >> dims[k]) || dims[k] == 0)
            throw ParseError("game file: malformed question counts");
    }

    NTensor signs(dims, Field::Real);
    NTensor weights(dims, Field::Real);
    for (std::size_t i = 0; i < signs.size(); ++i) signs[i] = 1.0;

    std::set<std::size_t> seen;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream entry(line);
        if (!(entry >> tag) || tag != "entry") throw ParseError("game file: expected entry line, got '" + line + "'");
        std::vector<std::size_t> index(players);
        for (std::size_t k = 0; k < players; ++k) {
            long long v;
            if (!(entry >> v) || v < 0 || static_cast<std::size_t>(v) >= dims[k])
                throw ParseError("game file: entry index out of range");
            index[k] = static_cast<std::size_t>(v);
        }
        long long sign;
        double weight;
        if (!(entry >> sign >> weight) || (sign != 1 && sign != -1))
            throw ParseError("game file: malformed entry sign/weight");
        const std::size_t flat = signs.flat_index(index);
        if (!seen.insert(flat).second) throw ParseError("game file: duplicate index tuple");
        signs[flat] = static_cast<double>(sign);
        weights[flat] = weight;
    }
    return Game(std::move(signs), std::move(weights));
}

Game read_game_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open game file: " + path);
    return read_game(in);
}

void write_game(std::ostream& out, const Game& game) {
    out << "xorgame v1\n";
    out << "players " << game.players() << "\n";
    out << "questions";
    for (std::size_t d : game.dims()) out << ' ' << d;
    out << "\n";
    char buf[64];
    for (std::size_t flat = 0; flat < game.signs().size(); ++flat) {
        const double w = game.weights()[flat].real();
        if (w == 0.0) continue;
        const auto index = game.signs().unflatten(flat);
        out << "entry";
        for (std::size_t i : index) out << ' ' << i;
        const int sign = game.signs()[flat].real() > 0 ? 1 : -1;
        std::snprintf(buf, sizeof buf, "%.17g", w);
        out << ' ' << (sign > 0 ? "+1" : "-1") << ' ' << buf << "\n";
    }
}

void write_game_file(const std::string& path, const Game& game) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open output file: " + path);
    write_game(out, game);
}

}  // namespace xg
