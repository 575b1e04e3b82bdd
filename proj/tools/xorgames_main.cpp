// xorgames: construct multiplayer XOR games, compute classical and
// entanglement-restricted biases, certify the Grothendieck-type gap bounds,
// and evaluate discrepancy communication lower bounds.

#include "xg/catalog.hpp"
#include "xg/classical.hpp"
#include "xg/comm.hpp"
#include "xg/config.hpp"
#include "xg/errors.hpp"
#include "xg/game.hpp"
#include "xg/quantum.hpp"
#include "xg/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::vector<double> parse_alpha(const std::string& csv) {
    std::vector<double> alpha;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) alpha.push_back(std::stod(tok));
    }
    if (alpha.empty()) throw xg::UsageError("empty --alpha list");
    return alpha;
}

void emit_game(const xg::Game& game, const std::string& out_path) {
    if (out_path.empty()) {
        xg::write_game(std::cout, game);
    } else {
        xg::write_game_file(out_path, game);
    }
}

int emit_reports(const std::vector<xg::VerificationReport>& reports) {
    std::size_t violations = 0;
    for (const auto& r : reports) {
        std::cout << xg::format_report(r) << "\n";
        if (!r.pass) ++violations;
    }
    if (!reports.empty()) {
        std::cout << "suite=" << reports.front().suite << " trials=" << reports.size()
                  << " violations=" << violations << "\n";
    }
    return violations == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multiplayer XOR games: biases, gap certification, discrepancy bounds"};
    app.require_subcommand(1);

    // game make
    auto* game_cmd = app.add_subcommand("game", "game construction");
    game_cmd->require_subcommand(1);
    auto* make_cmd = game_cmd->add_subcommand("make", "construct a named or random game");
    std::string make_name;
    std::size_t make_bits = 1, make_players = 2, make_questions = 2, make_cells = 0;
    std::uint64_t make_seed = 0;
    std::string make_support = "full";
    std::string make_out;
    make_cmd->add_option("name", make_name, "chsh|mermin|gip|random")->required();
    make_cmd->add_option("--n", make_bits, "input bits per player (gip)");
    make_cmd->add_option("--players", make_players, "player count (gip, random)");
    make_cmd->add_option("--questions", make_questions, "questions per player (random)");
    make_cmd->add_option("--seed", make_seed, "random seed");
    make_cmd->add_option("--support", make_support, "full|sparse (random)");
    make_cmd->add_option("--cells", make_cells, "support size for sparse");
    make_cmd->add_option("--out", make_out, "output path (default stdout)");

    // repeat
    auto* repeat_cmd = app.add_subcommand("repeat", "XOR-repeat a game");
    std::string repeat_file, repeat_out;
    std::size_t repeat_times = 1;
    repeat_cmd->add_option("game", repeat_file, "game file")->required();
    repeat_cmd->add_option("--times", repeat_times, "number of copies")->required();
    repeat_cmd->add_option("--out", repeat_out, "output path (default stdout)");

    // bias classical|quantum
    auto* bias_cmd = app.add_subcommand("bias", "bias computation");
    bias_cmd->require_subcommand(1);
    auto* classical_cmd = bias_cmd->add_subcommand("classical", "classical bias");
    std::string classical_file;
    bool classical_exact = false, classical_heuristic = false;
    int classical_restarts = 32;
    std::uint64_t classical_seed = 0;
    classical_cmd->add_option("game", classical_file, "game file")->required();
    classical_cmd->add_flag("--exact", classical_exact, "exact enumeration (default)");
    classical_cmd->add_flag("--heuristic", classical_heuristic, "conditional-sign ascent");
    classical_cmd->add_option("--restarts", classical_restarts, "heuristic restarts");
    classical_cmd->add_option("--seed", classical_seed, "heuristic seed");

    auto* quantum_cmd = bias_cmd->add_subcommand("quantum", "entanglement-restricted bias");
    std::string quantum_file, quantum_model, quantum_alpha, quantum_hypergraph;
    std::size_t quantum_dim = 2;
    int quantum_restarts = 8;
    std::uint64_t quantum_seed = 0;
    quantum_cmd->add_option("game", quantum_file, "game file")->required();
    quantum_cmd->add_option("--model", quantum_model, "tsirelson|ghz|schmidt|cliquewise|gamma-star")
        ->required();
    quantum_cmd->add_option("--dim", quantum_dim, "local dimension");
    quantum_cmd->add_option("--alpha", quantum_alpha, "Schmidt weights a1,a2,...");
    quantum_cmd->add_option("--hypergraph", quantum_hypergraph, "hypergraph file (cliquewise)");
    quantum_cmd->add_option("--restarts", quantum_restarts, "see-saw restarts");
    quantum_cmd->add_option("--seed", quantum_seed, "see-saw seed");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "inequality certification suites");
    std::string suite, verify_variant = "mixed", verify_model = "ghz";
    std::size_t verify_trials = 100, verify_players = 3, verify_n = 2, verify_dim = 2;
    std::size_t verify_rows = 6, verify_cols = 6, verify_max_n = 12, verify_max_edges = 3;
    std::size_t verify_q = 6, verify_m = 4;
    std::uint64_t verify_seed = 0;
    verify_cmd->add_option("--suite", suite, "tonge|littlewood|khintchine|qcgap|qalgebra|graphstate|phi")
        ->required();
    verify_cmd->add_option("--trials", verify_trials, "trial count");
    verify_cmd->add_option("--seed", verify_seed, "suite seed");
    verify_cmd->add_option("--players", verify_players, "player count");
    verify_cmd->add_option("--n", verify_n, "questions per player");
    verify_cmd->add_option("--dim", verify_dim, "vector/state dimension");
    verify_cmd->add_option("--variant", verify_variant, "tonge: real|complex|mixed; littlewood: pm|matched");
    verify_cmd->add_option("--model", verify_model, "qcgap: ghz|schmidt|cliquewise|gamma-star");
    verify_cmd->add_option("--rows", verify_rows, "littlewood rows");
    verify_cmd->add_option("--cols", verify_cols, "littlewood cols");
    verify_cmd->add_option("--max-n", verify_max_n, "khintchine max length");
    verify_cmd->add_option("--max-edges", verify_max_edges, "phi suite max edge count");
    verify_cmd->add_option("--q", verify_q, "graphstate max vertices");
    verify_cmd->add_option("--m", verify_m, "qalgebra matrix dimension");

    // ccbound
    auto* cc_cmd = app.add_subcommand("ccbound", "discrepancy communication lower bounds");
    std::string cc_file, cc_against;
    double cc_eps = 0.0;
    bool cc_quantum = false, cc_entangled = false;
    std::size_t cc_cliques = 1, cc_dim = 2;
    cc_cmd->add_option("game", cc_file, "target game file (signs = A, weights = pi)")->required();
    cc_cmd->add_option("--against", cc_against, "witness game file B (default: the target)");
    cc_cmd->add_option("--eps", cc_eps, "error parameter")->required();
    cc_cmd->add_flag("--quantum", cc_quantum, "quantum clique-wise bound");
    cc_cmd->add_option("--cliques", cc_cliques, "coalition count k");
    cc_cmd->add_flag("--entangled", cc_entangled, "illustrative entangled-denominator bound");
    cc_cmd->add_option("--dim", cc_dim, "GHZ dimension for --entangled");
    std::size_t cc_bns_bits = 0;
    cc_cmd->add_option("--bns-bits", cc_bns_bits,
                       "also print the n/2^{2N} reference value for an n-bit inner-product game");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cout << "error=usage detail=" << e.what() << "\n";
        return 2;
    }

    try {
        if (*make_cmd) {
            xg::Game game = [&] {
                if (make_name == "chsh") return xg::chsh();
                if (make_name == "mermin") return xg::mermin();
                if (make_name == "gip") return xg::gip(make_bits, make_players);
                if (make_name == "random") {
                    const xg::Support support = (make_support == "sparse")
                                                    ? xg::Support::Sparse
                                                    : xg::Support::Full;
                    if (make_support != "full" && make_support != "sparse")
                        throw xg::UsageError("unknown --support value: " + make_support);
                    return xg::random_game(make_players, make_questions, make_seed, support,
                                           make_cells);
                }
                throw xg::UsageError("unknown game name: " + make_name);
            }();
            emit_game(game, make_out);
            return 0;
        }

        if (*repeat_cmd) {
            const xg::Game game = xg::read_game_file(repeat_file);
            emit_game(xg::xor_repeat(game, repeat_times), repeat_out);
            return 0;
        }

        if (*classical_cmd) {
            const xg::Game game = xg::read_game_file(classical_file);
            const xg::NTensor b = game.effective();
            const xg::ClassicalBiasResult result =
                classical_heuristic
                    ? xg::classical_bias_heuristic(b, classical_restarts, classical_seed)
                    : xg::classical_bias_exact(b);
            std::cout << "value=" << fmt(result.value) << " witness=" << result.witness.encode()
                      << "\n";
            return 0;
        }

        if (*quantum_cmd) {
            const xg::Game game = xg::read_game_file(quantum_file);
            const xg::NTensor b = game.effective();
            xg::SeesawOptions opts;
            opts.restarts = quantum_restarts;
            opts.seed = quantum_seed;
            double value = 0.0;
            if (quantum_model == "tsirelson") {
                value = xg::tsirelson_bias(b, opts).value;
            } else if (quantum_model == "ghz") {
                value = xg::ghz_bias_seesaw(b, quantum_dim, opts).value;
            } else if (quantum_model == "schmidt") {
                if (quantum_alpha.empty()) throw xg::UsageError("schmidt model needs --alpha");
                value = xg::schmidt_bias_seesaw(b, parse_alpha(quantum_alpha), opts).value;
            } else if (quantum_model == "cliquewise") {
                if (quantum_hypergraph.empty())
                    throw xg::UsageError("cliquewise model needs --hypergraph");
                const xg::Hypergraph h = xg::read_hypergraph_file(quantum_hypergraph);
                value = xg::cliquewise_bias_seesaw(b, h, quantum_dim, opts).value;
            } else if (quantum_model == "gamma-star") {
                value = xg::gamma_star(b, quantum_dim, opts).value;
            } else {
                throw xg::UsageError("unknown --model value: " + quantum_model);
            }
            std::cout << "value=" << fmt(value) << " model=" << quantum_model
                      << " dim=" << quantum_dim << " restarts=" << quantum_restarts
                      << " seed=" << quantum_seed << "\n";
            return 0;
        }

        if (*verify_cmd) {
            std::vector<xg::VerificationReport> reports;
            if (suite == "tonge") {
                xg::TongeVariant variant;
                if (verify_variant == "real")
                    variant = xg::TongeVariant::Real;
                else if (verify_variant == "complex")
                    variant = xg::TongeVariant::Complex;
                else if (verify_variant == "mixed")
                    variant = xg::TongeVariant::Mixed;
                else
                    throw xg::UsageError("unknown tonge variant: " + verify_variant);
                reports = xg::tonge_suite(verify_players, verify_n, verify_dim, verify_trials,
                                          verify_seed, variant);
            } else if (suite == "littlewood") {
                xg::LittlewoodVariant variant;
                if (verify_variant == "pm" || verify_variant == "mixed")
                    variant = xg::LittlewoodVariant::ComplexPm;
                else if (verify_variant == "matched")
                    variant = xg::LittlewoodVariant::FieldMatched;
                else
                    throw xg::UsageError("unknown littlewood variant: " + verify_variant);
                reports = xg::littlewood_suite(verify_rows, verify_cols, verify_trials, verify_seed,
                                               variant);
            } else if (suite == "khintchine") {
                reports = xg::khintchine_suite(verify_max_n, verify_trials, verify_seed);
            } else if (suite == "qcgap") {
                xg::QcGapModel model;
                if (verify_model == "ghz")
                    model = xg::QcGapModel::Ghz;
                else if (verify_model == "schmidt")
                    model = xg::QcGapModel::Schmidt;
                else if (verify_model == "cliquewise")
                    model = xg::QcGapModel::Cliquewise;
                else if (verify_model == "gamma-star")
                    model = xg::QcGapModel::GammaStar;
                else
                    throw xg::UsageError("unknown qcgap model: " + verify_model);
                reports = xg::qc_gap_suite(verify_trials, verify_seed, model, verify_players,
                                           verify_n, verify_dim);
            } else if (suite == "qalgebra") {
                reports = xg::q_algebra_suite(verify_trials, verify_seed, verify_players, verify_n,
                                              verify_m);
            } else if (suite == "graphstate") {
                reports = xg::graph_functional_suite(verify_trials, verify_seed, verify_q, verify_n);
            } else if (suite == "phi") {
                reports = xg::phi_agreement_suite(verify_trials, verify_seed, verify_max_edges,
                                                  verify_dim);
            } else {
                throw xg::UsageError("unknown suite: " + suite);
            }
            return emit_reports(reports);
        }

        if (*cc_cmd) {
            const xg::Game a = xg::read_game_file(cc_file);
            const xg::Game b = cc_against.empty() ? a : xg::read_game_file(cc_against);
            xg::LowerBoundRecord rec;
            if (cc_quantum) {
                rec = xg::cliquewise_quantum_bound(a.signs(), b, cc_eps, cc_cliques);
            } else if (cc_entangled) {
                rec = xg::gen_disc_bound_entangled(a.signs(), b, cc_eps, cc_dim);
            } else {
                rec = xg::gen_disc_bound(a.signs(), b, cc_eps);
            }
            rec.target = cc_file;
            rec.witness = cc_against.empty() ? cc_file : cc_against;
            std::cout << "target=" << rec.target << " witness=" << rec.witness << " model="
                      << (rec.model == xg::CommModel::Randomized
                              ? "randomized"
                              : rec.model == xg::CommModel::Entangled ? "entangled"
                                                                      : "quantum-cliquewise")
                      << " correlation=" << fmt(rec.correlation) << " bias=" << fmt(rec.bias)
                      << " eps=" << fmt(rec.epsilon) << " has_bound=" << (rec.has_bound ? 1 : 0)
                      << " bound=" << fmt(rec.bound) << " reported=" << fmt(rec.reported_bound);
            if (rec.model == xg::CommModel::QuantumCliquewise)
                std::cout << " additive=" << fmt(rec.additive_constant);
            if (!rec.certified) std::cout << " certified=0";
            if (cc_bns_bits > 0) {
                // Descriptive reference only: the n/2^{2N} discrepancy bound
                // for the n-bit inner-product game; no assertion relates the
                // two at this scale.
                const double bns = static_cast<double>(cc_bns_bits) /
                                   std::exp2(2.0 * static_cast<double>(b.players()));
                std::cout << " bns=" << fmt(bns);
            }
            std::cout << "\n";
            return 0;
        }
    } catch (const std::logic_error& e) {
        // A failed internal identity is a genuine counterexample or bug.
        std::cout << "error=violation detail=" << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cout << "error=invalid detail=" << e.what() << "\n";
        return 2;
    }
    return 2;
}
