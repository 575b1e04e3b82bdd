#pragma once

#include "xg/config.hpp"
#include "xg/entangle.hpp"
#include "xg/game.hpp"
#include "xg/quantum.hpp"
#include "xg/tensor.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace xg {

/// One certified comparison: pass iff rhs*constant - lhs >= -1e-7. Suites
/// whose right-hand side is itself a heuristic lower bound are flagged
/// non-certified; a pass is still sound, a failure is not a counterexample.
struct VerificationReport {
    std::string suite;
    std::uint64_t trial = 0;
    std::string instance;  // seed/sizes descriptor
    double lhs = 0.0;
    double rhs = 0.0;
    double constant = 1.0;
    double margin = 0.0;  // rhs*constant - lhs
    bool pass = false;
    bool certified = true;
    std::string witness;
};

VerificationReport make_report(std::string suite, std::uint64_t trial, std::string instance,
                               double lhs, double rhs, double constant, bool certified = true,
                               std::string witness = {});

/// "suite=<s> trial=<t> lhs=<v> rhs=<v> const=<v> margin=<v> pass=<0|1>",
/// with " certified=0" appended for non-certified records.
std::string format_report(const VerificationReport& report);

/// Deterministic per-trial seed derivation.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt);

enum class TongeVariant { Real, Complex, Mixed };

/// Vector-valued multilinear form against the scalar norm: random tensors,
/// random unit-vector witnesses plus a gamma* see-saw strengthening.
/// Mixed: real tensor, complex vectors, 2^{(3N-5)/2} K_G^C vs exact real norm.
/// Real: real vectors, 2^{(N-2)/2} K_G^R vs exact real norm.
/// Complex: complex vectors, 2^{(N-2)/2} K_G^C vs the heuristic complex norm
/// (non-certified; the right side is itself a lower bound).
std::vector<VerificationReport> tonge_suite(std::size_t players, std::size_t n, std::size_t d,
                                            std::size_t trials, std::uint64_t seed,
                                            TongeVariant variant, const Caps& caps = global_caps());

enum class LittlewoodVariant { ComplexPm, FieldMatched };

/// Row-norm sum of a complex matrix against 2*sqrt(2) times the exact +-1 row
/// maximum (the column maximization is the analytic modulus sum), or against
/// sqrt(2) times a heuristic phase maximum (non-certified).
std::vector<VerificationReport> littlewood_suite(std::size_t rows, std::size_t cols,
                                                 std::size_t trials, std::uint64_t seed,
                                                 LittlewoodVariant variant);

/// E|sum c_i eps_i| / ||c||_2 computed exactly over all 2^n sign patterns
/// (n <= 24). Throws on the zero vector; a ratio below 1/sqrt(2) - 1e-12
/// would contradict the sharp L1 constant and raises logic_error.
double khintchine_ratio(std::span<const double> c);

std::vector<VerificationReport> khintchine_suite(std::size_t max_n, std::size_t trials,
                                                 std::uint64_t seed);

enum class QcGapModel { Ghz, Schmidt, Cliquewise, GammaStar };

struct QcGapParams {
    QcGapModel model = QcGapModel::Ghz;
    std::size_t dim = 2;
    std::vector<double> alpha;  // Schmidt weights
    Hypergraph hypergraph;      // clique-wise coalitions
    SeesawOptions opts;
};

/// See-saw lower bound on the restricted entangled bias against the exact
/// classical bias times the matching gap constant.
VerificationReport verify_qc_gap(const Game& game, const QcGapParams& params,
                                 std::uint64_t trial = 0, const Caps& caps = global_caps());

std::vector<VerificationReport> qc_gap_suite(std::size_t trials, std::uint64_t seed,
                                             QcGapModel model, std::size_t players,
                                             std::size_t max_n, std::size_t max_d,
                                             const Caps& caps = global_caps());

/// Spectral norm of sum_I A[I] f_1(i_1) schur ... schur f_N(i_N) for
/// contraction matrices, against the Schmidt gap constant times the exact
/// real norm of A. Non-Hermitian inputs are Hermitian-doubled internally,
/// which preserves both sides.
VerificationReport verify_q_algebra(const NTensor& a,
                                    const std::vector<std::vector<Eigen::MatrixXcd>>& matrices,
                                    std::uint64_t trial = 0, const Caps& caps = global_caps());

std::vector<VerificationReport> q_algebra_suite(std::size_t trials, std::uint64_t seed,
                                                std::size_t max_players, std::size_t max_n,
                                                std::size_t matrix_dim,
                                                const Caps& caps = global_caps());

/// |sum A[i,j,k] Phi_G(f1(i) (x) f2(j) (x) f3(k))| against
/// 2^{q/2} * cliquewise constant * exact real norm, on random graphs and
/// partitions.
std::vector<VerificationReport> graph_functional_suite(std::size_t trials, std::uint64_t seed,
                                                       std::size_t max_vertices, std::size_t n,
                                                       const Caps& caps = global_caps());

/// Two-path agreement of Phi on tensor-structured inputs: the direct tuple
/// expansion against the product of per-edge generalized inner products.
/// lhs is the absolute difference, rhs the 1e-10 budget.
std::vector<VerificationReport> phi_agreement_suite(std::size_t trials, std::uint64_t seed,
                                                    std::size_t max_edges, std::size_t dim);

}  // namespace xg
