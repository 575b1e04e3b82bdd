#pragma once

#include "xg/classical.hpp"
#include "xg/config.hpp"
#include "xg/entangle.hpp"
#include "xg/tensor.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace xg {

/// sum_i v_1(i)...v_k(i), no conjugation.
std::complex<double> generalized_inner_product(std::span<const Cvec> vectors);

/// +-1-valued observables per player and question, acting on a shared state.
/// Player k's factor has dimension local_dims[k]; the state is player-major.
struct ObservableStrategy {
    std::vector<std::vector<Eigen::MatrixXcd>> observables;  // [player][question]
    Cvec state;
    std::vector<std::size_t> local_dims;

    /// Hermiticity, M^2 = I, and state normalization, all within 1e-9.
    void validate() const;
};

/// |sum_I M[I] <psi| (x)_k M_k(i_k) |psi>|. Each inner expectation must be
/// real within 1e-9 (Hermitian observables), which is asserted.
double evaluate_strategy(const NTensor& m, const ObservableStrategy& s);

/// Unit-vector families per player and question.
struct VectorStrategy {
    std::vector<std::vector<Cvec>> vectors;  // [player][question]
};

struct SeesawOptions {
    int restarts = 8;
    int max_iters = 200;
    double tol = 1e-9;
    std::uint64_t seed = 0;
};

struct VectorSeesawResult {
    double value = 0.0;
    VectorStrategy strategy;
    int best_restart = -1;
};

/// Alternating ascent for the 2-player vector bias
/// max sum M[i,j] <u_i, v_j> over real unit vectors of dimension
/// min(n_1,n_2)+1. A lower bound on the entangled bias.
VectorSeesawResult tsirelson_bias(const NTensor& m, const SeesawOptions& opt = {});

/// Alternating ascent for gamma*: unit vectors in K^dim combined by
/// generalized inner products. With all but one player fixed the objective is
/// linear in that player's family, so the closed-form update is
/// f_k(i) <- normalize(conj(c_{k,i})); zero coefficients keep the incumbent.
/// dim 0 selects the default 2*max(n_k). Returns a lower bound on gamma*(M).
VectorSeesawResult gamma_star(const NTensor& m, std::size_t dim, const SeesawOptions& opt = {},
                              Field field = Field::Complex);

struct ObservableSeesawResult {
    double value = 0.0;
    ObservableStrategy strategy;
    int best_restart = -1;
};

/// Observable see-saw with the state held fixed. Per player the objective is
/// linear in that player's observables; the maximizer of Re tr(F M) over
/// Hermitian unitaries is the eigen-sign rounding of (F+F')/2 with
/// sign(0) = +1. Warm starts run before the seeded random restarts.
ObservableSeesawResult ghz_bias_seesaw(const NTensor& m, std::size_t dim,
                                       const SeesawOptions& opt = {},
                                       std::span<const ObservableStrategy> warm_starts = {});
ObservableSeesawResult schmidt_bias_seesaw(const NTensor& m, std::span<const double> alpha,
                                           const SeesawOptions& opt = {},
                                           std::span<const ObservableStrategy> warm_starts = {});
ObservableSeesawResult cliquewise_bias_seesaw(const NTensor& m, const Hypergraph& h,
                                              std::size_t dim, const SeesawOptions& opt = {},
                                              std::span<const ObservableStrategy> warm_starts = {});

/// d-dimensional GHZ state of N players, normalized.
Cvec ghz_state(std::size_t players, std::size_t dim);
/// sum_i alpha_i |i..i> for nonnegative normalized alpha.
Cvec schmidt_state(std::size_t players, std::span<const double> alpha);

/// Bias-chain lifts. Each preserves the evaluated value exactly.
ObservableStrategy lift_classical(const ClassicalStrategy& s);
ObservableStrategy lift_to_cliquewise(const ObservableStrategy& ghz, const Hypergraph& h,
                                      std::size_t covering_edge);

/// Product strategy for the XOR-repeated game: question (i,j) gets
/// M^a_k(i) (x) M^b_k(j) on the product state.
ObservableStrategy tensor_strategies(const ObservableStrategy& a, const ObservableStrategy& b);

/// The column extraction behind the GHZ-to-gamma* bound: the j-th columns of
/// the observables form a unit-vector family, and the best column's
/// generalized-inner-product objective dominates the strategy's bias.
struct ColumnExtraction {
    double best_value = 0.0;
    std::size_t best_column = 0;
    VectorStrategy vectors;
    std::vector<double> column_values;  // |g_j| per column
};
ColumnExtraction ghz_column_strategy(const NTensor& m, const ObservableStrategy& s);

}  // namespace xg
