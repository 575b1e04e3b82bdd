#pragma once

#include "xg/config.hpp"

#include <array>
#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace xg {

using Cvec = std::vector<std::complex<double>>;

/// Schmidt coefficients: positive reals with sum of squares 1.
struct SchmidtCoefficients {
    std::vector<double> alpha;
    explicit SchmidtCoefficients(std::vector<double> a);
};

/// Weights beta of the partial-GHZ expansion sum_l beta_l |phi_l>, where
/// |phi_l> = sum_{i<=l} |i>^{(x)N} is un-normalized. Satisfies
/// sum_{i,j} beta_i beta_j min(i,j) = 1.
struct PartialGhzDecomposition {
    std::vector<double> beta;
    std::vector<double> sorted_alpha;  // descending; the basis relabeling used
};

/// Decompose a Schmidt state into partial GHZ states: after sorting alpha
/// descending, beta_d = alpha_d and beta_i = alpha_i - alpha_{i+1}.
PartialGhzDecomposition schmidt_decompose(const SchmidtCoefficients& coeffs);

/// <phi_i|phi_j> = min(i,j) for the un-normalized partial GHZ states (i,j >= 1).
long long partial_ghz_pairing(long long i, long long j);

/// sum_{i,j} beta_i beta_j min(i,j), the left side of the normalization identity.
double partial_ghz_norm(std::span<const double> beta);

/// Explicit |phi_level> = sum_{i < level} |i..i> in (C^dim)^{(x)players}, un-normalized.
Cvec partial_ghz_state(std::size_t level, std::size_t players, std::size_t dim);

/// Hypergraph over players; edges are vertex subsets of size >= 1. Duplicate
/// edges model distinct state copies and must be explicitly allowed.
struct Hypergraph {
    std::size_t vertices = 0;
    std::vector<std::vector<std::size_t>> edges;  // each sorted ascending
    bool allow_duplicates = false;

    Hypergraph() = default;
    Hypergraph(std::size_t vertex_count, std::vector<std::vector<std::size_t>> edge_list,
               bool allow_duplicate_edges = false);

    /// Indices of edges containing x, ascending.
    std::vector<std::size_t> incidence(std::size_t x) const;
    std::size_t degree(std::size_t x) const { return incidence(x).size(); }
    std::size_t max_edge_size() const;
};

Hypergraph read_hypergraph(std::istream& in);
Hypergraph read_hypergraph_file(const std::string& path);
void write_hypergraph(std::ostream& out, const Hypergraph& h);

/// The triangle plus three-pairs coalition structure on 3 players that hosts
/// any 3-partite stabilizer state.
Hypergraph stabilizer3_hypergraph();

/// True when every edge is a pair or the full triple on 3 vertices with at
/// most one triple, the shape covered by the stabilizer-state bound.
bool is_stabilizer3_hypergraph(const Hypergraph& h);

/// An ordered list of tensor factors (unique ids with dimensions), row-major
/// with the first listed factor most significant.
struct FactorOrder {
    std::vector<int> ids;
    std::vector<std::size_t> dims;
};

/// The re-arranging isometry: permute tensor factors from the source layout
/// to the target layout (same id/dim multiset, ids unique).
Cvec rearrange(const FactorOrder& source, const FactorOrder& target, std::span<const std::complex<double>> v);

/// Clique-wise state in player-major factor order with its bookkeeping.
struct CliquewiseState {
    Cvec amplitudes;                                   // player-major
    std::vector<std::size_t> player_dims;              // d^{deg(x)}
    std::vector<std::vector<std::size_t>> factor_edges;  // per player, edge ids ascending
    std::size_t dim = 0;                               // d
};

/// Build (x)_{e in E} GHZ_d(e) in edge-major order and pull it back through
/// the re-arranging map to player-major order.
CliquewiseState build_cliquewise_state(const Hypergraph& h, std::size_t dim,
                                       const Caps& caps = global_caps());

/// Phi applied to (x)_x v_x by the direct expansion
/// sum_{J in [d]^E} prod_x v_x(J restricted to E(x)).
/// v_x is indexed by the tuple of its incident-edge coordinates, ascending
/// edge index major.
std::complex<double> phi_evaluate(const Hypergraph& h, std::size_t dim,
                                  std::span<const Cvec> vertex_vectors);

/// Phi on tensor-structured inputs v_x = (x)_{e in E(x)} v_{x,e}: the product
/// over edges of per-edge generalized inner products.
std::complex<double> phi_evaluate_structured(const Hypergraph& h, std::size_t dim,
                                             const std::vector<std::vector<Cvec>>& vertex_factors);

/// Simple undirected graph.
struct Graph {
    std::size_t vertices = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// Graph plus a partition of its vertices into three (possibly empty) parts.
struct GraphStateSpec {
    Graph graph;
    std::array<std::vector<std::size_t>, 3> parts;
    void validate() const;
};

GraphStateSpec read_graph_spec(std::istream& in);
GraphStateSpec read_graph_spec_file(const std::string& path);

/// Amplitudes 2^{-q/2} (-1)^{|E(S)|} on basis label S. Qubit v is tensor
/// factor v (vertex 0 most significant).
std::vector<double> graph_state(const Graph& g, const Caps& caps = global_caps());

/// Phi_G by the subset triple-sum; also checks the identity
/// Phi_G = 2^{q/2} (v1 (x) v2 (x) v3) . |Psi> against the graph state
/// rearranged to the partition layout, to 1e-10. The residual of that check
/// is written to identity_residual when given.
std::complex<double> graph_functional(const GraphStateSpec& spec, const Cvec& v1, const Cvec& v2,
                                      const Cvec& v3, double* identity_residual = nullptr);

}  // namespace xg
