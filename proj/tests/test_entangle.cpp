#include "xg/entangle.hpp"
#include "xg/errors.hpp"
#include "xg/quantum.hpp"
#include "xg/rng.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <sstream>

using xg::Cvec;
using xg::Hypergraph;
using xg::SchmidtCoefficients;

namespace {

std::complex<double> bilinear_dot(const Cvec& a, const Cvec& b) {
    std::complex<double> s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

TEST_CASE("schmidt_decompose worked examples") {
    SUBCASE("single coefficient") {
        const auto d = xg::schmidt_decompose(SchmidtCoefficients({1.0}));
        CHECK(d.beta == std::vector<double>{1.0});
        CHECK(xg::partial_ghz_norm(d.beta) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("alpha = (0.8, 0.6)") {
        const auto d = xg::schmidt_decompose(SchmidtCoefficients({0.8, 0.6}));
        CHECK(d.beta[0] == doctest::Approx(0.2).epsilon(1e-15));
        CHECK(d.beta[1] == doctest::Approx(0.6).epsilon(1e-15));
        // 0.2^2*1 + 2*0.2*0.6*1 + 0.6^2*2 = 1
        CHECK(xg::partial_ghz_norm(d.beta) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("uniform alpha collapses to the last level") {
        const auto d = xg::schmidt_decompose(SchmidtCoefficients(std::vector<double>(4, 0.5)));
        CHECK(d.beta[0] == 0.0);
        CHECK(d.beta[1] == 0.0);
        CHECK(d.beta[2] == 0.0);
        CHECK(d.beta[3] == 0.5);
    }
    SUBCASE("input order does not matter") {
        const auto d = xg::schmidt_decompose(SchmidtCoefficients({0.6, 0.8}));
        CHECK(d.sorted_alpha == std::vector<double>{0.8, 0.6});
        CHECK(d.beta[0] == doctest::Approx(0.2).epsilon(1e-15));
    }
    SUBCASE("invalid coefficients are rejected") {
        CHECK_THROWS_AS(SchmidtCoefficients({0.8, -0.6}), xg::UsageError);
        CHECK_THROWS_AS(SchmidtCoefficients({0.8, 0.8}), xg::UsageError);
    }
}

TEST_CASE("schmidt_decompose: reconstruction and normalization, 1000 random draws") {
    xg::Rng rng(101);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t d = 1 + static_cast<std::size_t>(rng.below(16));
        std::vector<double> alpha(d);
        double norm = 0.0;
        for (double& a : alpha) {
            a = std::abs(rng.normal()) + 1e-6;
            norm += a * a;
        }
        norm = std::sqrt(norm);
        for (double& a : alpha) a /= norm;
        const auto dec = xg::schmidt_decompose(SchmidtCoefficients(alpha));
        // Reconstruction: sum_{l>=i} beta_l must equal the sorted alpha_i.
        double tail = 0.0;
        double worst = 0.0;
        std::vector<double> recon(d, 0.0);
        for (std::size_t i = d; i-- > 0;) {
            tail += dec.beta[i];
            recon[i] = tail;
        }
        for (std::size_t i = 0; i < d; ++i)
            worst = std::max(worst, std::abs(recon[i] - dec.sorted_alpha[i]));
        CHECK(worst <= 1e-12);
        CHECK(std::abs(xg::partial_ghz_norm(dec.beta) - 1.0) <= 1e-9);
        for (double b : dec.beta) CHECK(b >= 0.0);
    }
}

TEST_CASE("partial GHZ pairing equals explicit state inner products") {
    CHECK(xg::partial_ghz_pairing(1, 1) == 1);
    CHECK(xg::partial_ghz_pairing(3, 5) == 3);
    CHECK(xg::partial_ghz_pairing(5, 3) == 3);
    CHECK_THROWS_AS((void)xg::partial_ghz_pairing(0, 1), xg::UsageError);

    for (std::size_t players : {2, 3}) {
        for (std::size_t i = 1; i <= 8; ++i) {
            for (std::size_t j = 1; j <= 8; ++j) {
                const Cvec a = xg::partial_ghz_state(i, players, 8);
                const Cvec b = xg::partial_ghz_state(j, players, 8);
                std::complex<double> dot = 0.0;
                for (std::size_t t = 0; t < a.size(); ++t) dot += std::conj(a[t]) * b[t];
                CHECK(dot.real() ==
                      static_cast<double>(xg::partial_ghz_pairing(static_cast<long long>(i),
                                                                  static_cast<long long>(j))));
                CHECK(dot.imag() == 0.0);
            }
        }
    }
}

TEST_CASE("hypergraph structure and io") {
    const Hypergraph h(3, {{0, 1}, {1, 2}});
    CHECK(h.incidence(1) == std::vector<std::size_t>{0, 1});
    CHECK(h.incidence(0) == std::vector<std::size_t>{0});
    CHECK(h.max_edge_size() == 2);

    SUBCASE("duplicate edges need the explicit flag") {
        CHECK_THROWS_AS(Hypergraph(2, {{0, 1}, {0, 1}}), xg::UsageError);
        CHECK_NOTHROW(Hypergraph(2, {{0, 1}, {0, 1}}, true));
    }
    SUBCASE("round trip") {
        std::ostringstream out;
        write_hypergraph(out, h);
        std::istringstream in(out.str());
        const Hypergraph back = xg::read_hypergraph(in);
        CHECK(back.vertices == 3);
        CHECK(back.edges == h.edges);
    }
    SUBCASE("stabilizer shape detection") {
        CHECK(xg::is_stabilizer3_hypergraph(xg::stabilizer3_hypergraph()));
        CHECK(!xg::is_stabilizer3_hypergraph(Hypergraph(3, {{0}, {1, 2}})));
        CHECK(!xg::is_stabilizer3_hypergraph(Hypergraph(4, {{0, 1}, {2, 3}})));
    }
}

TEST_CASE("rearrange is a factor permutation isometry") {
    xg::FactorOrder src{{1, 2, 3}, {2, 3, 2}};
    xg::FactorOrder dst{{3, 1, 2}, {2, 2, 3}};
    xg::Rng rng(55);
    Cvec v(12);
    for (auto& x : v) x = rng.normal_complex();

    SUBCASE("identity order returns the input") {
        const Cvec same = xg::rearrange(src, src, v);
        for (std::size_t i = 0; i < v.size(); ++i) CHECK(same[i] == v[i]);
    }
    SUBCASE("swap of two qubit factors maps |01> to |10>") {
        xg::FactorOrder a{{0, 1}, {2, 2}};
        xg::FactorOrder b{{1, 0}, {2, 2}};
        Cvec e01 = {0.0, 1.0, 0.0, 0.0};
        const Cvec out = xg::rearrange(a, b, e01);
        CHECK(out[2] == std::complex<double>(1.0, 0.0));
    }
    SUBCASE("round trip restores the vector exactly") {
        const Cvec there = xg::rearrange(src, dst, v);
        const Cvec back = xg::rearrange(dst, src, there);
        for (std::size_t i = 0; i < v.size(); ++i) CHECK(back[i] == v[i]);
    }
    SUBCASE("norm preserved") {
        const Cvec there = xg::rearrange(src, dst, v);
        double n1 = 0.0, n2 = 0.0;
        for (const auto& x : v) n1 += std::norm(x);
        for (const auto& x : there) n2 += std::norm(x);
        CHECK(std::abs(n1 - n2) <= 1e-12 * n1);
    }
    SUBCASE("mismatched orders are rejected") {
        xg::FactorOrder bad{{1, 2}, {2, 3}};
        CHECK_THROWS_AS((void)xg::rearrange(src, bad, v), xg::ShapeError);
    }
}

TEST_CASE("cliquewise state construction") {
    SUBCASE("one full edge is the GHZ state") {
        const auto s = xg::build_cliquewise_state(Hypergraph(3, {{0, 1, 2}}), 2);
        const Cvec ghz = xg::ghz_state(3, 2);
        REQUIRE(s.amplitudes.size() == ghz.size());
        for (std::size_t i = 0; i < ghz.size(); ++i) CHECK(s.amplitudes[i] == ghz[i]);
        CHECK(s.player_dims == std::vector<std::size_t>{2, 2, 2});
    }
    SUBCASE("a single pair is the maximally entangled pair") {
        const auto s = xg::build_cliquewise_state(Hypergraph(2, {{0, 1}}), 2);
        CHECK(s.amplitudes[0].real() == doctest::Approx(1.0 / std::sqrt(2.0)));
        CHECK(s.amplitudes[3].real() == doctest::Approx(1.0 / std::sqrt(2.0)));
        CHECK(std::abs(s.amplitudes[1]) == 0.0);
        CHECK(std::abs(s.amplitudes[2]) == 0.0);
    }
    SUBCASE("path {{0,1},{1,2}} at d=2: 16 dims, amplitude 1/2 on consistent patterns") {
        const auto s = xg::build_cliquewise_state(Hypergraph(3, {{0, 1}, {1, 2}}), 2);
        CHECK(s.amplitudes.size() == 16);
        CHECK(s.player_dims == std::vector<std::size_t>{2, 4, 2});
        std::size_t nonzero = 0;
        for (const auto& a : s.amplitudes) {
            if (std::abs(a) > 0.0) {
                ++nonzero;
                CHECK(a.real() == doctest::Approx(0.5).epsilon(1e-12));
            }
        }
        CHECK(nonzero == 4);
        // Player 1 holds both edges; its local index is (j0, j1) row-major.
        // Pattern j0=1, j1=0 sits at global index (1, 2, 0).
        const std::size_t idx = (1 * 4 + 2) * 2 + 0;
        CHECK(s.amplitudes[idx].real() == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("norm is 1 within 1e-12") {
        const auto s = xg::build_cliquewise_state(xg::stabilizer3_hypergraph(), 2);
        double norm = 0.0;
        for (const auto& a : s.amplitudes) norm += std::norm(a);
        CHECK(std::abs(std::sqrt(norm) - 1.0) <= 1e-12);
    }
    SUBCASE("cap exceeded raises") {
        xg::Caps caps;
        caps.max_state_dim = 8;
        CHECK_THROWS_AS((void)xg::build_cliquewise_state(xg::stabilizer3_hypergraph(), 2, caps),
                        xg::ResourceError);
    }
}

TEST_CASE("phi evaluation paths") {
    SUBCASE("pair edge with aligned basis vectors gives 1") {
        const Hypergraph h(2, {{0, 1}});
        const std::vector<Cvec> v = {{1.0, 0.0}, {1.0, 0.0}};
        CHECK(xg::phi_evaluate(h, 2, v) == std::complex<double>(1.0, 0.0));
    }
    SUBCASE("zero vector annihilates") {
        const Hypergraph h(3, {{0, 1}, {1, 2}});
        std::vector<Cvec> v = {{1.0, 1.0}, {1.0, 1.0, 1.0, 1.0}, {0.0, 0.0}};
        CHECK(std::abs(xg::phi_evaluate(h, 2, v)) == 0.0);
    }
    SUBCASE("structured inputs: both paths agree") {
        xg::Rng rng(71);
        for (int trial = 0; trial < 200; ++trial) {
            const std::size_t nv = 2 + static_cast<std::size_t>(rng.below(3));
            const std::size_t ne = 1 + static_cast<std::size_t>(rng.below(3));
            std::vector<std::vector<std::size_t>> edges;
            for (std::size_t e = 0; e < ne; ++e) {
                std::vector<std::size_t> edge;
                while (edge.empty()) {
                    for (std::size_t x = 0; x < nv; ++x) {
                        if (rng.next_u64() & 1ULL) edge.push_back(x);
                    }
                }
                edges.push_back(edge);
            }
            const Hypergraph h(nv, std::move(edges), true);
            std::vector<std::vector<Cvec>> factors(nv);
            std::vector<Cvec> vertex_vectors(nv);
            for (std::size_t x = 0; x < nv; ++x) {
                factors[x].resize(h.degree(x));
                for (auto& f : factors[x]) f = oracle::random_unit(rng, 2);
                Cvec v{std::complex<double>(1.0, 0.0)};
                for (const auto& f : factors[x]) {
                    Cvec next(v.size() * 2);
                    for (std::size_t a = 0; a < v.size(); ++a) {
                        for (std::size_t b = 0; b < 2; ++b) next[a * 2 + b] = v[a] * f[b];
                    }
                    v = std::move(next);
                }
                vertex_vectors[x] = std::move(v);
            }
            const auto direct = xg::phi_evaluate(h, 2, vertex_vectors);
            const auto split = xg::phi_evaluate_structured(h, 2, factors);
            CHECK(std::abs(direct - split) <= 1e-10);
        }
    }
    SUBCASE("non-structured inputs: direct path equals the multilinear expansion") {
        xg::Rng rng(72);
        const Hypergraph h(3, {{0, 1}, {1, 2}, {0, 1, 2}});
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<Cvec> v(3);
            for (std::size_t x = 0; x < 3; ++x) {
                const std::size_t dim = std::size_t(1) << h.degree(x);
                v[x] = oracle::random_unit(rng, dim);
            }
            // Expansion oracle: decompose each v_x over basis tuples and use
            // the structured path per combination.
            std::complex<double> expansion = 0.0;
            const std::size_t d0 = v[0].size(), d1 = v[1].size(), d2 = v[2].size();
            for (std::size_t b0 = 0; b0 < d0; ++b0) {
                for (std::size_t b1 = 0; b1 < d1; ++b1) {
                    for (std::size_t b2 = 0; b2 < d2; ++b2) {
                        std::vector<std::vector<Cvec>> factors(3);
                        const std::size_t bs[3] = {b0, b1, b2};
                        for (std::size_t x = 0; x < 3; ++x) {
                            const std::size_t deg = h.degree(x);
                            factors[x].assign(deg, Cvec(2, 0.0));
                            for (std::size_t p = 0; p < deg; ++p) {
                                const std::size_t digit = (bs[x] >> (deg - 1 - p)) & 1;
                                factors[x][p][digit] = 1.0;
                            }
                        }
                        expansion += v[0][b0] * v[1][b1] * v[2][b2] *
                                     xg::phi_evaluate_structured(h, 2, factors);
                    }
                }
            }
            CHECK(std::abs(xg::phi_evaluate(h, 2, v) - expansion) <= 1e-10);
        }
    }
}

TEST_CASE("graph state amplitudes") {
    SUBCASE("empty single-vertex graph is the plus state") {
        const auto s = xg::graph_state({1, {}});
        CHECK(s[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
        CHECK(s[1] == doctest::Approx(1.0 / std::sqrt(2.0)));
    }
    SUBCASE("one edge on two vertices: signs (+,+,+,-)") {
        const auto s = xg::graph_state({2, {{0, 1}}});
        CHECK(s[0] == doctest::Approx(0.5));
        CHECK(s[1] == doctest::Approx(0.5));
        CHECK(s[2] == doctest::Approx(0.5));
        CHECK(s[3] == doctest::Approx(-0.5));
    }
    SUBCASE("triangle: the full subset has three induced edges") {
        const auto s = xg::graph_state({3, {{0, 1}, {1, 2}, {0, 2}}});
        CHECK(s[7] == doctest::Approx(-std::pow(2.0, -1.5)));
    }
    SUBCASE("normalized") {
        const auto s = xg::graph_state({4, {{0, 1}, {2, 3}, {1, 2}}});
        double norm = 0.0;
        for (double a : s) norm += a * a;
        CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("graph functional") {
    SUBCASE("indicator of the empty subsets gives 1") {
        xg::GraphStateSpec spec;
        spec.graph = {3, {{0, 1}, {1, 2}, {0, 2}}};
        spec.parts = {std::vector<std::size_t>{0}, {1}, {2}};
        const Cvec ind = {1.0, 0.0};
        CHECK(xg::graph_functional(spec, ind, ind, ind) == std::complex<double>(1.0, 0.0));
    }
    SUBCASE("triangle with full-part indicators gives -1") {
        xg::GraphStateSpec spec;
        spec.graph = {3, {{0, 1}, {1, 2}, {0, 2}}};
        spec.parts = {std::vector<std::size_t>{0}, {1}, {2}};
        const Cvec full = {0.0, 1.0};
        CHECK(xg::graph_functional(spec, full, full, full) == std::complex<double>(-1.0, 0.0));
    }
    SUBCASE("identity against the rearranged graph state on random inputs") {
        xg::Rng rng(91);
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t q = 1 + static_cast<std::size_t>(rng.below(8));
            xg::GraphStateSpec spec;
            spec.graph.vertices = q;
            for (std::size_t u = 0; u < q; ++u) {
                for (std::size_t v = u + 1; v < q; ++v) {
                    if (rng.next_u64() & 1ULL) spec.graph.edges.emplace_back(u, v);
                }
            }
            for (std::size_t v = 0; v < q; ++v)
                spec.parts[static_cast<std::size_t>(rng.below(3))].push_back(v);
            Cvec v1 = oracle::random_unit(rng, std::size_t(1) << spec.parts[0].size());
            Cvec v2 = oracle::random_unit(rng, std::size_t(1) << spec.parts[1].size());
            Cvec v3 = oracle::random_unit(rng, std::size_t(1) << spec.parts[2].size());
            double residual = 1.0;
            CHECK_NOTHROW((void)xg::graph_functional(spec, v1, v2, v3, &residual));
            CHECK(residual <= 1e-10);
        }
    }
    SUBCASE("empty parts contribute scalar factors") {
        xg::GraphStateSpec spec;
        spec.graph = {2, {{0, 1}}};
        spec.parts = {std::vector<std::size_t>{0, 1}, {}, {}};
        const Cvec v1 = {0.5, 0.5, 0.5, -0.5};
        const Cvec one = {1.0};
        // <Psi|Psi> scaled: Phi = 2^{q/2} * (v1 . Psi) with v1 = Psi itself.
        const auto phi = xg::graph_functional(spec, v1, one, one);
        CHECK(phi.real() == doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("graph file parsing") {
        std::istringstream in("graph v1\nvertices 3\nedge 0 1\nedge 1 2\nparts 0,1|2|\n");
        const auto spec = xg::read_graph_spec(in);
        CHECK(spec.graph.vertices == 3);
        CHECK(spec.graph.edges.size() == 2);
        CHECK(spec.parts[0] == std::vector<std::size_t>{0, 1});
        CHECK(spec.parts[1] == std::vector<std::size_t>{2});
        CHECK(spec.parts[2].empty());
    }
}

TEST_CASE("cliquewise expectation expansion agrees with dense evaluation") {
    // The row-column expansion of <Psi| (x) M_x |Psi> over edge tuples,
    // against the library's dense strategy evaluation.
    xg::Rng rng(61);
    for (int trial = 0; trial < 10; ++trial) {
        const Hypergraph h = (trial % 2) ? Hypergraph(3, {{0, 1}, {1, 2}})
                                         : xg::stabilizer3_hypergraph();
        const std::size_t d = 2;
        const auto state = xg::build_cliquewise_state(h, d);
        // Random Hermitian-unitary observable per player.
        std::vector<Eigen::MatrixXcd> obs;
        for (std::size_t x = 0; x < 3; ++x) {
            const auto n = static_cast<Eigen::Index>(state.player_dims[x]);
            Eigen::MatrixXcd g(n, n);
            for (Eigen::Index r = 0; r < n; ++r) {
                for (Eigen::Index c = 0; c < n; ++c) g(r, c) = 0.5 * rng.normal_complex();
            }
            Eigen::MatrixXcd herm = 0.5 * (g + g.adjoint());
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
            Eigen::VectorXd signs(n);
            for (Eigen::Index i = 0; i < n; ++i) signs(i) = es.eigenvalues()(i) < 0 ? -1.0 : 1.0;
            obs.push_back(es.eigenvectors() * signs.asDiagonal() * es.eigenvectors().adjoint());
        }

        // Dense route: evaluate via a single-cell tensor and a one-question
        // strategy.
        xg::NTensor cell({1, 1, 1}, xg::Field::Real);
        cell[0] = 1.0;
        xg::ObservableStrategy s;
        s.local_dims = state.player_dims;
        s.state = state.amplitudes;
        s.observables = {{obs[0]}, {obs[1]}, {obs[2]}};
        const double dense = xg::evaluate_strategy(cell, s);

        // Expansion route: (1/d^{|E|}) sum_{J,J'} prod_x [M_x]_{J|E(x), J'|E(x)}.
        const std::size_t ec = h.edges.size();
        std::size_t patterns = 1;
        for (std::size_t e = 0; e < ec; ++e) patterns *= d;
        std::complex<double> total = 0.0;
        std::vector<std::size_t> J(ec), Jp(ec);
        for (std::size_t p = 0; p < patterns; ++p) {
            std::size_t f = p;
            for (std::size_t e = ec; e-- > 0;) {
                J[e] = f % d;
                f /= d;
            }
            for (std::size_t pp = 0; pp < patterns; ++pp) {
                std::size_t g2 = pp;
                for (std::size_t e = ec; e-- > 0;) {
                    Jp[e] = g2 % d;
                    g2 /= d;
                }
                std::complex<double> prod = 1.0;
                for (std::size_t x = 0; x < 3; ++x) {
                    const auto inc = h.incidence(x);
                    std::size_t row = 0, col = 0;
                    for (std::size_t e : inc) {
                        row = row * d + J[e];
                        col = col * d + Jp[e];
                    }
                    prod *= obs[x](static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
                }
                total += prod;
            }
        }
        total /= static_cast<double>(patterns);
        CHECK(std::abs(total.imag()) <= 1e-9);
        CHECK(std::abs(std::abs(total.real()) - dense) <= 1e-9);
    }
}

TEST_CASE("bilinear dot sanity for the functional identity") {
    // (v . w) with no conjugation: complex phases multiply through.
    const Cvec a = {{0.0, 1.0}};
    CHECK(bilinear_dot(a, a) == std::complex<double>(-1.0, 0.0));
}
