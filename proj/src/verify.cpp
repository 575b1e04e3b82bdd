#include "xg/verify.hpp"

#include "xg/catalog.hpp"
#include "xg/classical.hpp"
#include "xg/constants.hpp"
#include "xg/errors.hpp"
#include "xg/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace xg {

namespace {

using Eigen::MatrixXcd;
using Scalar = std::complex<double>;

constexpr double kPassSlack = 1e-7;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

Cvec random_unit(Rng& rng, std::size_t dim, Field field) {
    Cvec v(dim);
    double norm = 0.0;
    do {
        norm = 0.0;
        for (Scalar& x : v) {
            x = (field == Field::Complex) ? 0.5 * rng.normal_complex() : Scalar(rng.normal(), 0.0);
            norm += std::norm(x);
        }
    } while (norm == 0.0);
    norm = std::sqrt(norm);
    for (Scalar& x : v) x /= norm;
    return v;
}

NTensor random_real_tensor(Rng& rng, const std::vector<std::size_t>& dims) {
    NTensor t(dims, Field::Real);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = Scalar(rng.uniform_pm(), 0.0);
    return t;
}

double spectral_norm_hermitian(const MatrixXcd& h) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(h);
    double best = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
        best = std::max(best, std::abs(solver.eigenvalues()(i)));
    return best;
}

double spectral_norm(const MatrixXcd& m) {
    // sigma_max = sqrt(lambda_max(M' M)).
    Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(m.adjoint() * m);
    const double top = solver.eigenvalues().maxCoeff();
    return top > 0.0 ? std::sqrt(top) : 0.0;
}

}  // namespace

VerificationReport make_report(std::string suite, std::uint64_t trial, std::string instance,
                               double lhs, double rhs, double constant, bool certified,
                               std::string witness) {
    VerificationReport r;
    r.suite = std::move(suite);
    r.trial = trial;
    r.instance = std::move(instance);
    r.lhs = lhs;
    r.rhs = rhs;
    r.constant = constant;
    r.margin = rhs * constant - lhs;
    r.pass = r.margin >= -kPassSlack;
    r.certified = certified;
    r.witness = std::move(witness);
    return r;
}

std::string format_report(const VerificationReport& r) {
    std::string out = "suite=" + r.suite + " trial=" + std::to_string(r.trial) + " lhs=" +
                      fmt(r.lhs) + " rhs=" + fmt(r.rhs) + " const=" + fmt(r.constant) +
                      " margin=" + fmt(r.margin) + " pass=" + (r.pass ? "1" : "0");
    if (!r.certified) out += " certified=0";
    return out;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
    Rng r(seed ^ (salt * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL));
    return r.next_u64();
}

std::vector<VerificationReport> tonge_suite(std::size_t players, std::size_t n, std::size_t d,
                                            std::size_t trials, std::uint64_t seed,
                                            TongeVariant variant, const Caps& caps) {
    if (players < 1 || n < 1 || d < 1) throw UsageError("tonge_suite: sizes must be positive");
    std::vector<VerificationReport> reports;
    reports.reserve(trials);
    const Field vec_field = (variant == TongeVariant::Real) ? Field::Real : Field::Complex;
    std::string name = "tonge-";
    name += (variant == TongeVariant::Real ? "real" : variant == TongeVariant::Complex ? "complex" : "mixed");
    for (std::uint64_t t = 0; t < trials; ++t) {
        const std::uint64_t ts = derive_seed(seed, t);
        Rng rng(ts);
        const NTensor b = random_real_tensor(rng, std::vector<std::size_t>(players, n));

        // Drawn witness.
        std::vector<std::vector<Cvec>> f(players);
        for (std::size_t k = 0; k < players; ++k) {
            f[k].resize(n);
            for (Cvec& v : f[k]) v = random_unit(rng, d, vec_field);
        }
        Scalar witness_sum = 0.0;
        std::vector<Cvec> tuple(players);
        for (std::size_t e = 0; e < b.size(); ++e) {
            auto idx = b.unflatten(e);
            for (std::size_t k = 0; k < players; ++k) tuple[k] = f[k][idx[k]];
            witness_sum += b[e].real() * generalized_inner_product(tuple);
        }
        double lhs = std::abs(witness_sum);

        // See-saw strengthening of the left side.
        SeesawOptions opts;
        opts.restarts = 3;
        opts.max_iters = 120;
        opts.seed = derive_seed(ts, 1);
        lhs = std::max(lhs, gamma_star(b, d, opts, vec_field).value);

        double rhs = 0.0;
        double constant = 0.0;
        bool certified = true;
        switch (variant) {
            case TongeVariant::Mixed:
                rhs = norm_inf(b, Field::Real, NormMode::Exact, 0, 0, caps);
                constant = constants::mixed_field_constant(players);
                break;
            case TongeVariant::Real:
                rhs = norm_inf(b, Field::Real, NormMode::Exact, 0, 0, caps);
                constant = constants::field_matched_constant(players, Field::Real);
                break;
            case TongeVariant::Complex:
                rhs = norm_inf(b, Field::Complex, NormMode::Heuristic, derive_seed(ts, 2), 16, caps);
                constant = constants::field_matched_constant(players, Field::Complex);
                certified = false;
                break;
        }
        std::ostringstream instance;
        instance << "seed=" << ts << " players=" << players << " n=" << n << " d=" << d;
        reports.push_back(make_report(name, t, instance.str(), lhs, rhs, constant, certified));
    }
    return reports;
}

std::vector<VerificationReport> littlewood_suite(std::size_t rows, std::size_t cols,
                                                 std::size_t trials, std::uint64_t seed,
                                                 LittlewoodVariant variant) {
    if (rows < 1 || cols < 1) throw UsageError("littlewood_suite: sizes must be positive");
    if (rows > 20) throw ResourceError("littlewood_suite: row sign enumeration capped at 20");
    std::vector<VerificationReport> reports;
    reports.reserve(trials);
    const char* name = (variant == LittlewoodVariant::ComplexPm) ? "littlewood-pm" : "littlewood-matched";
    for (std::uint64_t t = 0; t < trials; ++t) {
        const std::uint64_t ts = derive_seed(seed, t);
        Rng rng(ts);
        std::vector<Scalar> m(rows * cols);
        for (Scalar& x : m) x = 0.5 * rng.normal_complex();

        double lhs = 0.0;
        for (std::size_t i = 0; i < rows; ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < cols; ++j) row += std::norm(m[i * cols + j]);
            lhs += std::sqrt(row);
        }

        double rhs = 0.0;
        double constant = 0.0;
        bool certified = true;
        if (variant == LittlewoodVariant::ComplexPm) {
            // Exact over row signs; the column scalar is analytically the
            // modulus sum.
            for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << rows); ++mask) {
                double total = 0.0;
                for (std::size_t j = 0; j < cols; ++j) {
                    Scalar col = 0.0;
                    for (std::size_t i = 0; i < rows; ++i) {
                        const bool neg = ((mask >> i) & 1ULL) != 0;
                        col += neg ? -m[i * cols + j] : m[i * cols + j];
                    }
                    total += std::abs(col);
                }
                rhs = std::max(rhs, total);
            }
            constant = constants::kLittlewoodPm;
        } else {
            const NTensor m2 = NTensor::from_complex({rows, cols}, m);
            rhs = norm_inf(m2, Field::Complex, NormMode::Heuristic, derive_seed(ts, 1), 16);
            constant = constants::kLittlewoodMatched;
            certified = false;
        }
        std::ostringstream instance;
        instance << "seed=" << ts << " rows=" << rows << " cols=" << cols;
        reports.push_back(make_report(name, t, instance.str(), lhs, rhs, constant, certified));
    }
    return reports;
}

double khintchine_ratio(std::span<const double> c) {
    if (c.empty() || c.size() > 24) throw ResourceError("khintchine_ratio: length must be in [1,24]");
    double norm_sq = 0.0;
    for (double v : c) norm_sq += v * v;
    if (norm_sq == 0.0) throw UsageError("khintchine_ratio: ratio undefined for the zero vector");
    const std::size_t n = c.size();
    const std::uint64_t patterns = std::uint64_t(1) << n;
    double expectation = 0.0;
    for (std::uint64_t mask = 0; mask < patterns; ++mask) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) sum += ((mask >> i) & 1ULL) ? -c[i] : c[i];
        expectation += std::abs(sum);
    }
    expectation /= static_cast<double>(patterns);
    const double ratio = expectation / std::sqrt(norm_sq);
    if (ratio < constants::kKhintchineA1 - 1e-12)
        throw std::logic_error("khintchine_ratio: ratio below the sharp constant (bug)");
    return ratio;
}

std::vector<VerificationReport> khintchine_suite(std::size_t max_n, std::size_t trials,
                                                 std::uint64_t seed) {
    if (max_n < 1 || max_n > 24) throw UsageError("khintchine_suite: max_n must be in [1,24]");
    std::vector<VerificationReport> reports;
    reports.reserve(trials);
    for (std::uint64_t t = 0; t < trials; ++t) {
        const std::uint64_t ts = derive_seed(seed, t);
        Rng rng(ts);
        const std::size_t n = 1 + static_cast<std::size_t>(rng.below(max_n));
        std::vector<double> c(n);
        double norm = 0.0;
        do {
            norm = 0.0;
            for (double& v : c) {
                v = rng.uniform_pm();
                norm += v * v;
            }
        } while (norm == 0.0);
        const double ratio = khintchine_ratio(c);
        std::ostringstream instance;
        instance << "seed=" << ts << " n=" << n;
        reports.push_back(
            make_report("khintchine", t, instance.str(), constants::kKhintchineA1, ratio, 1.0));
    }
    return reports;
}

VerificationReport verify_qc_gap(const Game& game, const QcGapParams& params, std::uint64_t trial,
                                 const Caps& caps) {
    const NTensor b = game.effective();
    double lhs = 0.0;
    double constant = 0.0;
    std::string name;
    switch (params.model) {
        case QcGapModel::Ghz:
            lhs = ghz_bias_seesaw(b, params.dim, params.opts).value;
            constant = constants::schmidt_gap_constant(b.order());
            name = "qcgap-ghz";
            break;
        case QcGapModel::Schmidt:
            lhs = schmidt_bias_seesaw(b, params.alpha, params.opts).value;
            constant = constants::schmidt_gap_constant(b.order());
            name = "qcgap-schmidt";
            break;
        case QcGapModel::GammaStar:
            lhs = gamma_star(b, params.dim, params.opts).value;
            constant = constants::schmidt_gap_constant(b.order());
            name = "qcgap-gamma";
            break;
        case QcGapModel::Cliquewise:
            lhs = cliquewise_bias_seesaw(b, params.hypergraph, params.dim, params.opts).value;
            constant = is_stabilizer3_hypergraph(params.hypergraph)
                           ? constants::stabilizer3_gap_constant()
                           : constants::cliquewise_gap_constant(params.hypergraph.edges.size(),
                                                                params.hypergraph.max_edge_size());
            name = "qcgap-cliquewise";
            break;
    }
    const double rhs = classical_bias_exact(b, caps).value;
    std::string witness;
    if (rhs > 0.0) {
        witness = "gap=" + fmt(lhs / rhs);
    } else if (lhs > kPassSlack) {
        witness = "anomaly=zero-classical-bias";
    }
    std::ostringstream instance;
    instance << "players=" << b.order() << " dim=" << params.dim;
    return make_report(name, trial, instance.str(), lhs, rhs, constant, true, witness);
}

std::vector<VerificationReport> qc_gap_suite(std::size_t trials, std::uint64_t seed,
                                             QcGapModel model, std::size_t players,
                                             std::size_t max_n, std::size_t max_d,
                                             const Caps& caps) {
    if (players < 2 || max_n < 2 || max_d < 1) throw UsageError("qc_gap_suite: sizes too small");
    std::vector<VerificationReport> reports;
    reports.reserve(trials);
    for (std::uint64_t t = 0; t < trials; ++t) {
        const std::uint64_t ts = derive_seed(seed, t);
        Rng rng(ts);
        const std::size_t n = 2 + static_cast<std::size_t>(rng.below(max_n - 1));
        const std::size_t d = (max_d < 2) ? 1 : 2 + static_cast<std::size_t>(rng.below(max_d - 1));
        const Game game = random_game(players, n, derive_seed(ts, 1));
        QcGapParams params;
        params.model = model;
        params.dim = d;
        params.opts.restarts = 3;
        params.opts.max_iters = 100;
        params.opts.seed = derive_seed(ts, 2);
        if (model == QcGapModel::Schmidt) {
            params.alpha.resize(d);
            double norm = 0.0;
            for (double& a : params.alpha) {
                a = std::abs(rng.normal()) + 1e-3;
                norm += a * a;
            }
            norm = std::sqrt(norm);
            for (double& a : params.alpha) a /= norm;
        }
        if (model == QcGapModel::Cliquewise) {
            if (players != 3)
                throw UsageError("qc_gap_suite: clique-wise suite is defined for 3 players");
            params.hypergraph = stabilizer3_hypergraph();
        }
        VerificationReport r = verify_qc_gap(game, params, t, caps);
        r.instance += " seed=" + std::to_string(ts) + " n=" + std::to_string(n);
        reports.push_back(std::move(r));
    }
    return reports;
}

VerificationReport verify_q_algebra(const NTensor& a,
                                    const std::vector<std::vector<MatrixXcd>>& matrices,
                                    std::uint64_t trial, const Caps& caps) {
    if (a.field() != Field::Real) throw UsageError("verify_q_algebra: requires a real tensor");
    const auto& dims = a.dims();
    const std::size_t players = dims.size();
    if (matrices.size() != players) throw ShapeError("verify_q_algebra: player count mismatch");
    Eigen::Index m = 0;
    for (std::size_t k = 0; k < players; ++k) {
        if (matrices[k].size() != dims[k])
            throw ShapeError("verify_q_algebra: question count mismatch");
        for (const MatrixXcd& f : matrices[k]) {
            if (f.rows() != f.cols()) throw ShapeError("verify_q_algebra: matrices must be square");
            if (m == 0) m = f.rows();
            if (f.rows() != m) throw ShapeError("verify_q_algebra: matrix dimensions differ");
            if (spectral_norm(f) > 1.0 + 1e-9)
                throw UsageError("verify_q_algebra: matrix is not a contraction");
        }
    }
    if (m > 8) throw ResourceError("verify_q_algebra: matrix dimension capped at 8");

    bool hermitian = true;
    for (const auto& per_player : matrices) {
        for (const MatrixXcd& f : per_player) {
            if ((f - f.adjoint()).cwiseAbs().maxCoeff() > 1e-9) hermitian = false;
        }
    }

    // Hermitian doubling [[0,T],[T',0]] keeps the norm and commutes with
    // Schur products, so the doubled sum has the same spectral norm.
    auto doubled = [&](const MatrixXcd& f) {
        MatrixXcd g = MatrixXcd::Zero(2 * m, 2 * m);
        g.block(0, m, m, m) = f;
        g.block(m, 0, m, m) = f.adjoint();
        return g;
    };

    const Eigen::Index dim = hermitian ? m : 2 * m;
    MatrixXcd sum = MatrixXcd::Zero(dim, dim);
    MatrixXcd schur(dim, dim);
    for (std::size_t e = 0; e < a.size(); ++e) {
        const double w = a[e].real();
        if (w == 0.0) continue;
        auto idx = a.unflatten(e);
        schur.setOnes();
        for (std::size_t k = 0; k < players; ++k) {
            const MatrixXcd& f = matrices[k][idx[k]];
            schur = schur.cwiseProduct(hermitian ? f : doubled(f));
        }
        sum += w * schur;
    }
    const double lhs = spectral_norm_hermitian(sum);
    const double rhs = norm_inf(a, Field::Real, NormMode::Exact, 0, 0, caps);
    const double constant = constants::schmidt_gap_constant(players);
    std::ostringstream instance;
    instance << "players=" << players << " m=" << m << (hermitian ? " hermitian=1" : " hermitian=0");
    return make_report("qalgebra", trial, instance.str(), lhs, rhs, constant);
}

std::vector<VerificationReport> q_algebra_suite(std::size_t trials, std::uint64_t seed,
                                                std::size_t max_players, std::size_t max_n,
                                                std::size_t matrix_dim, const Caps& caps) {
    if (max_players < 1 || max_n < 1 || matrix_dim < 1)
        throw UsageError("q_algebra_suite: sizes must be positive");
    std::vector<VerificationReport> reports;
    reports.reserve(trials);
    for (std::uint64_t t = 0; t < trials; ++t) {
        const std::uint64_t ts = derive_seed(seed, t);
        Rng rng(ts);
        const std::size_t players = 1 + static_cast<std::size_t>(rng.below(max_players));
        const std::size_t n = 1 + static_cast<std::size_t>(rng.below(max_n));
        const bool hermitian_inputs = (rng.next_u64() & 1ULL) != 0;
        const NTensor a = random_real_tensor(rng, std::vector<std::size_t>(players, n));
        std::vector<std::vector<MatrixXcd>> fs(players);
        const auto md = static_cast<Eigen::Index>(matrix_dim);
        for (std::size_t k = 0; k < players; ++k) {
            for (std::size_t i = 0; i < n; ++i) {
                MatrixXcd x(md, md);
                for (Eigen::Index r = 0; r < md; ++r) {
                    for (Eigen::Index c = 0; c < md; ++c) x(r, c) = 0.5 * rng.normal_complex();
                }
                if (hermitian_inputs) x = 0.5 * (x + x.adjoint());
                const double norm = spectral_norm(x);
                if (norm > 0.0) x /= norm;
                fs[k].push_back(std::move(x));
            }
        }
        VerificationReport r = verify_q_algebra(a, fs, t, caps);
        r.instance += " seed=" + std::to_string(ts) + " n=" + std::to_string(n);
        reports.push_back(std::move(r));
    }
    return reports;
}

std::vector<VerificationReport> graph_functional_suite(std::size_t trials, std::uint64_t seed,
                                                       std::size_t max_vertices, std::size_t n,
                                                       const Caps& caps) {
    if (max_vertices < 1 || max_vertices > 8 || n < 1 || n > 3)
        throw UsageError("graph_functional_suite: q <= 8 and n <= 3");
    std::vector<VerificationReport> reports;
    reports.reserve(trials);
    for (std::uint64_t t = 0; t < trials; ++t) {
        const std::uint64_t ts = derive_seed(seed, t);
        Rng rng(ts);
        const std::size_t q = 1 + static_cast<std::size_t>(rng.below(max_vertices));
        GraphStateSpec spec;
        spec.graph.vertices = q;
        for (std::size_t u = 0; u < q; ++u) {
            for (std::size_t v = u + 1; v < q; ++v) {
                if (rng.next_u64() & 1ULL) spec.graph.edges.emplace_back(u, v);
            }
        }
        for (std::size_t v = 0; v < q; ++v)
            spec.parts[static_cast<std::size_t>(rng.below(3))].push_back(v);

        const NTensor a = random_real_tensor(rng, {n, n, n});
        std::array<std::vector<Cvec>, 3> f;
        for (std::size_t l = 0; l < 3; ++l) {
            const std::size_t dim = std::size_t(1) << spec.parts[l].size();
            f[l].resize(n);
            for (Cvec& v : f[l]) v = random_unit(rng, dim, Field::Complex);
        }
        Scalar sum = 0.0;
        double worst_residual = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t k = 0; k < n; ++k) {
                    double residual = 0.0;
                    const Scalar phi = graph_functional(spec, f[0][i], f[1][j], f[2][k], &residual);
                    worst_residual = std::max(worst_residual, residual);
                    sum += a[(i * n + j) * n + k].real() * phi;
                }
            }
        }
        const double lhs = std::abs(sum);
        const double rhs = norm_inf(a, Field::Real, NormMode::Exact, 0, 0, caps);
        const double constant = std::exp2(0.5 * static_cast<double>(q)) *
                                constants::cliquewise_gap_constant(4, 3);
        std::ostringstream instance;
        instance << "seed=" << ts << " q=" << q << " n=" << n;
        reports.push_back(make_report("graphstate", t, instance.str(), lhs, rhs, constant, true,
                                      "identity_residual=" + fmt(worst_residual)));
    }
    return reports;
}

std::vector<VerificationReport> phi_agreement_suite(std::size_t trials, std::uint64_t seed,
                                                    std::size_t max_edges, std::size_t dim) {
    if (max_edges < 1 || dim < 1) throw UsageError("phi_agreement_suite: sizes must be positive");
    std::vector<VerificationReport> reports;
    reports.reserve(trials);
    for (std::uint64_t t = 0; t < trials; ++t) {
        const std::uint64_t ts = derive_seed(seed, t);
        Rng rng(ts);
        const std::size_t vertices = 2 + static_cast<std::size_t>(rng.below(3));
        const std::size_t edge_count = 1 + static_cast<std::size_t>(rng.below(max_edges));
        std::vector<std::vector<std::size_t>> edges;
        for (std::size_t e = 0; e < edge_count; ++e) {
            std::vector<std::size_t> edge;
            while (edge.empty()) {
                for (std::size_t v = 0; v < vertices; ++v) {
                    if (rng.next_u64() & 1ULL) edge.push_back(v);
                }
            }
            edges.push_back(std::move(edge));
        }
        const Hypergraph h(vertices, std::move(edges), true);

        std::vector<std::vector<Cvec>> factors(vertices);
        std::vector<Cvec> vertex_vectors(vertices);
        for (std::size_t x = 0; x < vertices; ++x) {
            const std::size_t degree = h.degree(x);
            factors[x].resize(degree);
            for (Cvec& f : factors[x]) f = random_unit(rng, dim, Field::Complex);
            // Kron in ascending-edge order matches the tuple indexing.
            Cvec v{Scalar(1.0, 0.0)};
            for (const Cvec& f : factors[x]) {
                Cvec next(v.size() * dim);
                for (std::size_t a = 0; a < v.size(); ++a) {
                    for (std::size_t b = 0; b < dim; ++b) next[a * dim + b] = v[a] * f[b];
                }
                v = std::move(next);
            }
            vertex_vectors[x] = std::move(v);
        }
        const Scalar direct = phi_evaluate(h, dim, vertex_vectors);
        const Scalar structured = phi_evaluate_structured(h, dim, factors);
        const double diff = std::abs(direct - structured);
        std::ostringstream instance;
        instance << "seed=" << ts << " vertices=" << vertices << " edges=" << edge_count;
        reports.push_back(make_report("phi", t, instance.str(), diff, 1e-10, 1.0));
    }
    return reports;
}

}  // namespace xg
