#include "xg/quantum.hpp"

#include "xg/errors.hpp"
#include "xg/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace xg {

namespace {

using Eigen::MatrixXcd;
using Scalar = std::complex<double>;

constexpr double kStrategyTol = 1e-9;

std::vector<std::uint32_t> question_table(const NTensor& m) {
    const auto& dims = m.dims();
    const std::size_t players = dims.size();
    std::vector<std::uint32_t> q(m.size() * players);
    for (std::size_t flat = 0; flat < m.size(); ++flat) {
        std::size_t f = flat;
        for (std::size_t k = players; k-- > 0;) {
            q[flat * players + k] = static_cast<std::uint32_t>(f % dims[k]);
            f /= dims[k];
        }
    }
    return q;
}

/// v <- (I (x) op (x) I) v on factor k of the player-major layout.
void apply_local_op(Cvec& v, const std::vector<std::size_t>& dims, std::size_t k,
                    const MatrixXcd& op, Cvec& scratch) {
    const std::size_t d = dims[k];
    std::size_t suffix = 1;
    for (std::size_t l = k + 1; l < dims.size(); ++l) suffix *= dims[l];
    const std::size_t block = d * suffix;
    const std::size_t prefix = v.size() / block;
    scratch.resize(d);
    for (std::size_t p = 0; p < prefix; ++p) {
        const std::size_t base = p * block;
        for (std::size_t s = 0; s < suffix; ++s) {
            for (std::size_t a = 0; a < d; ++a) {
                Scalar sum = 0.0;
                for (std::size_t b = 0; b < d; ++b) sum += op(a, b) * v[base + b * suffix + s];
                scratch[a] = sum;
            }
            for (std::size_t a = 0; a < d; ++a) v[base + a * suffix + s] = scratch[a];
        }
    }
}

/// P(a,b) = sum over the other factors of conj(psi[..a..]) phi[..b..].
void accumulate_partial_inner(const Cvec& psi, const Cvec& phi, const std::vector<std::size_t>& dims,
                              std::size_t k, Scalar weight, MatrixXcd& acc) {
    const std::size_t d = dims[k];
    std::size_t suffix = 1;
    for (std::size_t l = k + 1; l < dims.size(); ++l) suffix *= dims[l];
    const std::size_t block = d * suffix;
    const std::size_t prefix = psi.size() / block;
    for (std::size_t p = 0; p < prefix; ++p) {
        const std::size_t base = p * block;
        for (std::size_t s = 0; s < suffix; ++s) {
            for (std::size_t a = 0; a < d; ++a) {
                const Scalar ca = std::conj(psi[base + a * suffix + s]);
                if (ca == 0.0) continue;
                for (std::size_t b = 0; b < d; ++b) {
                    acc(a, b) += weight * ca * phi[base + b * suffix + s];
                }
            }
        }
    }
}

/// Nearest +-1-valued observable: eigen-sign rounding with sign(0) = +1.
MatrixXcd eigen_sign(const MatrixXcd& hermitian_part, double* abs_eigen_sum = nullptr) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(hermitian_part);
    const auto& values = solver.eigenvalues();
    const auto& vectors = solver.eigenvectors();
    Eigen::VectorXd signs(values.size());
    double sum = 0.0;
    for (Eigen::Index j = 0; j < values.size(); ++j) {
        signs(j) = values(j) < 0.0 ? -1.0 : 1.0;
        sum += std::abs(values(j));
    }
    if (abs_eigen_sum) *abs_eigen_sum = sum;
    return vectors * signs.asDiagonal() * vectors.adjoint();
}

MatrixXcd random_observable(Rng& rng, std::size_t d) {
    MatrixXcd x(d, d);
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) x(a, b) = 0.5 * rng.normal_complex();
    }
    const MatrixXcd h = 0.5 * (x + x.adjoint());
    return eigen_sign(h);
}

/// Fixed-state context for the observable see-saw. Schmidt-type states keep
/// their diagonal amplitudes so player updates reduce to Schur products.
struct StateContext {
    Cvec amps;
    std::vector<std::size_t> local_dims;
    bool diagonal = false;
    std::vector<double> alpha;  // diagonal amplitudes when diagonal
};

double seesaw_pass(const NTensor& m, const std::vector<std::uint32_t>& qtab,
                   const StateContext& ctx, std::vector<std::vector<MatrixXcd>>& obs) {
    const auto& dims = m.dims();
    const std::size_t players = dims.size();
    double total = 0.0;
    if (ctx.diagonal) {
        const std::size_t d = ctx.local_dims[0];
        std::vector<MatrixXcd> coeff;
        MatrixXcd schur(d, d);
        for (std::size_t k = 0; k < players; ++k) {
            coeff.assign(dims[k], MatrixXcd::Zero(d, d));
            for (std::size_t e = 0; e < m.size(); ++e) {
                const double w = m[e].real();
                if (w == 0.0) continue;
                schur.setOnes();
                for (std::size_t l = 0; l < players; ++l) {
                    if (l == k) continue;
                    schur = schur.cwiseProduct(obs[l][qtab[e * players + l]]);
                }
                coeff[qtab[e * players + k]] += w * schur;
            }
            total = 0.0;
            for (std::size_t i = 0; i < dims[k]; ++i) {
                MatrixXcd g = coeff[i].transpose();
                for (std::size_t a = 0; a < d; ++a) {
                    for (std::size_t b = 0; b < d; ++b) g(a, b) *= ctx.alpha[a] * ctx.alpha[b];
                }
                const MatrixXcd h = 0.5 * (g + g.adjoint());
                double term = 0.0;
                obs[k][i] = eigen_sign(h, &term);
                total += term;
            }
        }
        return total;
    }

    // Dense path: partial contractions of the state against the other
    // players' observables, cached per rest-tuple.
    Cvec scratch;
    for (std::size_t k = 0; k < players; ++k) {
        const std::size_t d = ctx.local_dims[k];
        std::size_t rest_total = 1;
        for (std::size_t l = 0; l < players; ++l) {
            if (l != k) rest_total *= dims[l];
        }
        std::vector<Cvec> cache(rest_total);
        std::vector<MatrixXcd> coeff(dims[k], MatrixXcd::Zero(d, d));
        for (std::size_t e = 0; e < m.size(); ++e) {
            const double w = m[e].real();
            if (w == 0.0) continue;
            std::size_t rest = 0;
            for (std::size_t l = 0; l < players; ++l) {
                if (l == k) continue;
                rest = rest * dims[l] + qtab[e * players + l];
            }
            Cvec& phi = cache[rest];
            if (phi.empty()) {
                phi = ctx.amps;
                for (std::size_t l = 0; l < players; ++l) {
                    if (l == k) continue;
                    apply_local_op(phi, ctx.local_dims, l, obs[l][qtab[e * players + l]], scratch);
                }
            }
            MatrixXcd p = MatrixXcd::Zero(d, d);
            accumulate_partial_inner(ctx.amps, phi, ctx.local_dims, k, Scalar(w, 0.0), p);
            coeff[qtab[e * players + k]] += p;
        }
        total = 0.0;
        for (std::size_t i = 0; i < dims[k]; ++i) {
            const MatrixXcd g = coeff[i].transpose();
            const MatrixXcd h = 0.5 * (g + g.adjoint());
            double term = 0.0;
            obs[k][i] = eigen_sign(h, &term);
            total += term;
        }
    }
    return total;
}

ObservableSeesawResult observable_seesaw(const NTensor& m, StateContext ctx,
                                         const SeesawOptions& opt,
                                         std::span<const ObservableStrategy> warm_starts) {
    if (m.field() != Field::Real) throw UsageError("observable see-saw: requires a real tensor");
    const auto& dims = m.dims();
    const std::size_t players = dims.size();
    if (ctx.local_dims.size() != players)
        throw ShapeError("observable see-saw: state factor count mismatch");
    const auto qtab = question_table(m);

    ObservableSeesawResult best;
    best.value = -1.0;

    auto run = [&](std::vector<std::vector<MatrixXcd>> obs, int index) {
        double value = -std::numeric_limits<double>::infinity();
        for (int iter = 0; iter < opt.max_iters; ++iter) {
            const double next = seesaw_pass(m, qtab, ctx, obs);
            if (iter > 0 && next < value - 1e-9)
                throw std::logic_error("observable see-saw: objective decreased");
            const double gain = next - value;
            value = next;
            if (iter > 0 && gain < opt.tol) break;
        }
        if (value > best.value) {
            best.value = value;
            best.best_restart = index;
            best.strategy.observables = std::move(obs);
            best.strategy.state = ctx.amps;
            best.strategy.local_dims = ctx.local_dims;
        }
    };

    int index = 0;
    for (const ObservableStrategy& warm : warm_starts) {
        if (warm.local_dims != ctx.local_dims)
            throw ShapeError("observable see-saw: warm start has mismatched local dimensions");
        if (warm.observables.size() != players)
            throw ShapeError("observable see-saw: warm start has wrong player count");
        for (std::size_t k = 0; k < players; ++k) {
            if (warm.observables[k].size() != dims[k])
                throw ShapeError("observable see-saw: warm start has wrong question count");
        }
        run(warm.observables, index++);
    }
    for (int r = 0; r < opt.restarts; ++r) {
        Rng rng(opt.seed + static_cast<std::uint64_t>(r));
        std::vector<std::vector<MatrixXcd>> obs(players);
        for (std::size_t k = 0; k < players; ++k) {
            obs[k].reserve(dims[k]);
            for (std::size_t i = 0; i < dims[k]; ++i)
                obs[k].push_back(random_observable(rng, ctx.local_dims[k]));
        }
        run(std::move(obs), index++);
    }
    if (best.best_restart < 0) throw UsageError("observable see-saw: no starting point");
    return best;
}

}  // namespace

std::complex<double> generalized_inner_product(std::span<const Cvec> vectors) {
    if (vectors.empty()) throw ShapeError("generalized_inner_product: no vectors");
    const std::size_t d = vectors.front().size();
    for (const Cvec& v : vectors) {
        if (v.size() != d) throw ShapeError("generalized_inner_product: dimension mismatch");
    }
    Scalar sum = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        Scalar prod = 1.0;
        for (const Cvec& v : vectors) prod *= v[i];
        sum += prod;
    }
    return sum;
}

void ObservableStrategy::validate() const {
    if (observables.size() != local_dims.size())
        throw ShapeError("strategy: player count mismatch between observables and dims");
    std::size_t total = 1;
    for (std::size_t d : local_dims) total *= d;
    if (state.size() != total) throw ShapeError("strategy: state dimension mismatch");
    double norm = 0.0;
    for (const Scalar& a : state) norm += std::norm(a);
    if (std::abs(std::sqrt(norm) - 1.0) > kStrategyTol)
        throw UsageError("strategy: state is not normalized");
    for (std::size_t k = 0; k < observables.size(); ++k) {
        const auto d = static_cast<Eigen::Index>(local_dims[k]);
        for (const MatrixXcd& ob : observables[k]) {
            if (ob.rows() != d || ob.cols() != d)
                throw ShapeError("strategy: observable dimension mismatch");
            if ((ob - ob.adjoint()).cwiseAbs().maxCoeff() > kStrategyTol)
                throw UsageError("strategy: observable is not Hermitian");
            if ((ob * ob - MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff() > kStrategyTol)
                throw UsageError("strategy: observable does not square to identity");
        }
    }
}

double evaluate_strategy(const NTensor& m, const ObservableStrategy& s) {
    s.validate();
    const auto& dims = m.dims();
    if (s.observables.size() != dims.size())
        throw ShapeError("evaluate_strategy: player count mismatch");
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (s.observables[k].size() != dims[k])
            throw ShapeError("evaluate_strategy: question count mismatch");
    }
    const auto qtab = question_table(m);
    const std::size_t players = dims.size();
    Scalar sum = 0.0;
    Cvec phi, scratch;
    for (std::size_t e = 0; e < m.size(); ++e) {
        if (m[e] == Scalar(0.0, 0.0)) continue;
        phi = s.state;
        for (std::size_t k = 0; k < players; ++k)
            apply_local_op(phi, s.local_dims, k, s.observables[k][qtab[e * players + k]], scratch);
        Scalar expectation = 0.0;
        for (std::size_t i = 0; i < phi.size(); ++i) expectation += std::conj(s.state[i]) * phi[i];
        if (std::abs(expectation.imag()) > kStrategyTol)
            throw std::logic_error("evaluate_strategy: non-real expectation from Hermitian observables");
        sum += m[e] * expectation.real();
    }
    return std::abs(sum);
}

VectorSeesawResult tsirelson_bias(const NTensor& m, const SeesawOptions& opt) {
    if (m.order() != 2) throw UsageError("tsirelson_bias: requires a 2-tensor");
    if (m.field() != Field::Real) throw UsageError("tsirelson_bias: requires a real tensor");
    const std::size_t n1 = m.dims()[0];
    const std::size_t n2 = m.dims()[1];
    const std::size_t r = std::min(n1, n2) + 1;
    const std::vector<double> entries = m.real_entries();

    VectorSeesawResult best;
    best.value = -1.0;
    using RVec = std::vector<double>;
    for (int restart = 0; restart < opt.restarts; ++restart) {
        Rng rng(opt.seed + static_cast<std::uint64_t>(restart));
        auto random_unit = [&] {
            RVec v(r);
            double norm = 0.0;
            do {
                norm = 0.0;
                for (double& x : v) {
                    x = rng.normal();
                    norm += x * x;
                }
            } while (norm == 0.0);
            norm = std::sqrt(norm);
            for (double& x : v) x /= norm;
            return v;
        };
        std::vector<RVec> u(n1), v(n2);
        for (auto& x : u) x = random_unit();
        for (auto& x : v) x = random_unit();

        double value = -std::numeric_limits<double>::infinity();
        for (int iter = 0; iter < opt.max_iters; ++iter) {
            // u_i <- normalize(sum_j M[i,j] v_j); a zero sum keeps the
            // incumbent (that row contributes 0 to the objective either way).
            for (std::size_t i = 0; i < n1; ++i) {
                RVec c(r, 0.0);
                for (std::size_t j = 0; j < n2; ++j) {
                    const double w = entries[i * n2 + j];
                    if (w == 0.0) continue;
                    for (std::size_t t = 0; t < r; ++t) c[t] += w * v[j][t];
                }
                double norm = 0.0;
                for (double x : c) norm += x * x;
                norm = std::sqrt(norm);
                if (norm > 0.0) {
                    for (std::size_t t = 0; t < r; ++t) u[i][t] = c[t] / norm;
                }
            }
            double after_v = 0.0;
            for (std::size_t j = 0; j < n2; ++j) {
                RVec c(r, 0.0);
                for (std::size_t i = 0; i < n1; ++i) {
                    const double w = entries[i * n2 + j];
                    if (w == 0.0) continue;
                    for (std::size_t t = 0; t < r; ++t) c[t] += w * u[i][t];
                }
                double norm = 0.0;
                for (double x : c) norm += x * x;
                norm = std::sqrt(norm);
                if (norm > 0.0) {
                    for (std::size_t t = 0; t < r; ++t) v[j][t] = c[t] / norm;
                    after_v += norm;
                }
            }
            // after_v is the objective sum_j ||sum_i M[i,j] u_i||.
            const double next = after_v;
            if (iter > 0 && next < value - 1e-9)
                throw std::logic_error("tsirelson_bias: objective decreased");
            const double gain = next - value;
            value = next;
            if (iter > 0 && gain < opt.tol) break;
        }
        if (value > best.value) {
            best.value = value;
            best.best_restart = restart;
            best.strategy.vectors.assign(2, {});
            best.strategy.vectors[0].resize(n1);
            best.strategy.vectors[1].resize(n2);
            for (std::size_t i = 0; i < n1; ++i)
                best.strategy.vectors[0][i] = Cvec(u[i].begin(), u[i].end());
            for (std::size_t j = 0; j < n2; ++j)
                best.strategy.vectors[1][j] = Cvec(v[j].begin(), v[j].end());
        }
    }
    return best;
}

VectorSeesawResult gamma_star(const NTensor& m, std::size_t dim, const SeesawOptions& opt,
                              Field field) {
    if (m.field() != Field::Real) throw UsageError("gamma_star: requires a real tensor");
    const auto& dims = m.dims();
    const std::size_t players = dims.size();
    if (dim == 0) dim = 2 * *std::max_element(dims.begin(), dims.end());
    const auto qtab = question_table(m);
    const std::vector<double> entries = m.real_entries();

    VectorSeesawResult best;
    best.value = -1.0;
    for (int restart = 0; restart < opt.restarts; ++restart) {
        Rng rng(opt.seed + static_cast<std::uint64_t>(restart));
        std::vector<std::vector<Cvec>> f(players);
        for (std::size_t k = 0; k < players; ++k) {
            f[k].resize(dims[k]);
            for (Cvec& v : f[k]) {
                v.resize(dim);
                double norm = 0.0;
                do {
                    norm = 0.0;
                    for (Scalar& x : v) {
                        x = (field == Field::Complex) ? 0.5 * rng.normal_complex()
                                                      : Scalar(rng.normal(), 0.0);
                        norm += std::norm(x);
                    }
                } while (norm == 0.0);
                norm = std::sqrt(norm);
                for (Scalar& x : v) x /= norm;
            }
        }

        double value = -std::numeric_limits<double>::infinity();
        std::vector<Cvec> coeff;
        Cvec prod(dim);
        for (int iter = 0; iter < opt.max_iters; ++iter) {
            double after = 0.0;
            for (std::size_t k = 0; k < players; ++k) {
                coeff.assign(dims[k], Cvec(dim, Scalar(0.0, 0.0)));
                for (std::size_t e = 0; e < m.size(); ++e) {
                    const double w = entries[e];
                    if (w == 0.0) continue;
                    std::fill(prod.begin(), prod.end(), Scalar(1.0, 0.0));
                    for (std::size_t l = 0; l < players; ++l) {
                        if (l == k) continue;
                        const Cvec& vl = f[l][qtab[e * players + l]];
                        for (std::size_t t = 0; t < dim; ++t) prod[t] *= vl[t];
                    }
                    Cvec& c = coeff[qtab[e * players + k]];
                    for (std::size_t t = 0; t < dim; ++t) c[t] += w * prod[t];
                }
                after = 0.0;
                for (std::size_t i = 0; i < dims[k]; ++i) {
                    double norm = 0.0;
                    for (const Scalar& x : coeff[i]) norm += std::norm(x);
                    norm = std::sqrt(norm);
                    if (norm > 0.0) {
                        for (std::size_t t = 0; t < dim; ++t)
                            f[k][i][t] = std::conj(coeff[i][t]) / norm;
                    }
                    after += norm;
                }
            }
            if (iter > 0 && after < value - 1e-9)
                throw std::logic_error("gamma_star: objective decreased");
            const double gain = after - value;
            value = after;
            if (iter > 0 && gain < opt.tol) break;
        }
        if (value > best.value) {
            best.value = value;
            best.best_restart = restart;
            best.strategy.vectors = f;
        }
    }
    return best;
}

Cvec ghz_state(std::size_t players, std::size_t dim) {
    std::vector<double> alpha(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
    return schmidt_state(players, alpha);
}

Cvec schmidt_state(std::size_t players, std::span<const double> alpha) {
    if (players == 0 || alpha.empty()) throw UsageError("schmidt_state: empty parameters");
    std::size_t total = 1;
    for (std::size_t k = 0; k < players; ++k) total *= alpha.size();
    Cvec state(total, 0.0);
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        std::size_t flat = 0;
        for (std::size_t k = 0; k < players; ++k) flat = flat * alpha.size() + i;
        state[flat] = alpha[i];
    }
    return state;
}

namespace {

void check_alpha(std::span<const double> alpha) {
    double sq = 0.0;
    for (double a : alpha) {
        if (a < 0.0) throw UsageError("Schmidt weights must be nonnegative");
        sq += a * a;
    }
    if (std::abs(sq - 1.0) > 1e-9) throw UsageError("Schmidt weights must have unit 2-norm");
}

}  // namespace

ObservableSeesawResult ghz_bias_seesaw(const NTensor& m, std::size_t dim, const SeesawOptions& opt,
                                       std::span<const ObservableStrategy> warm_starts) {
    if (dim == 0) throw UsageError("ghz_bias_seesaw: dim must be positive");
    StateContext ctx;
    ctx.alpha.assign(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
    ctx.local_dims.assign(m.order(), dim);
    ctx.amps = ghz_state(m.order(), dim);
    ctx.diagonal = true;
    return observable_seesaw(m, std::move(ctx), opt, warm_starts);
}

ObservableSeesawResult schmidt_bias_seesaw(const NTensor& m, std::span<const double> alpha,
                                           const SeesawOptions& opt,
                                           std::span<const ObservableStrategy> warm_starts) {
    check_alpha(alpha);
    StateContext ctx;
    ctx.alpha.assign(alpha.begin(), alpha.end());
    ctx.local_dims.assign(m.order(), alpha.size());
    ctx.amps = schmidt_state(m.order(), alpha);
    ctx.diagonal = true;
    return observable_seesaw(m, std::move(ctx), opt, warm_starts);
}

ObservableSeesawResult cliquewise_bias_seesaw(const NTensor& m, const Hypergraph& h,
                                              std::size_t dim, const SeesawOptions& opt,
                                              std::span<const ObservableStrategy> warm_starts) {
    if (h.vertices != m.order())
        throw ShapeError("cliquewise_bias_seesaw: hypergraph vertices must match players");
    const CliquewiseState state = build_cliquewise_state(h, dim);
    StateContext ctx;
    ctx.amps = state.amplitudes;
    ctx.local_dims = state.player_dims;
    ctx.diagonal = false;
    return observable_seesaw(m, std::move(ctx), opt, warm_starts);
}

ObservableStrategy lift_classical(const ClassicalStrategy& s) {
    ObservableStrategy out;
    out.local_dims.assign(s.signs.size(), 1);
    out.state = {Scalar(1.0, 0.0)};
    out.observables.resize(s.signs.size());
    for (std::size_t k = 0; k < s.signs.size(); ++k) {
        for (int sign : s.signs[k]) {
            MatrixXcd ob(1, 1);
            ob(0, 0) = static_cast<double>(sign);
            out.observables[k].push_back(ob);
        }
    }
    return out;
}

ObservableStrategy lift_to_cliquewise(const ObservableStrategy& ghz, const Hypergraph& h,
                                      std::size_t covering_edge) {
    if (covering_edge >= h.edges.size()) throw UsageError("lift_to_cliquewise: edge out of range");
    if (h.edges[covering_edge].size() != h.vertices)
        throw UsageError("lift_to_cliquewise: edge must cover all players");
    const std::size_t players = h.vertices;
    if (ghz.observables.size() != players) throw ShapeError("lift_to_cliquewise: player mismatch");
    const std::size_t d = ghz.local_dims.empty() ? 0 : ghz.local_dims[0];
    for (std::size_t dk : ghz.local_dims) {
        if (dk != d) throw UsageError("lift_to_cliquewise: GHZ strategy must have equal local dims");
    }
    const CliquewiseState state = build_cliquewise_state(h, d);
    ObservableStrategy out;
    out.state = state.amplitudes;
    out.local_dims = state.player_dims;
    out.observables.resize(players);
    for (std::size_t k = 0; k < players; ++k) {
        const auto& edges = state.factor_edges[k];
        const auto pos = static_cast<std::size_t>(
            std::find(edges.begin(), edges.end(), covering_edge) - edges.begin());
        std::size_t pre = 1, post = 1;
        for (std::size_t t = 0; t < edges.size(); ++t) {
            if (t < pos) pre *= d;
            if (t > pos) post *= d;
        }
        for (const MatrixXcd& ob : ghz.observables[k]) {
            MatrixXcd lifted = MatrixXcd::Zero(static_cast<Eigen::Index>(pre * d * post),
                                               static_cast<Eigen::Index>(pre * d * post));
            for (std::size_t p = 0; p < pre; ++p) {
                for (std::size_t a = 0; a < d; ++a) {
                    for (std::size_t b = 0; b < d; ++b) {
                        if (ob(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) == 0.0 &&
                            a != b)
                            continue;
                        for (std::size_t s = 0; s < post; ++s) {
                            const std::size_t row = (p * d + a) * post + s;
                            const std::size_t col = (p * d + b) * post + s;
                            lifted(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
                                ob(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
                        }
                    }
                }
            }
            out.observables[k].push_back(std::move(lifted));
        }
    }
    return out;
}

ObservableStrategy tensor_strategies(const ObservableStrategy& a, const ObservableStrategy& b) {
    if (a.observables.size() != b.observables.size())
        throw ShapeError("tensor_strategies: player count mismatch");
    const std::size_t players = a.observables.size();
    ObservableStrategy out;
    out.local_dims.resize(players);
    for (std::size_t k = 0; k < players; ++k) out.local_dims[k] = a.local_dims[k] * b.local_dims[k];

    // Product state with per-player digit (a_k, b_k) flattened row-major.
    std::size_t total = 1;
    for (std::size_t d : out.local_dims) total *= d;
    out.state.assign(total, 0.0);
    std::vector<std::size_t> da = a.local_dims, db = b.local_dims;
    std::vector<std::size_t> ia(players), ib(players);
    for (std::size_t fa = 0; fa < a.state.size(); ++fa) {
        std::size_t f = fa;
        for (std::size_t k = players; k-- > 0;) {
            ia[k] = f % da[k];
            f /= da[k];
        }
        if (a.state[fa] == 0.0) continue;
        for (std::size_t fb = 0; fb < b.state.size(); ++fb) {
            if (b.state[fb] == 0.0) continue;
            std::size_t g = fb;
            for (std::size_t k = players; k-- > 0;) {
                ib[k] = g % db[k];
                g /= db[k];
            }
            std::size_t flat = 0;
            for (std::size_t k = 0; k < players; ++k)
                flat = flat * out.local_dims[k] + (ia[k] * db[k] + ib[k]);
            out.state[flat] = a.state[fa] * b.state[fb];
        }
    }

    out.observables.resize(players);
    for (std::size_t k = 0; k < players; ++k) {
        for (const MatrixXcd& oa : a.observables[k]) {
            for (const MatrixXcd& ob : b.observables[k]) {
                MatrixXcd kron(oa.rows() * ob.rows(), oa.cols() * ob.cols());
                for (Eigen::Index r = 0; r < oa.rows(); ++r) {
                    for (Eigen::Index c = 0; c < oa.cols(); ++c) {
                        kron.block(r * ob.rows(), c * ob.cols(), ob.rows(), ob.cols()) =
                            oa(r, c) * ob;
                    }
                }
                out.observables[k].push_back(std::move(kron));
            }
        }
    }
    return out;
}

ColumnExtraction ghz_column_strategy(const NTensor& m, const ObservableStrategy& s) {
    const auto& dims = m.dims();
    const std::size_t players = dims.size();
    if (s.observables.size() != players) throw ShapeError("ghz_column_strategy: player mismatch");
    const std::size_t d = s.local_dims.empty() ? 0 : s.local_dims[0];
    for (std::size_t dk : s.local_dims) {
        if (dk != d) throw UsageError("ghz_column_strategy: equal local dims required");
    }
    const auto qtab = question_table(m);
    ColumnExtraction out;
    out.column_values.resize(d);
    out.best_value = -1.0;
    for (std::size_t j = 0; j < d; ++j) {
        Scalar g = 0.0;
        for (std::size_t e = 0; e < m.size(); ++e) {
            if (m[e] == Scalar(0.0, 0.0)) continue;
            Scalar prod_sum = 0.0;
            for (std::size_t row = 0; row < d; ++row) {
                Scalar prod = 1.0;
                for (std::size_t k = 0; k < players; ++k) {
                    prod *= s.observables[k][qtab[e * players + k]](
                        static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(j));
                }
                prod_sum += prod;
            }
            g += m[e] * prod_sum;
        }
        out.column_values[j] = std::abs(g);
        if (out.column_values[j] > out.best_value) {
            out.best_value = out.column_values[j];
            out.best_column = j;
        }
    }
    out.vectors.vectors.resize(players);
    for (std::size_t k = 0; k < players; ++k) {
        out.vectors.vectors[k].resize(dims[k]);
        for (std::size_t i = 0; i < dims[k]; ++i) {
            Cvec col(d);
            for (std::size_t row = 0; row < d; ++row)
                col[row] = s.observables[k][i](static_cast<Eigen::Index>(row),
                                               static_cast<Eigen::Index>(out.best_column));
            out.vectors.vectors[k][i] = std::move(col);
        }
    }
    return out;
}

}  // namespace xg
