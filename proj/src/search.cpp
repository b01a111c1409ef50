#include "entsub/search.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "entsub/bounds.hpp"
#include "entsub/sampling.hpp"

namespace entsub {

namespace {

// Candidates within this of the top eigenvalue are considered tied and
// broken by lexicographically largest canonicalized eigenvector.
constexpr double kEigTieTol = 1e-12;

// Candidates at least this close to membership get a Newton polish against
// the orthogonality equations, pushing residual overlaps to roundoff.
constexpr double kPolishTrigger = 1e-3;
constexpr int kPolishMaxIters = 10;
constexpr double kPolishTarget = 1e-26; // on sum |<e_t|phi>|^2

bool lex_greater(const Vector& a, const Vector& b) {
    for (Eigen::Index k = 0; k < a.size(); ++k) {
        if (a[k].real() != b[k].real())
            return a[k].real() > b[k].real();
        if (a[k].imag() != b[k].imag())
            return a[k].imag() > b[k].imag();
    }
    return false;
}

std::pair<Vector, double> top_eigenvector(const Matrix& herm) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(herm);
    const auto& vals = eig.eigenvalues();
    const Eigen::Index last = vals.size() - 1;
    Vector best = canonicalized(Vector(eig.eigenvectors().col(last)));
    for (Eigen::Index k = last - 1; k >= 0 && vals[k] >= vals[last] - kEigTieTol; --k) {
        Vector cand = canonicalized(Vector(eig.eigenvectors().col(k)));
        if (lex_greater(cand, best))
            best.swap(cand);
    }
    return {std::move(best), vals[last]};
}

// Gauss-Newton on the holomorphic system h_t(a) = <e_t|phi(a)> = 0. The
// system is multilinear in the factor blocks, so each Jacobian block is the
// conjugated column contraction; steps are minimum-norm. Keeps the best
// iterate, so the caller's candidate can only improve.
void newton_polish(const SpaceSpec& space, const Matrix& eqs, std::vector<Vector>& factors) {
    const int m = space.factor_count();
    const auto q = eqs.cols();
    int64_t nvars = 0;
    for (int d : space.dims())
        nvars += d;

    auto residual = [&](const std::vector<Vector>& f) {
        return Vector(eqs.adjoint() * kron_all(space, f));
    };

    std::vector<Vector> best = factors;
    Vector h = residual(best);
    double best_h2 = h.squaredNorm();

    std::vector<Vector> cur = best;
    for (int iter = 0; iter < kPolishMaxIters && best_h2 > kPolishTarget; ++iter) {
        Matrix jac(q, nvars);
        int64_t off = 0;
        for (int i = 0; i < m; ++i) {
            const Matrix contr = column_contractions(space, eqs, cur, i); // d_i x q
            jac.middleCols(off, space.dims()[i]) = contr.adjoint();
            off += space.dims()[i];
        }
        const Vector step = jac.completeOrthogonalDecomposition().solve(Vector(-h));
        off = 0;
        for (int i = 0; i < m; ++i) {
            cur[i] += step.segment(off, space.dims()[i]);
            cur[i].normalize();
            off += space.dims()[i];
        }
        h = residual(cur);
        const double h2 = h.squaredNorm();
        if (h2 < best_h2) {
            best_h2 = h2;
            best = cur;
        } else {
            break;
        }
    }
    factors = std::move(best);
}

struct RestartOutcome {
    std::vector<Vector> factors;
    double objective = 0.0;
    int sweeps = 0;
    bool converged = false;
};

RestartOutcome run_restart(const SubspaceProjector& proj, const SearchConfig& cfg, RngStream rs,
                           const Matrix* polish_eqs) {
    const SpaceSpec& space = proj.space();
    const int m = space.factor_count();

    RestartOutcome out;
    out.factors = random_product_state(space, rs).factors();
    out.objective = proj.overlap(kron_all(space, out.factors));

    while (out.sweeps < cfg.max_sweeps) {
        const double prev = out.objective;
        for (int i = 0; i < m; ++i) {
            auto upd = seesaw_step(out.factors, proj, i);
            out.factors[i] = std::move(upd.factor);
            out.objective = upd.objective;
        }
        ++out.sweeps;
        if (out.objective - prev < cfg.conv_tol) {
            out.converged = true;
            break;
        }
    }

    if (polish_eqs && out.objective >= 1.0 - kPolishTrigger) {
        newton_polish(space, *polish_eqs, out.factors);
        out.objective = proj.overlap(kron_all(space, out.factors));
    }
    return out;
}

// Orthogonality equations for the polish step: the projector's own columns
// in complement form, else the materialized complement (desk scale only).
std::optional<Matrix> polish_equations(const SubspaceProjector& proj) {
    if (proj.complemented())
        return proj.columns();
    const SpaceSpec& space = proj.space();
    if (space.dim() > 512 || proj.rank() == space.dim())
        return std::nullopt;
    return orthonormal_complement(Subspace(space, proj.columns())).basis();
}

} // namespace

void SearchConfig::validate() const {
    if (restarts < 1 || max_sweeps < 1 || saturation_window < 1)
        throw InvalidInput("SearchConfig: counts must be positive");
    for (double t : {conv_tol, membership_tol, cluster_tol})
        if (!(t > 0.0 && t < 1.0))
            throw InvalidInput("SearchConfig: tolerances must lie in (0, 1)");
}

const char* to_string(Verdict v) {
    return v == Verdict::found ? "found" : "not-found";
}

SeesawUpdate seesaw_step(const std::vector<Vector>& factors, const SubspaceProjector& proj,
                         int i) {
    auto [vec, val] = top_eigenvector(proj.factor_matrix(factors, i));
    return {std::move(vec), val};
}

SeesawUpdate seesaw_step(const std::vector<Vector>& factors, const Subspace& S, int i) {
    return seesaw_step(factors, SubspaceProjector::direct(S), i);
}

SearchResult find_product_in_subspace(const SubspaceProjector& proj, const SearchConfig& cfg,
                                      const RngStream& rng) {
    cfg.validate();
    const auto eqs = polish_equations(proj);

    SearchResult res;
    double best = -1.0;
    std::vector<Vector> best_factors;
    for (int r = 0; r < cfg.restarts; ++r) {
        auto outcome = run_restart(proj, cfg, rng.substream(r), eqs ? &*eqs : nullptr);
        res.restarts_used = r + 1;
        res.sweeps.total_sweeps += outcome.sweeps;
        res.sweeps.max_sweeps_used = std::max(res.sweeps.max_sweeps_used, outcome.sweeps);
        if (outcome.converged)
            ++res.sweeps.converged_restarts;
        if (outcome.objective > best) {
            best = outcome.objective;
            best_factors = std::move(outcome.factors);
        }
        if (best >= 1.0 - cfg.membership_tol)
            break;
    }

    res.best_overlap = std::max(best, 0.0);
    if (best >= 1.0 - cfg.membership_tol) {
        res.verdict = Verdict::found;
        res.best_state = ProductState(proj.space(), std::move(best_factors)).canonicalized();
    }
    return res;
}

SearchResult find_product_in_subspace(const Subspace& S, const SearchConfig& cfg,
                                      const RngStream& rng) {
    return find_product_in_subspace(SubspaceProjector::direct(S), cfg, rng);
}

CountResult enumerate_products(const Subspace& S, const SearchConfig& cfg, const RngStream& rng) {
    cfg.validate();
    const auto expected = bounds::generic_product_count(S.space(), S.s());
    if (!expected)
        throw CountingUnsupported(
            "enumerate_products: generic count is infinite for s > s_max + 1");

    const SubspaceProjector proj = SubspaceProjector::direct(S);
    const auto eqs = polish_equations(proj);

    struct Rep {
        ProductState state;
        double objective;
    };
    std::vector<Rep> reps;
    CountResult out;
    out.formula_expected = *expected;

    int non_novel = 0;
    for (int r = 0; r < cfg.restarts; ++r) {
        auto outcome = run_restart(proj, cfg, rng.substream(r), eqs ? &*eqs : nullptr);
        out.restarts_used = r + 1;
        bool novel = false;
        if (outcome.objective >= 1.0 - cfg.membership_tol) {
            ProductState found = ProductState(S.space(), std::move(outcome.factors)).canonicalized();
            auto match = std::find_if(reps.begin(), reps.end(), [&](const Rep& rep) {
                return product_fidelity(rep.state, found) >= cfg.cluster_tol;
            });
            if (match == reps.end()) {
                reps.push_back({std::move(found), outcome.objective});
                novel = true;
            } else if (outcome.objective > match->objective) {
                match->state = std::move(found);
                match->objective = outcome.objective;
            }
        }
        non_novel = novel ? 0 : non_novel + 1;
        if (non_novel >= cfg.saturation_window) {
            out.saturated = true;
            break;
        }
    }

    std::sort(reps.begin(), reps.end(), [](const Rep& a, const Rep& b) {
        if (a.objective != b.objective)
            return a.objective > b.objective;
        return lex_greater(a.state.global().amps(), b.state.global().amps());
    });
    for (auto& rep : reps)
        out.representatives.push_back(std::move(rep.state));
    out.count = static_cast<int>(out.representatives.size());
    return out;
}

namespace {

Matrix truncate_to_rank(const Matrix& m, int r) {
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return svd.matrixU().leftCols(r) * svd.singularValues().head(r).asDiagonal() *
           svd.matrixV().leftCols(r).adjoint();
}

} // namespace

LowRankResult find_low_rank_in_subspace(const Subspace& S, int r, const Cut& cut,
                                        const SearchConfig& cfg, const RngStream& rng) {
    cfg.validate();
    const SpaceSpec& space = S.space();
    auto [left, right] = split_cut(space, cut);
    int64_t dl = 1, dr = 1;
    for (int j : left)
        dl *= space.dims()[j];
    for (int j : right)
        dr *= space.dims()[j];
    if (r < 1 || r >= std::min(dl, dr))
        throw InvalidInput("find_low_rank_in_subspace: rank must satisfy 1 <= r < min(d1, d2)");

    LowRankResult out;
    out.rank = r;

    struct Fixed {
        StateVector state;
        double overlap;
    };
    std::vector<Fixed> fixed;
    double best_res = 2.0;
    std::optional<StateVector> best_found;
    double best_found_res = 2.0;

    for (int restart = 0; restart < cfg.restarts; ++restart) {
        RngStream rs = rng.substream(restart);
        Vector coeff(S.s());
        for (int c = 0; c < S.s(); ++c)
            coeff[c] = rs.complex_gaussian();
        Vector x = S.basis() * coeff;
        x.normalize();

        double res = 2.0, prev_res = 3.0;
        Vector cand_y;
        for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
            const Matrix trunc =
                truncate_to_rank(reshape_across_cut(StateVector(space, x), cut), r);
            Vector y = flatten_across_cut(space, cut, trunc);
            const double ny = y.norm();
            if (ny < 1e-12)
                break;
            y /= ny;
            cand_y = y;
            res = 1.0 - (S.basis().adjoint() * y).squaredNorm();
            if (std::abs(prev_res - res) < cfg.conv_tol)
                break;
            prev_res = res;
            Vector z = S.basis() * (S.basis().adjoint() * y);
            const double nz = z.norm();
            if (nz < 1e-12)
                break;
            x = z / nz;
        }
        out.restarts_used = restart + 1;
        if (cand_y.size() == 0)
            continue;
        best_res = std::min(best_res, res);

        if (res <= cfg.membership_tol) {
            StateVector cand = canonicalized(StateVector(space, cand_y));
            if (schmidt(cand, cut).rank_at() > r)
                continue;
            if (res < best_found_res) {
                best_found_res = res;
                best_found = cand;
            }
            auto match = std::find_if(fixed.begin(), fixed.end(), [&](const Fixed& f) {
                return std::norm(f.state.amps().dot(cand.amps())) >= cfg.cluster_tol;
            });
            if (match == fixed.end())
                fixed.push_back({cand, 1.0 - res});
            else if (1.0 - res > match->overlap)
                *match = {cand, 1.0 - res};
        }
    }

    out.best_overlap = std::max(1.0 - best_res, 0.0);
    if (best_found) {
        out.verdict = Verdict::found;
        out.best_state = std::move(best_found);
        out.best_overlap = 1.0 - best_found_res;
    }
    std::sort(fixed.begin(), fixed.end(), [](const Fixed& a, const Fixed& b) {
        return lex_greater(a.state.amps(), b.state.amps());
    });
    for (auto& f : fixed)
        out.fixed_points.push_back(std::move(f.state));
    return out;
}

LowRankResult find_low_rank_in_subspace(const Subspace& S, int r, const SearchConfig& cfg,
                                        const RngStream& rng) {
    return find_low_rank_in_subspace(S, r, Cut::single_factor(0), cfg, rng);
}

} // namespace entsub
