#include "entsub/discrimination.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "entsub/bounds.hpp"

namespace entsub {

StateSet StateSet::from_states(std::vector<StateVector> states, double dep_tol) {
    StateSet out;
    if (states.size() < 2)
        throw InvalidInput("StateSet: at least two states required");
    out.space_ = states.front().space();
    const auto n = static_cast<int64_t>(states.size());
    if (n > out.space_.dim())
        throw LinearDependenceError("StateSet: more states than the space dimension");
    Matrix stacked(out.space_.dim(), n);
    for (int64_t c = 0; c < n; ++c) {
        if (!(states[c].space() == out.space_))
            throw InvalidInput("StateSet: states live on different spaces");
        stacked.col(c) = states[c].amps();
    }
    Eigen::JacobiSVD<Matrix> svd(stacked);
    if (svd.singularValues()(n - 1) < dep_tol)
        throw LinearDependenceError("StateSet: states are numerically linearly dependent");
    out.states_ = std::move(states);
    out.gram_ = stacked.adjoint() * stacked;
    return out;
}

namespace {

constexpr uint64_t kCertifySearchTagBase = uint64_t{1} << 48;

ValidityReport overlap_checks(const Matrix& o, double diag_floor, double offdiag_tol) {
    ValidityReport rep;
    rep.min_diag = o.diagonal().cwiseAbs().minCoeff();
    rep.max_offdiag = 0.0;
    for (Eigen::Index j = 0; j < o.rows(); ++j)
        for (Eigen::Index k = 0; k < o.cols(); ++k)
            if (j != k)
                rep.max_offdiag = std::max(rep.max_offdiag, std::abs(o(j, k)));
    rep.valid = rep.min_diag > diag_floor && rep.max_offdiag <= offdiag_tol;
    return rep;
}

Matrix overlap_matrix(const std::vector<ProductState>& products,
                      const std::vector<StateVector>& states) {
    const auto n = static_cast<Eigen::Index>(products.size());
    Matrix o(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = 0; k < n; ++k)
            o(j, k) = products[j].global().amps().dot(states[k].amps());
    return o;
}

SearchFailure make_failure(int j, double best, std::string reason, const Subspace& spanned) {
    SearchFailure f;
    f.failed_index = j;
    f.best_overlap = best;
    f.reason = std::move(reason);
    f.complement_dim = spanned.space().dim() - spanned.s();
    if (f.complement_dim == 1) {
        // exact converse: the only candidate is the single complement
        // vector, a product state iff rank 1 across every single-factor cut
        const StateVector witness(spanned.space(),
                                  orthonormal_complement(spanned).basis().col(0));
        for (int j2 = 0; j2 < spanned.space().factor_count(); ++j2)
            f.complement_cut_ranks.push_back(schmidt(witness, Cut::single_factor(j2)).rank_at());
    }
    return f;
}

} // namespace

CertifyOutcome chefles_certificate(const StateSet& psi, const SearchConfig& cfg,
                                   const RngStream& rng, double diag_floor,
                                   double offdiag_tol) {
    cfg.validate();
    const int n = psi.n();
    std::vector<ProductState> products;
    products.reserve(n);

    for (int j = 0; j < n; ++j) {
        std::vector<StateVector> others;
        others.reserve(n - 1);
        for (int k = 0; k < n; ++k)
            if (k != j)
                others.push_back(psi.states()[k]);
        const Subspace spanned = span(others);
        const auto proj = SubspaceProjector::complement_of(spanned);
        const SearchResult res =
            find_product_in_subspace(proj, cfg, rng.substream(kCertifySearchTagBase + j));
        if (res.verdict != Verdict::found)
            return make_failure(j, res.best_overlap,
                                "no product state found in the complement", spanned);
        const double diag = std::abs(res.best_state->global().amps().dot(psi.states()[j].amps()));
        if (diag <= diag_floor)
            return make_failure(j, res.best_overlap,
                                "complement product state is orthogonal to its own state",
                                spanned);
        products.push_back(*res.best_state);
    }

    Certificate cert;
    cert.space = psi.space();
    cert.base_space = psi.space();
    cert.copies = 1;
    cert.states = psi.states();
    cert.products = std::move(products);
    cert.overlaps = overlap_matrix(cert.products, cert.states);
    cert.diag_floor = diag_floor;
    cert.offdiag_tol = offdiag_tol;
    const auto rep = overlap_checks(cert.overlaps, diag_floor, offdiag_tol);
    cert.valid = rep.valid;
    if (!cert.valid) {
        // all per-state searches passed but the assembled matrix misses the
        // thresholds; report as a search failure rather than a broken cert
        SearchFailure f;
        f.failed_index = -1;
        f.best_overlap = rep.max_offdiag;
        f.reason = "assembled certificate misses the overlap thresholds";
        f.complement_dim = psi.space().dim() - (n - 1);
        return f;
    }
    return cert;
}

CertifyOutcome multicopy_certificate(const std::vector<StateVector>& states, int copies,
                                     const SearchConfig& cfg, const RngStream& rng,
                                     double diag_floor, double offdiag_tol,
                                     const LiftLimits& limits) {
    if (copies < 1)
        throw InvalidInput("multicopy_certificate: copies must be >= 1");
    if (states.size() < 2)
        throw InvalidInput("multicopy_certificate: at least two states required");
    const SpaceSpec base = states.front().space();
    for (const auto& st : states)
        if (!(st.space() == base))
            throw InvalidInput("multicopy_certificate: states live on different spaces");
    if (copies * base.factor_count() > limits.max_factors)
        throw InvalidInput("multicopy_certificate: lifted factor count exceeds the cap");
    const double lifted_dim = std::pow(static_cast<double>(base.dim()), copies);
    if (lifted_dim > static_cast<double>(limits.max_dim))
        throw InvalidInput("multicopy_certificate: lifted dimension exceeds the cap");
    if (lifted_dim < static_cast<double>(states.size()))
        throw InvalidInput("multicopy_certificate: more states than the lifted dimension");

    std::vector<StateVector> lifted;
    lifted.reserve(states.size());
    for (const auto& st : states)
        lifted.push_back(copies == 1 ? st : tensor_power(st, copies));

    CertifyOutcome outcome =
        chefles_certificate(StateSet::from_states(std::move(lifted)), cfg, rng, diag_floor,
                            offdiag_tol);
    if (auto* cert = std::get_if<Certificate>(&outcome)) {
        cert->copies = copies;
        cert->base_space = base;
    }
    return outcome;
}

CertifyOutcome multicopy_certificate(const StateSet& psi, int copies, const SearchConfig& cfg,
                                     const RngStream& rng, double diag_floor, double offdiag_tol,
                                     const LiftLimits& limits) {
    return multicopy_certificate(psi.states(), copies, cfg, rng, diag_floor, offdiag_tol,
                                 limits);
}

ValidityReport validate_certificate(const Certificate& cert, const StateSet& psi) {
    if (cert.products.size() != psi.states().size())
        throw InvalidInput("validate_certificate: certificate and state set sizes differ");
    for (const auto& p : cert.products)
        if (!(p.space() == psi.space()))
            throw InvalidInput("validate_certificate: spaces do not match");
    return overlap_checks(overlap_matrix(cert.products, psi.states()), cert.diag_floor,
                          cert.offdiag_tol);
}

ValidityReport validate_certificate(const Certificate& cert) {
    return overlap_checks(overlap_matrix(cert.products, cert.states), cert.diag_floor,
                          cert.offdiag_tol);
}

UnambiguousPovm build_povm(const Certificate& cert, const std::vector<double>* weights) {
    if (!cert.valid)
        throw InvalidInput("build_povm: a valid certificate is required");
    const auto n = cert.products.size();
    UnambiguousPovm povm;
    povm.space = cert.space;
    povm.products = cert.products;
    if (weights) {
        if (weights->size() != n)
            throw InvalidInput("build_povm: weight count does not match the certificate");
        for (double w : *weights)
            if (!(w > 0.0))
                throw InvalidInput("build_povm: weights must be positive");
        povm.weights = *weights;
    } else {
        povm.weights.assign(n, 1.0 / static_cast<double>(n));
    }
    if (remainder_min_eigenvalue(povm) < -1e-10)
        throw IndefiniteRemainderError("build_povm: weights make the remainder indefinite");
    return povm;
}

double remainder_min_eigenvalue(const UnambiguousPovm& povm) {
    // E_0 = 1 - sum_j w_j |phi_j><phi_j|. Its spectrum below 1 comes from
    // the span of the phi_j, so the n x n form W^(1/2) G W^(1/2) suffices.
    const auto n = static_cast<Eigen::Index>(povm.products.size());
    Matrix g(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = 0; k < n; ++k)
            g(j, k) = povm.products[j].global().amps().dot(povm.products[k].global().amps());
    Vector wsqrt(n);
    for (Eigen::Index j = 0; j < n; ++j)
        wsqrt[j] = std::sqrt(povm.weights[j]);
    const Matrix core = wsqrt.asDiagonal() * g * wsqrt.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Matrix> eig(core, Eigen::EigenvaluesOnly);
    double min_eig = 1.0 - eig.eigenvalues().maxCoeff();
    if (n < povm.space.dim())
        min_eig = std::min(min_eig, 1.0); // E_0 acts as identity off the span
    return min_eig;
}

double predicted_success(const UnambiguousPovm& povm, const StateSet& psi) {
    const auto n = povm.products.size();
    if (psi.states().size() != n)
        throw InvalidInput("predicted_success: state count does not match the POVM");
    double p = 0.0;
    for (size_t j = 0; j < n; ++j)
        p += povm.weights[j] *
             std::norm(povm.products[j].global().amps().dot(psi.states()[j].amps()));
    return p / static_cast<double>(n);
}

double predicted_success(const UnambiguousPovm& povm, const Certificate& cert) {
    double p = 0.0;
    for (size_t j = 0; j < cert.products.size(); ++j)
        p += povm.weights[j] * std::norm(cert.overlaps(j, j));
    return p / static_cast<double>(cert.products.size());
}

namespace {

constexpr uint64_t kTrialBlockTagBase = uint64_t{1} << 32;
constexpr int64_t kTrialBlockSize = int64_t{1} << 16;

} // namespace

SimulationReport simulate(const UnambiguousPovm& povm, const StateSet& psi, int64_t trials,
                          const RngStream& rng) {
    if (trials < 0)
        throw InvalidInput("simulate: negative trial count");
    const int n = static_cast<int>(povm.products.size());
    if (psi.n() != n)
        throw InvalidInput("simulate: state count does not match the POVM");

    // Born probabilities p(k|j); p(0|j) is the inconclusive remainder.
    Eigen::MatrixXd prob(n, n + 1);
    for (int j = 0; j < n; ++j) {
        double rest = 1.0;
        for (int k = 0; k < n; ++k) {
            double p = povm.weights[k] *
                       std::norm(povm.products[k].global().amps().dot(psi.states()[j].amps()));
            rest -= p;
            prob(j, k + 1) = p;
        }
        if (rest < -1e-10)
            throw NumericalConsistencyError("simulate: negative inconclusive probability");
        prob(j, 0) = std::max(rest, 0.0);
        const double total = prob.row(j).sum();
        if (std::abs(total - 1.0) > 1e-10)
            throw NumericalConsistencyError("simulate: outcome probabilities do not sum to 1");
        prob.row(j) /= total;
    }

    SimulationReport rep;
    rep.trials = trials;
    rep.per_state.assign(n, {});
    rep.predicted = predicted_success(povm, psi);
    rep.sigma3 =
        trials > 0
            ? 3.0 * std::sqrt(rep.predicted * (1.0 - rep.predicted) / static_cast<double>(trials))
            : 0.0;

    int64_t correct_total = 0;
    for (int64_t t = 0; t < trials; t += kTrialBlockSize) {
        RngStream block = rng.substream(kTrialBlockTagBase + static_cast<uint64_t>(t / kTrialBlockSize));
        const int64_t upto = std::min<int64_t>(trials, t + kTrialBlockSize);
        for (int64_t u = t; u < upto; ++u) {
            const int j = static_cast<int>(block.uniform_index(n));
            const double roll = block.uniform();
            int k = 0;
            double acc = 0.0;
            for (; k <= n; ++k) {
                acc += prob(j, k);
                if (roll < acc)
                    break;
            }
            if (k > n)
                k = n; // roll landed in the roundoff tail
            if (k == 0)
                ++rep.per_state[j].inconclusive;
            else if (k - 1 == j) {
                ++rep.per_state[j].correct;
                ++correct_total;
            } else {
                ++rep.per_state[j].misidentified;
                ++rep.misidentified_total;
            }
        }
    }

    rep.success_rate =
        trials > 0 ? static_cast<double>(correct_total) / static_cast<double>(trials) : 0.0;
    rep.within_3sigma = trials == 0 || std::abs(rep.success_rate - rep.predicted) <= rep.sigma3;
    return rep;
}

SimulationReport simulate(const UnambiguousPovm& povm, const Certificate& cert, int64_t trials,
                          const RngStream& rng) {
    return simulate(povm, StateSet::from_states(cert.states), trials, rng);
}

const char* to_string(ExpectedVerdict v) {
    return v == ExpectedVerdict::distinguishable ? "expected-distinguishable"
                                                 : "expected-indistinguishable";
}

ExpectedVerdict generic_verdict(const SpaceSpec& space, int64_t n, int64_t copies) {
    if (n < 2)
        throw InvalidInput("generic_verdict: n must be >= 2");
    return n <= bounds::locc_threshold(space, copies) ? ExpectedVerdict::distinguishable
                                                      : ExpectedVerdict::indistinguishable;
}

} // namespace entsub
