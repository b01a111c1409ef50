#pragma once

#include <variant>

#include "entsub/search.hpp"

namespace entsub {

inline constexpr double kDefaultDiagFloor = 1e-6;
inline constexpr double kDefaultOffdiagTol = 1e-8;

/// The known possibilities Psi = {psi_1, ..., psi_n}, linearly independent.
class StateSet {
  public:
    StateSet() = default;

    /// Validates common space, 2 <= n <= D and numerical independence.
    static StateSet from_states(std::vector<StateVector> states,
                                double dep_tol = kDefaultDepTol);

    const SpaceSpec& space() const { return space_; }
    const std::vector<StateVector>& states() const { return states_; }
    int n() const { return static_cast<int>(states_.size()); }
    const Matrix& gram() const { return gram_; }

  private:
    SpaceSpec space_;
    std::vector<StateVector> states_;
    Matrix gram_;
};

/// n product states with <phi_j|psi_k> = 0 exactly when j != k, witnessing
/// unambiguous local distinguishability. For copies > 1 everything lives on
/// the lifted (c*m)-factor space and `states` are the lifted members.
struct Certificate {
    SpaceSpec space;                     // certificate space (lifted if copies > 1)
    SpaceSpec base_space;                // the original space of Psi
    int copies = 1;
    std::vector<StateVector> states;     // psi_k on `space`
    std::vector<ProductState> products;  // phi_j on `space`
    Matrix overlaps;                     // O(j, k) = <phi_j|psi_k>
    bool valid = false;
    double diag_floor = kDefaultDiagFloor;
    double offdiag_tol = kDefaultOffdiagTol;
};

/// Why no certificate came out: the complement search for state
/// `failed_index` found no product state (or the found one was orthogonal
/// to its own state). When the complement is one-dimensional the exact
/// converse is attached: the Schmidt rank of the single complement vector
/// across every single-factor cut (product iff all ranks are 1).
struct SearchFailure {
    int failed_index = -1;
    double best_overlap = 0.0;
    std::string reason;
    int64_t complement_dim = 0;
    std::vector<int> complement_cut_ranks; // filled when complement_dim == 1
};

using CertifyOutcome = std::variant<Certificate, SearchFailure>;

struct ValidityReport {
    bool valid = false;
    double min_diag = 0.0;
    double max_offdiag = 0.0;
};

struct LiftLimits {
    int max_factors = 12;
    int64_t max_dim = 4096;
};

/// For each j: spans Psi minus psi_j, searches its orthogonal complement for
/// a product state, and accepts phi_j when |<phi_j|psi_j>| > diag_floor.
CertifyOutcome chefles_certificate(const StateSet& psi, const SearchConfig& cfg,
                                   const RngStream& rng,
                                   double diag_floor = kDefaultDiagFloor,
                                   double offdiag_tol = kDefaultOffdiagTol);

/// Lifts every state to c separated copies and certifies there. c = 1 is
/// exactly chefles_certificate. The input need not be linearly independent
/// on the base space (n may exceed D); the lifted set must be, which is
/// what StateSet enforces on the lifted space.
CertifyOutcome multicopy_certificate(const std::vector<StateVector>& states, int copies,
                                     const SearchConfig& cfg, const RngStream& rng,
                                     double diag_floor = kDefaultDiagFloor,
                                     double offdiag_tol = kDefaultOffdiagTol,
                                     const LiftLimits& limits = {});
CertifyOutcome multicopy_certificate(const StateSet& psi, int copies, const SearchConfig& cfg,
                                     const RngStream& rng,
                                     double diag_floor = kDefaultDiagFloor,
                                     double offdiag_tol = kDefaultOffdiagTol,
                                     const LiftLimits& limits = {});

/// Recomputes the overlap matrix from scratch against the given state set.
ValidityReport validate_certificate(const Certificate& cert, const StateSet& psi);
ValidityReport validate_certificate(const Certificate& cert);

/// The protocol POVM {w_j |phi_j><phi_j|, E_0 = 1 - sum_j ...}; with the
/// default w_j = 1/n it is LOCC implementable.
struct UnambiguousPovm {
    SpaceSpec space;
    std::vector<double> weights;
    std::vector<ProductState> products;
};

UnambiguousPovm build_povm(const Certificate& cert,
                           const std::vector<double>* weights = nullptr);

/// min eigenvalue of the remainder element E_0 (via the n x n Gram form).
double remainder_min_eigenvalue(const UnambiguousPovm& povm);

/// (1/n) sum_j w_j |<phi_j|psi_j>|^2 under the uniform prior.
double predicted_success(const UnambiguousPovm& povm, const StateSet& psi);
double predicted_success(const UnambiguousPovm& povm, const Certificate& cert);

struct StateTally {
    int64_t correct = 0;
    int64_t inconclusive = 0;
    int64_t misidentified = 0;
};

struct SimulationReport {
    int64_t trials = 0;
    std::vector<StateTally> per_state;
    double success_rate = 0.0;
    double predicted = 0.0;
    double sigma3 = 0.0; // 3-sigma binomial half-width at the predicted rate
    bool within_3sigma = true;
    int64_t misidentified_total = 0;
};

/// Monte-Carlo outcome sampling from the Born probabilities
/// p(k|j) = <psi_j|E_k|psi_j>; trial block b draws from substream(2^32 + b).
SimulationReport simulate(const UnambiguousPovm& povm, const StateSet& psi, int64_t trials,
                          const RngStream& rng);
SimulationReport simulate(const UnambiguousPovm& povm, const Certificate& cert, int64_t trials,
                          const RngStream& rng);

enum class ExpectedVerdict { distinguishable, indistinguishable };

const char* to_string(ExpectedVerdict v);

/// Compares n against the closed-form threshold 1 + c * sum_j (d_j - 1).
ExpectedVerdict generic_verdict(const SpaceSpec& space, int64_t n, int64_t copies);

} // namespace entsub
