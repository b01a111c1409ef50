#pragma once

#include <optional>

#include "entsub/rng.hpp"
#include "entsub/schmidt.hpp"
#include "entsub/subspace.hpp"

namespace entsub {

struct SearchConfig {
    int restarts = 200;
    int max_sweeps = 500;
    double conv_tol = 1e-12;       // sweep-to-sweep objective gain
    double membership_tol = 1e-8;  // found iff objective >= 1 - membership_tol
    double cluster_tol = 0.99;     // product-fidelity threshold for identity
    int saturation_window = 50;    // consecutive non-novel restarts

    void validate() const;
};

enum class Verdict { found, not_found };

const char* to_string(Verdict v);

struct SweepStats {
    int64_t total_sweeps = 0;
    int max_sweeps_used = 0;
    int converged_restarts = 0;
};

struct SearchResult {
    Verdict verdict = Verdict::not_found;
    double best_overlap = 0.0;
    std::optional<ProductState> best_state; // present when found
    int restarts_used = 0;
    SweepStats sweeps;
};

struct CountResult {
    std::vector<ProductState> representatives;
    int count = 0;
    bool saturated = false;
    int64_t formula_expected = 0;
    int restarts_used = 0;
};

struct LowRankResult {
    Verdict verdict = Verdict::not_found;
    int rank = 0;
    double best_overlap = 0.0;               // subspace overlap of the best rank-r state
    std::optional<StateVector> best_state;   // present when found
    std::vector<StateVector> fixed_points;   // distinct found fixed points
    int restarts_used = 0;
};

/// One cyclic-maximization step on factor i: replaces it with the top
/// eigenvector of the contracted projector and returns the new objective
/// <phi|P|phi> (never smaller than before, up to roundoff).
struct SeesawUpdate {
    Vector factor;
    double objective;
};

SeesawUpdate seesaw_step(const std::vector<Vector>& factors, const SubspaceProjector& proj, int i);
SeesawUpdate seesaw_step(const std::vector<Vector>& factors, const Subspace& S, int i);

/// Multi-restart seesaw search for a product state maximizing <phi|P_S|phi>.
/// Deterministic in (cfg, rng); restart r draws from rng.substream(r).
/// Stops at the first restart reaching 1 - membership_tol.
SearchResult find_product_in_subspace(const SubspaceProjector& proj, const SearchConfig& cfg,
                                      const RngStream& rng);
SearchResult find_product_in_subspace(const Subspace& S, const SearchConfig& cfg,
                                      const RngStream& rng);

/// Runs the full restart budget, clustering found product states by
/// per-factor fidelity. Only defined where the generic count is finite
/// (s <= s_max + 1); otherwise throws CountingUnsupported.
CountResult enumerate_products(const Subspace& S, const SearchConfig& cfg, const RngStream& rng);

/// Alternating projections between the rank-<=r variety (SVD truncation
/// across the cut) and S. A restart counts as found when the truncated
/// state sits in S within membership_tol and has rank_at(1e-8) <= r.
LowRankResult find_low_rank_in_subspace(const Subspace& S, int r, const Cut& cut,
                                        const SearchConfig& cfg, const RngStream& rng);
LowRankResult find_low_rank_in_subspace(const Subspace& S, int r, const SearchConfig& cfg,
                                        const RngStream& rng);

} // namespace entsub
