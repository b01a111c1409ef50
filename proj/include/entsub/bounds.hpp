#pragma once

#include <cstdint>
#include <optional>

#include "entsub/space.hpp"

namespace entsub {
namespace bounds {

/// Largest dimension of a subspace containing no product states:
/// D - sum_j (d_j - 1) - 1.
int64_t s_max(const SpaceSpec& space);

/// Number of product states in a generic subspace of dimension s_max + 1:
/// (sum_j (d_j - 1))! / prod_j (d_j - 1)!.
int64_t segre_degree(const SpaceSpec& space);

/// Largest dimension of a bipartite subspace void of states with Schmidt
/// rank <= r: (d1 - r)(d2 - r). Requires 1 <= r < min(d1, d2).
int64_t schmidt_smax(int d1, int d2, int r);

/// Count of Schmidt-rank <= r states in a generic subspace one above that
/// threshold: prod_{j=0}^{d1-r-1} (d2+j)! j! / ((r+j)! (d2-r+j)!).
/// Requires d2 >= d1 > r >= 1.
int64_t determinantal_degree(int d1, int d2, int r);

/// Largest n unambiguously locally distinguishable with c separated copies:
/// 1 + c * sum_j (d_j - 1).
int64_t locc_threshold(const SpaceSpec& space, int64_t copies);

/// Minimum separated copies to distinguish n states: ceil((n-1) / sum_j (d_j-1)).
int64_t min_copies(const SpaceSpec& space, int64_t n);

/// Generic product-state count for an s-dimensional subspace; nullopt means
/// the generic count is infinite (s > s_max + 1).
std::optional<int64_t> generic_product_count(const SpaceSpec& space, int64_t s);

struct ThresholdReport {
    SpaceSpec space;
    int64_t s_max = 0;
    int64_t segre_degree = 0;
    int64_t copies = 1;
    int64_t locc_threshold = 0;
    std::optional<int64_t> n;          // query, when given
    std::optional<int64_t> min_copies; // filled when n is given
};

ThresholdReport threshold_report(const SpaceSpec& space, int64_t copies = 1,
                                 std::optional<int64_t> n = std::nullopt);

} // namespace bounds
} // namespace entsub
