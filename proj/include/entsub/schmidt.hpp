#pragma once

#include "entsub/state.hpp"

namespace entsub {

inline constexpr double kDefaultRankTol = 1e-8;

/// Schmidt decomposition of a pure state across a bipartition of the factors.
///
/// coeffs are the squared Schmidt coefficients lambda_l (descending,
/// summing to 1); the state reconstructs as sum_l sqrt(lambda_l) u_l (x) v_l
/// with u_l / v_l the columns of left_vecs / right_vecs.
struct SchmidtData {
    Cut cut;
    Eigen::VectorXd coeffs;
    Matrix left_vecs;
    Matrix right_vecs;

    int rank_at(double tol = kDefaultRankTol) const {
        int r = 0;
        for (Eigen::Index l = 0; l < coeffs.size(); ++l)
            if (coeffs[l] > tol)
                ++r;
        return r;
    }
};

/// Validates the cut and returns (sorted left set, sorted right set).
std::pair<std::vector<int>, std::vector<int>> split_cut(const SpaceSpec& space, const Cut& cut);

/// Reshapes the state across the cut, row-major within each side, and
/// takes the SVD of the resulting matrix.
SchmidtData schmidt(const StateVector& x, const Cut& cut);

/// The reshaped matrix M with M(l, r) = amps[g(l, r)].
Matrix reshape_across_cut(const StateVector& x, const Cut& cut);

/// Inverse of reshape_across_cut.
Vector flatten_across_cut(const SpaceSpec& space, const Cut& cut, const Matrix& m);

} // namespace entsub
