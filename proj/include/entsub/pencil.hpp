#pragma once

#include <array>

#include "entsub/subspace.hpp"

namespace entsub {

/// Projective roots of det(alpha*A + beta*B) for a 2-dimensional subspace
/// of a d x d bipartite space with reshaped basis matrices A, B. Each root
/// pins the rank-deficient (Schmidt rank <= d-1) member alpha*b1 + beta*b2.
struct PencilRoots {
    int degree = 0;                            // d
    int count = 0;                             // projectively distinct roots
    std::vector<std::array<Complex, 2>> roots; // (alpha, beta), normalized
    std::vector<StateVector> states;           // corresponding subspace members
};

/// Exact (up to root-finding) oracle for the rank-deficient members of a
/// 2-dimensional pencil. Throws DegeneratePencilError when the determinant
/// form vanishes identically and InvalidInput unless the space is d x d
/// bipartite with s = 2.
PencilRoots count_rank_deficient_pencil(const Subspace& S);

/// Root coordinates for an arbitrary (not necessarily orthonormal) pencil
/// spanned by the d x d matrices a and b.
PencilRoots pencil_roots(const SpaceSpec& space, const Matrix& a, const Matrix& b);

} // namespace entsub
