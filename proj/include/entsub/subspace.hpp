#pragma once

#include <vector>

#include "entsub/state.hpp"

namespace entsub {

inline constexpr double kOrthoTol = 1e-10;
inline constexpr double kDefaultDepTol = 1e-10;

/// An s-dimensional subspace held as a D x s matrix with orthonormal columns.
class Subspace {
  public:
    Subspace() = default;
    Subspace(SpaceSpec space, Matrix basis);

    const SpaceSpec& space() const { return space_; }
    const Matrix& basis() const { return basis_; }
    int s() const { return static_cast<int>(basis_.cols()); }

    /// Projector B B^dagger, materialized. Desk-scale only.
    Matrix projector() const { return basis_ * basis_.adjoint(); }

  private:
    SpaceSpec space_;
    Matrix basis_;
};

/// Orthonormal basis for the span of the given states.
/// Throws LinearDependenceError when the smallest singular value of the
/// stacked matrix falls below dep_tol (rank < list length).
Subspace span(const std::vector<StateVector>& states, double dep_tol = kDefaultDepTol);

/// Orthonormal basis of S-perp. Throws EmptyComplementError when s = D.
Subspace orthonormal_complement(const Subspace& S);

/// <x|P_S|x> = ||B^dagger x||^2, in [0, 1] up to roundoff.
double subspace_overlap(const Subspace& S, const StateVector& x);

/// out(k, c) = sum_{g : g_i = k} cols(g, c) * prod_{j != i} conj(factors[j][g_j]).
Matrix column_contractions(const SpaceSpec& space, const Matrix& cols,
                           const std::vector<Vector>& factors, int i);

/// Orthogonal projector handle used by the searches: either P = C C^dagger
/// (direct) or P = I - C C^dagger (complement of a small span). The
/// complement form never materializes the large complementary basis.
class SubspaceProjector {
  public:
    static SubspaceProjector direct(const Subspace& S);
    static SubspaceProjector complement_of(const Subspace& spanned);

    const SpaceSpec& space() const { return space_; }
    bool complemented() const { return complemented_; }
    const Matrix& columns() const { return cols_; }
    /// Dimension of the projected-onto subspace.
    int64_t rank() const;

    double overlap(const Vector& amps) const;

    /// Contraction of every column against the bra factors j != i:
    /// out(k, c) = sum_{g : g_i = k} cols(g, c) * prod_{j != i} conj(factors[j][g_j]).
    Matrix column_contractions(const std::vector<Vector>& factors, int i) const;

    /// The d_i x d_i Hermitian matrix whose top eigenvector is the optimal
    /// factor i holding the others fixed: V V^dagger, or I - V V^dagger in
    /// complement form, with V = column_contractions(factors, i).
    Matrix factor_matrix(const std::vector<Vector>& factors, int i) const;

  private:
    SubspaceProjector(SpaceSpec space, Matrix cols, bool complemented)
        : space_(std::move(space)), cols_(std::move(cols)), complemented_(complemented) {}

    SpaceSpec space_;
    Matrix cols_;
    bool complemented_ = false;
};

} // namespace entsub
