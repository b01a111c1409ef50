#pragma once

#include "entsub/rng.hpp"
#include "entsub/subspace.hpp"

namespace entsub {

/// Haar-random pure state: D independent CN(0,1) draws, normalized.
StateVector random_state(const SpaceSpec& space, RngStream& rng);

/// Haar-random s-dimensional subspace: orthonormalization (Householder QR)
/// of a D x s standard complex Gaussian matrix. The column span of a
/// Gaussian matrix is uniform on the Grassmannian, so no phase correction
/// of Q is needed.
Subspace random_subspace(const SpaceSpec& space, int s, RngStream& rng);

/// Independent Haar-random state on every factor, assembled.
ProductState random_product_state(const SpaceSpec& space, RngStream& rng);

} // namespace entsub
