#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "entsub/space.hpp"

namespace entsub {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kUnitNormTol = 1e-12;
inline constexpr double kPhaseTol = 1e-12;

/// A pure state: unit amplitude vector over the global multi-index order.
class StateVector {
  public:
    StateVector() = default;
    StateVector(SpaceSpec space, Vector amps);

    /// Normalizes before constructing; rejects (near-)zero vectors.
    static StateVector normalized(SpaceSpec space, Vector amps);

    const SpaceSpec& space() const { return space_; }
    const Vector& amps() const { return amps_; }

  private:
    SpaceSpec space_;
    Vector amps_;
};

/// Fixes the global phase: first component with |a| > 1e-12 made real positive.
Vector canonicalized(const Vector& v);
StateVector canonicalized(const StateVector& x);

/// Fully factorized state; `global` is the Kronecker product of the factors.
class ProductState {
  public:
    ProductState() = default;
    ProductState(SpaceSpec space, std::vector<Vector> factors);

    const SpaceSpec& space() const { return space_; }
    const std::vector<Vector>& factors() const { return factors_; }
    const StateVector& global() const { return global_; }

    /// Phase-gauges every factor; the global vector is rebuilt to match.
    ProductState canonicalized() const;

  private:
    SpaceSpec space_;
    std::vector<Vector> factors_;
    StateVector global_;
};

/// Assembles factor states into a ProductState.
/// global[(k_1,...,k_m)] = prod_j factor_j[k_j].
ProductState tensor(const SpaceSpec& space, std::vector<Vector> factors);

/// Kronecker product of the factor list alone (no unit-norm requirement).
Vector kron_all(const SpaceSpec& space, const std::vector<Vector>& factors);

/// <x|y>: conjugate-linear in x, linear in y.
Complex overlap(const StateVector& x, const StateVector& y);

/// |phi>^(x)c on space.tensor_power(c).
StateVector tensor_power(const StateVector& x, int copies);

/// Squared product fidelity prod_j |<a_j|b_j>|^2; phase-invariant by construction.
double product_fidelity(const ProductState& a, const ProductState& b);

} // namespace entsub
