#include "entsub/state.hpp"

#include <cmath>

namespace entsub {

StateVector::StateVector(SpaceSpec space, Vector amps)
    : space_(std::move(space)), amps_(std::move(amps)) {
    if (amps_.size() != space_.dim())
        throw InvalidInput("StateVector: amplitude count does not match the space dimension");
    if (std::abs(amps_.norm() - 1.0) > kUnitNormTol)
        throw InvalidInput("StateVector: amplitudes are not unit-norm");
}

StateVector StateVector::normalized(SpaceSpec space, Vector amps) {
    const double n = amps.norm();
    if (n < 1e-300)
        throw InvalidInput("StateVector::normalized: zero vector");
    return StateVector(std::move(space), amps / n);
}

Vector canonicalized(const Vector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double a = std::abs(v[i]);
        if (a > kPhaseTol) {
            Vector out = v * (std::conj(v[i]) / a);
            out[i] = Complex(a, 0.0); // exactly real, so the map is idempotent
            return out;
        }
    }
    return v;
}

StateVector canonicalized(const StateVector& x) {
    return StateVector(x.space(), canonicalized(x.amps()));
}

Vector kron_all(const SpaceSpec& space, const std::vector<Vector>& factors) {
    const int m = space.factor_count();
    Vector out(space.dim());
    std::vector<int> digits(m, 0);
    for (int64_t g = 0; g < space.dim(); ++g) {
        space.decompose(g, digits);
        Complex prod{1.0, 0.0};
        for (int j = 0; j < m; ++j)
            prod *= factors[j][digits[j]];
        out[g] = prod;
    }
    return out;
}

ProductState::ProductState(SpaceSpec space, std::vector<Vector> factors)
    : space_(std::move(space)), factors_(std::move(factors)) {
    const int m = space_.factor_count();
    if (static_cast<int>(factors_.size()) != m)
        throw InvalidInput("ProductState: factor count does not match the space");
    for (int j = 0; j < m; ++j) {
        if (factors_[j].size() != space_.dims()[j])
            throw InvalidInput("ProductState: factor length does not match its dimension");
        if (std::abs(factors_[j].norm() - 1.0) > kUnitNormTol)
            throw InvalidInput("ProductState: factor is not unit-norm");
    }
    global_ = StateVector(space_, kron_all(space_, factors_));
}

ProductState ProductState::canonicalized() const {
    std::vector<Vector> fixed;
    fixed.reserve(factors_.size());
    for (const auto& f : factors_)
        fixed.push_back(entsub::canonicalized(f));
    return ProductState(space_, std::move(fixed));
}

ProductState tensor(const SpaceSpec& space, std::vector<Vector> factors) {
    return ProductState(space, std::move(factors));
}

Complex overlap(const StateVector& x, const StateVector& y) {
    if (!(x.space() == y.space()))
        throw InvalidInput("overlap: states live on different spaces");
    return x.amps().dot(y.amps());
}

StateVector tensor_power(const StateVector& x, int copies) {
    SpaceSpec lifted = x.space().tensor_power(copies);
    const int64_t d = x.space().dim();
    Vector amps = x.amps();
    for (int c = 1; c < copies; ++c) {
        Vector next(amps.size() * d);
        for (int64_t i = 0; i < amps.size(); ++i)
            next.segment(i * d, d) = amps[i] * x.amps();
        amps.swap(next);
    }
    return StateVector::normalized(std::move(lifted), std::move(amps));
}

double product_fidelity(const ProductState& a, const ProductState& b) {
    if (!(a.space() == b.space()))
        throw InvalidInput("product_fidelity: states live on different spaces");
    double fid = 1.0;
    for (size_t j = 0; j < a.factors().size(); ++j)
        fid *= std::norm(a.factors()[j].dot(b.factors()[j]));
    return fid;
}

} // namespace entsub
