#include "entsub/sampling.hpp"

#include <Eigen/QR>

namespace entsub {

StateVector random_state(const SpaceSpec& space, RngStream& rng) {
    Vector amps(space.dim());
    for (int64_t g = 0; g < space.dim(); ++g)
        amps[g] = rng.complex_gaussian();
    return StateVector::normalized(space, std::move(amps));
}

Subspace random_subspace(const SpaceSpec& space, int s, RngStream& rng) {
    if (s < 1 || s > space.dim())
        throw InvalidInput("random_subspace: s must satisfy 1 <= s <= D");
    Matrix g(space.dim(), s);
    for (int64_t c = 0; c < s; ++c)
        for (int64_t r = 0; r < space.dim(); ++r)
            g(r, c) = rng.complex_gaussian();
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(space.dim(), s);
    return Subspace(space, std::move(q));
}

ProductState random_product_state(const SpaceSpec& space, RngStream& rng) {
    std::vector<Vector> factors;
    factors.reserve(space.factor_count());
    for (int d : space.dims()) {
        Vector f(d);
        for (int k = 0; k < d; ++k)
            f[k] = rng.complex_gaussian();
        factors.push_back(f / f.norm());
    }
    return ProductState(space, std::move(factors));
}

} // namespace entsub
