#pragma once

#include "entsub/sampling.hpp"

namespace entsub::testutil {

inline StateVector basis_state(const SpaceSpec& space, int64_t k) {
    Vector amps = Vector::Zero(space.dim());
    amps[k] = 1.0;
    return StateVector(space, std::move(amps));
}

inline Vector unit(std::initializer_list<Complex> entries) {
    Vector v(static_cast<Eigen::Index>(entries.size()));
    Eigen::Index i = 0;
    for (const auto& e : entries)
        v[i++] = e;
    v.normalize();
    return v;
}

inline double projector_distance(const Matrix& a, const Matrix& b) {
    return (a * a.adjoint() - b * b.adjoint()).cwiseAbs().maxCoeff();
}

} // namespace entsub::testutil
