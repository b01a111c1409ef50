#include "entsub/schmidt.hpp"

#include <algorithm>

#include <Eigen/SVD>

namespace entsub {

std::pair<std::vector<int>, std::vector<int>> split_cut(const SpaceSpec& space, const Cut& cut) {
    const int m = space.factor_count();
    std::vector<char> in_left(m, 0);
    for (int j : cut.left) {
        if (j < 0 || j >= m)
            throw InvalidInput("cut: factor index out of range");
        if (in_left[j])
            throw InvalidInput("cut: duplicate factor index");
        in_left[j] = 1;
    }
    std::vector<int> left, right;
    for (int j = 0; j < m; ++j)
        (in_left[j] ? left : right).push_back(j);
    if (left.empty() || right.empty())
        throw InvalidInput("cut: both sides of the bipartition must be nonempty");
    return {left, right};
}

namespace {

int64_t side_dim(const SpaceSpec& space, const std::vector<int>& side) {
    int64_t d = 1;
    for (int j : side)
        d *= space.dims()[j];
    return d;
}

int64_t side_index(const SpaceSpec& space, const std::vector<int>& side,
                   const std::vector<int>& digits) {
    int64_t idx = 0;
    for (int j : side)
        idx = idx * space.dims()[j] + digits[j];
    return idx;
}

} // namespace

Matrix reshape_across_cut(const StateVector& x, const Cut& cut) {
    const SpaceSpec& space = x.space();
    auto [left, right] = split_cut(space, cut);
    Matrix m(side_dim(space, left), side_dim(space, right));
    std::vector<int> digits(space.factor_count(), 0);
    for (int64_t g = 0; g < space.dim(); ++g) {
        space.decompose(g, digits);
        m(side_index(space, left, digits), side_index(space, right, digits)) = x.amps()[g];
    }
    return m;
}

Vector flatten_across_cut(const SpaceSpec& space, const Cut& cut, const Matrix& m) {
    auto [left, right] = split_cut(space, cut);
    Vector amps(space.dim());
    std::vector<int> digits(space.factor_count(), 0);
    for (int64_t g = 0; g < space.dim(); ++g) {
        space.decompose(g, digits);
        amps[g] = m(side_index(space, left, digits), side_index(space, right, digits));
    }
    return amps;
}

SchmidtData schmidt(const StateVector& x, const Cut& cut) {
    const Matrix m = reshape_across_cut(x, cut);
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);

    SchmidtData out;
    out.cut = cut;
    out.coeffs = svd.singularValues().array().square();
    out.left_vecs = svd.matrixU();
    // M = U S V^dagger, so amps(l, r) = sum sqrt(lambda) u[l] conj(v)[r]:
    // the right Schmidt vectors are the conjugated V columns.
    out.right_vecs = svd.matrixV().conjugate();
    return out;
}

} // namespace entsub
