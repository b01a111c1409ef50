#include "entsub/subspace.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

namespace entsub {

Subspace::Subspace(SpaceSpec space, Matrix basis)
    : space_(std::move(space)), basis_(std::move(basis)) {
    const int64_t D = space_.dim();
    if (basis_.rows() != D)
        throw InvalidInput("Subspace: basis row count does not match the space dimension");
    if (basis_.cols() < 1 || basis_.cols() > D)
        throw InvalidInput("Subspace: dimension must satisfy 1 <= s <= D");
    Matrix gram = basis_.adjoint() * basis_;
    gram.diagonal().array() -= 1.0;
    if (gram.cwiseAbs().maxCoeff() > kOrthoTol)
        throw InvalidInput("Subspace: basis columns are not orthonormal");
}

Subspace span(const std::vector<StateVector>& states, double dep_tol) {
    if (states.empty())
        throw InvalidInput("span: empty state list");
    const SpaceSpec& space = states.front().space();
    for (const auto& st : states)
        if (!(st.space() == space))
            throw InvalidInput("span: states live on different spaces");

    const int64_t n = static_cast<int64_t>(states.size());
    if (n > space.dim())
        throw LinearDependenceError("span: more states than the space dimension");
    Matrix stacked(space.dim(), n);
    for (int64_t c = 0; c < n; ++c)
        stacked.col(c) = states[c].amps();

    Eigen::JacobiSVD<Matrix> svd(stacked, Eigen::ComputeThinU);
    if (svd.singularValues()(n - 1) < dep_tol)
        throw LinearDependenceError("span: states are numerically linearly dependent");
    return Subspace(space, svd.matrixU());
}

Subspace orthonormal_complement(const Subspace& S) {
    const int64_t D = S.space().dim();
    const int64_t s = S.s();
    if (s == D)
        throw EmptyComplementError("orthonormal_complement: subspace already fills the space");
    // Householder Q completes the orthonormal columns to a full unitary.
    Eigen::HouseholderQR<Matrix> qr(S.basis());
    Matrix q = qr.householderQ() * Matrix::Identity(D, D);
    return Subspace(S.space(), q.rightCols(D - s));
}

double subspace_overlap(const Subspace& S, const StateVector& x) {
    if (!(S.space() == x.space()))
        throw InvalidInput("subspace_overlap: state and subspace live on different spaces");
    return (S.basis().adjoint() * x.amps()).squaredNorm();
}

SubspaceProjector SubspaceProjector::direct(const Subspace& S) {
    return SubspaceProjector(S.space(), S.basis(), false);
}

SubspaceProjector SubspaceProjector::complement_of(const Subspace& spanned) {
    if (spanned.s() == spanned.space().dim())
        throw EmptyComplementError("SubspaceProjector: complement of the full space is empty");
    return SubspaceProjector(spanned.space(), spanned.basis(), true);
}

int64_t SubspaceProjector::rank() const {
    return complemented_ ? space_.dim() - cols_.cols() : cols_.cols();
}

double SubspaceProjector::overlap(const Vector& amps) const {
    const double inside = (cols_.adjoint() * amps).squaredNorm();
    return complemented_ ? amps.squaredNorm() - inside : inside;
}

Matrix column_contractions(const SpaceSpec& space, const Matrix& cols,
                           const std::vector<Vector>& factors, int i) {
    const int m = space.factor_count();
    const int di = space.dims()[i];
    Matrix out = Matrix::Zero(di, cols.cols());
    std::vector<int> digits(m, 0);
    for (int64_t g = 0; g < space.dim(); ++g) {
        space.decompose(g, digits);
        Complex w{1.0, 0.0};
        for (int j = 0; j < m; ++j)
            if (j != i)
                w *= std::conj(factors[j][digits[j]]);
        out.row(digits[i]) += w * cols.row(g);
    }
    return out;
}

Matrix SubspaceProjector::column_contractions(const std::vector<Vector>& factors, int i) const {
    return entsub::column_contractions(space_, cols_, factors, i);
}

Matrix SubspaceProjector::factor_matrix(const std::vector<Vector>& factors, int i) const {
    const Matrix v = column_contractions(factors, i);
    Matrix m = v * v.adjoint();
    if (complemented_)
        m = Matrix::Identity(m.rows(), m.cols()) - m;
    // symmetrize away roundoff
    return 0.5 * (m + m.adjoint());
}

} // namespace entsub
