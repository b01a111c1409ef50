#include "entsub/pencil.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "entsub/schmidt.hpp"

namespace entsub {

namespace {

constexpr double kCoeffTol = 1e-10;  // relative cutoff for polynomial degree
constexpr double kRootClusterTol = 1e-7;

// Coefficients c_0..c_d of p(t) = det(A + t B) by evaluation at d+1 nodes
// and a Vandermonde solve; exact up to conditioning at these small degrees.
Vector pencil_coefficients(const Matrix& a, const Matrix& b) {
    const auto d = a.rows();
    const auto n = d + 1;
    Vector values(n);
    Matrix vander(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) - static_cast<double>(d) / 2.0;
        values[k] = Matrix(a + t * b).determinant();
        double p = 1.0;
        for (Eigen::Index j = 0; j < n; ++j, p *= t)
            vander(k, j) = p;
    }
    return vander.partialPivLu().solve(values);
}

std::vector<Complex> companion_roots(const Vector& coeffs) {
    const auto deg = coeffs.size() - 1;
    if (deg == 0)
        return {};
    Matrix comp = Matrix::Zero(deg, deg);
    for (Eigen::Index k = 0; k + 1 < deg; ++k)
        comp(k + 1, k) = 1.0;
    for (Eigen::Index k = 0; k < deg; ++k)
        comp(k, deg - 1) = -coeffs[k] / coeffs[deg];
    Eigen::ComplexEigenSolver<Matrix> eig(comp);
    std::vector<Complex> roots(eig.eigenvalues().data(), eig.eigenvalues().data() + deg);
    return roots;
}

// Chordal distance between projective points (a1:b1), (a2:b2), both normalized.
double chordal(const std::array<Complex, 2>& p, const std::array<Complex, 2>& q) {
    return std::abs(p[0] * q[1] - p[1] * q[0]);
}

std::array<Complex, 2> normalized_root(Complex alpha, Complex beta) {
    const double n = std::sqrt(std::norm(alpha) + std::norm(beta));
    alpha /= n;
    beta /= n;
    // canonical phase: first significant component real positive
    const Complex lead = std::abs(alpha) > kPhaseTol ? alpha : beta;
    const Complex phase = std::conj(lead) / std::abs(lead);
    return {alpha * phase, beta * phase};
}

} // namespace

PencilRoots count_rank_deficient_pencil(const Subspace& S) {
    const SpaceSpec& space = S.space();
    if (S.s() != 2)
        throw InvalidInput("count_rank_deficient_pencil: requires a 2-dimensional subspace");
    if (space.factor_count() != 2 || space.dims()[0] != space.dims()[1])
        throw InvalidInput("count_rank_deficient_pencil: requires a d x d bipartite space");

    const Cut cut = Cut::single_factor(0);
    return pencil_roots(space,
                        reshape_across_cut(StateVector(space, S.basis().col(0)), cut),
                        reshape_across_cut(StateVector(space, S.basis().col(1)), cut));
}

PencilRoots pencil_roots(const SpaceSpec& space, const Matrix& a, const Matrix& b) {
    if (space.factor_count() != 2 || space.dims()[0] != space.dims()[1])
        throw InvalidInput("pencil_roots: requires a d x d bipartite space");
    const int d = space.dims()[0];
    if (a.rows() != d || a.cols() != d || b.rows() != d || b.cols() != d)
        throw InvalidInput("pencil_roots: matrix shape does not match the space");

    // p(t) = det(A + t B) = q(1, t); the binary form is q(alpha, beta) =
    // sum_j c_j alpha^(d-j) beta^j, so high-order zero coefficients mean
    // roots at infinity (alpha = 0).
    Vector coeffs = pencil_coefficients(a, b);
    const double scale = coeffs.cwiseAbs().maxCoeff();
    if (scale < 1e-12)
        throw DegeneratePencilError("count_rank_deficient_pencil: det form vanishes identically");
    coeffs /= scale;

    int eff_deg = d;
    while (eff_deg > 0 && std::abs(coeffs[eff_deg]) < kCoeffTol)
        --eff_deg;

    std::vector<std::array<Complex, 2>> roots;
    if (eff_deg < d)
        roots.push_back(normalized_root(0.0, 1.0));
    for (Complex t : companion_roots(coeffs.head(eff_deg + 1)))
        roots.push_back(normalized_root(1.0, t));

    // cluster projectively coincident roots (generic multiplicity is 1)
    std::vector<std::array<Complex, 2>> distinct;
    for (const auto& r : roots) {
        const bool seen = std::any_of(distinct.begin(), distinct.end(), [&](const auto& q) {
            return chordal(r, q) < kRootClusterTol;
        });
        if (!seen)
            distinct.push_back(r);
    }
    std::sort(distinct.begin(), distinct.end(), [](const auto& p, const auto& q) {
        const auto key = [](const std::array<Complex, 2>& x) {
            return std::make_tuple(x[0].real(), x[0].imag(), x[1].real(), x[1].imag());
        };
        return key(p) < key(q);
    });

    PencilRoots out;
    out.degree = d;
    out.count = static_cast<int>(distinct.size());
    out.roots = std::move(distinct);
    const Cut cut = Cut::single_factor(0);
    for (const auto& r : out.roots) {
        Vector amps = flatten_across_cut(space, cut, Matrix(r[0] * a + r[1] * b));
        out.states.push_back(canonicalized(StateVector::normalized(space, std::move(amps))));
    }
    return out;
}

} // namespace entsub
