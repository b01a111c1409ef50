#include <doctest.h>

#include <Eigen/SVD>

#include "entsub/schmidt.hpp"
#include "entsub/subspace.hpp"
#include "test_utils.hpp"

using namespace entsub;
using testutil::basis_state;
using testutil::unit;

TEST_CASE("tensor assembles basis products") {
    SpaceSpec space({2, 2});
    auto p = tensor(space, {unit({1, 0}), unit({1, 0})});
    CHECK((p.global().amps() - basis_state(space, 0).amps()).norm() == doctest::Approx(0));

    auto q = tensor(space, {unit({1, 0}), unit({0, 1})});
    CHECK((q.global().amps() - basis_state(space, 1).amps()).norm() == doctest::Approx(0));

    CHECK_THROWS_AS(tensor(space, {unit({1, 0, 0}), unit({1, 0})}), InvalidInput);
}

TEST_CASE("tensor of random factors reshapes to a rank-1 matrix") {
    SpaceSpec space({2, 3});
    RngStream rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        auto p = random_product_state(space, rng);
        Matrix m = reshape_across_cut(p.global(), Cut::single_factor(0));
        Eigen::JacobiSVD<Matrix> svd(m);
        CHECK(svd.singularValues()[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(svd.singularValues()[1] < 1e-12);
    }
}

TEST_CASE("overlap is a conjugate-symmetric inner product") {
    SpaceSpec space({2, 2});
    auto e1 = basis_state(space, 0), e2 = basis_state(space, 1);
    CHECK(overlap(e1, e1) == Complex{1, 0});
    CHECK(overlap(e1, e2) == Complex{0, 0});

    RngStream rng(3);
    auto x = random_state(space, rng);
    auto y = random_state(space, rng);
    CHECK(std::abs(overlap(x, y) - std::conj(overlap(y, x))) < 1e-14);

    SpaceSpec other({2, 3});
    CHECK_THROWS_AS(overlap(x, random_state(other, rng)), InvalidInput);
}

TEST_CASE("span orthonormalizes and rejects dependent lists") {
    SpaceSpec space({2, 2});
    auto S = span({basis_state(space, 0), basis_state(space, 1)});
    CHECK(S.s() == 2);
    CHECK(subspace_overlap(S, basis_state(space, 0)) == doctest::Approx(1.0));
    CHECK(subspace_overlap(S, basis_state(space, 1)) == doctest::Approx(1.0));

    CHECK_THROWS_AS(span({basis_state(space, 0), basis_state(space, 0)}), LinearDependenceError);
    CHECK_THROWS_AS(span({}), InvalidInput);
}

TEST_CASE("random states almost surely span full dimension") {
    SpaceSpec space({2, 2});
    int full_rank = 0;
    for (int seed = 0; seed < 1000; ++seed) {
        RngStream rng(seed, 77);
        std::vector<StateVector> states;
        for (int k = 0; k < 3; ++k)
            states.push_back(random_state(space, rng));
        try {
            if (span(states).s() == 3)
                ++full_rank;
        } catch (const LinearDependenceError&) {
        }
    }
    CHECK(full_rank >= 999);
}

TEST_CASE("orthonormal complement splits the space") {
    SpaceSpec space({2, 2});
    auto S = span({basis_state(space, 0)});
    auto C = orthonormal_complement(S);
    CHECK(C.s() == 3);
    for (int64_t k = 1; k < 4; ++k)
        CHECK(subspace_overlap(C, basis_state(space, k)) == doctest::Approx(1.0));

    // involution: complement twice returns the original column space
    CHECK(testutil::projector_distance(orthonormal_complement(C).basis(), S.basis()) < 1e-10);

    SpaceSpec big({2, 3});
    RngStream rng(5);
    auto R = random_subspace(big, 2, rng);
    auto Rc = orthonormal_complement(R);
    Matrix sum = R.projector() + Rc.projector();
    CHECK((sum - Matrix::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-10);

    auto full = random_subspace(big, 6, rng);
    CHECK_THROWS_AS(orthonormal_complement(full), EmptyComplementError);
}

TEST_CASE("schmidt decomposition of the Bell state") {
    SpaceSpec space({2, 2});
    Vector bell(4);
    bell << 1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0);
    auto data = schmidt(StateVector(space, bell), Cut::single_factor(0));
    CHECK(data.coeffs[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(data.coeffs[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(data.rank_at() == 2);
}

TEST_CASE("product states have schmidt rank 1 across every cut") {
    SpaceSpec space({2, 3, 2});
    RngStream rng(11);
    auto p = random_product_state(space, rng);
    for (int j = 0; j < 3; ++j)
        CHECK(schmidt(p.global(), Cut::single_factor(j)).rank_at() == 1);
    CHECK(schmidt(p.global(), Cut{{0, 2}}).rank_at() == 1);
}

TEST_CASE("random states almost surely have full schmidt rank") {
    SpaceSpec space({3, 3});
    int full = 0;
    for (int seed = 0; seed < 1000; ++seed) {
        RngStream rng(seed, 78);
        if (schmidt(random_state(space, rng), Cut::single_factor(0)).rank_at(1e-8) == 3)
            ++full;
    }
    CHECK(full >= 999);
}

TEST_CASE("schmidt data reconstructs the state") {
    SpaceSpec space({2, 3, 2});
    RngStream rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        auto x = random_state(space, rng);
        Cut cut = trial % 2 ? Cut{{1}} : Cut{{0, 2}};
        auto data = schmidt(x, cut);
        CHECK(data.coeffs.sum() == doctest::Approx(1.0).epsilon(1e-10));
        for (Eigen::Index l = 1; l < data.coeffs.size(); ++l)
            CHECK(data.coeffs[l - 1] >= data.coeffs[l]);
        Matrix recon = Matrix::Zero(data.left_vecs.rows(), data.right_vecs.rows());
        for (Eigen::Index l = 0; l < data.coeffs.size(); ++l)
            recon += std::sqrt(data.coeffs[l]) * data.left_vecs.col(l) *
                     data.right_vecs.col(l).transpose();
        CHECK((flatten_across_cut(space, cut, recon) - x.amps()).cwiseAbs().maxCoeff() < 1e-10);
    }
    CHECK_THROWS_AS(schmidt(random_state(space, rng), Cut{{0, 1, 2}}), InvalidInput);
    CHECK_THROWS_AS(schmidt(random_state(space, rng), Cut{{}}), InvalidInput);
}

TEST_CASE("subspace overlap matches the direct formula") {
    SpaceSpec space({2, 3});
    RngStream rng(31);
    auto S = random_subspace(space, 1, rng);
    auto x = random_state(space, rng);
    const double direct = std::norm(Complex(S.basis().col(0).dot(x.amps())));
    CHECK(subspace_overlap(S, x) == doctest::Approx(direct).epsilon(1e-12));

    // a column of S overlaps fully, the complement not at all
    auto S2 = random_subspace(space, 2, rng);
    CHECK(subspace_overlap(S2, StateVector(space, S2.basis().col(1))) ==
          doctest::Approx(1.0).epsilon(1e-12));
    auto C2 = orthonormal_complement(S2);
    CHECK(subspace_overlap(S2, StateVector(space, C2.basis().col(0))) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("overlaps with a subspace and its complement sum to one") {
    SpaceSpec space({2, 2, 2});
    RngStream rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        auto S = random_subspace(space, 3, rng);
        auto x = random_state(space, rng);
        CHECK(subspace_overlap(S, x) + subspace_overlap(orthonormal_complement(S), x) ==
              doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("orthonormality invariants hold on seeded random inputs") {
    SpaceSpec space({2, 3});
    for (int seed = 0; seed < 1000; ++seed) {
        RngStream rng(seed, 79);
        auto p = random_product_state(space, rng);
        CHECK(std::abs(p.global().amps().norm() - 1.0) < 1e-12);
        auto S = random_subspace(space, 3, rng);
        Matrix gram = S.basis().adjoint() * S.basis();
        CHECK((gram - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("canonical phase is gauge invariant") {
    SpaceSpec space({2, 2});
    RngStream rng(51);
    for (int trial = 0; trial < 100; ++trial) {
        auto x = random_state(space, rng);
        const double theta = 2.0 * 3.14159265358979 * rng.uniform();
        Vector rotated = std::polar(1.0, theta) * x.amps();
        Vector a = canonicalized(x.amps());
        Vector b = canonicalized(rotated);
        CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12);
        // idempotence and leading-entry convention
        CHECK((canonicalized(a) - a).cwiseAbs().maxCoeff() == 0.0);
        CHECK(a[0].imag() == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(a[0].real() > 0.0);
    }
}

TEST_CASE("subspace overlap rejects mismatched spaces") {
    SpaceSpec a({2, 2}), b({2, 3});
    RngStream rng(61);
    auto S = random_subspace(a, 2, rng);
    CHECK_THROWS_AS(subspace_overlap(S, random_state(b, rng)), InvalidInput);
}
