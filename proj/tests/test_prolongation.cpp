#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ahs/errors.hpp"
#include "ahs/prolongation.hpp"
#include "ahs/spencer.hpp"
#include "ahs/testkit.hpp"
#include "common.hpp"

using namespace ahs;
using testing::max_abs;

TEST_CASE("torsion change") {
    auto a = build_algebra(StructureKind::grassmannian(2, 2));
    Rng rng(1);
    TwoCochain t = random_alternating(a, -1, rng);
    OneCochain psi = OneCochain::from_vector(a, 0, rng.vector(a.n_minus * a.n0));
    CHECK((torsion_change(a, t, OneCochain::zero(a, 0)) - t).norm() == 0.0);
    CHECK((torsion_change(a, TwoCochain::zero(a, -1), psi) + spencer_d(a, psi)).norm() < 1e-14);
    TwoCochain h1 = harmonic_decompose(a, t).harmonic;
    TwoCochain h2 = harmonic_decompose(a, torsion_change(a, t, psi)).harmonic;
    CHECK((h1 - h2).norm() < 1e-10);
}

TEST_CASE("frame changes") {
    auto a = build_algebra(StructureKind::conformal(4));
    Rng rng(2);
    TwoCochain t = random_alternating(a, -1, rng);
    FrameChange id = FrameChange::identity(a);
    CHECK((act(id, t) - t).norm() == 0.0);

    FrameChange only_z = FrameChange::from_generator(a, Eigen::VectorXd::Zero(a.n0), rng.vector(a.n_plus));
    CHECK((torsion_equivariance(a, t, only_z) - t).norm() < 1e-13);

    FrameChange fc = FrameChange::from_generator(a, 0.3 * rng.vector(a.n0), rng.vector(a.n_plus));
    CHECK(fc.automorphism_defect(a) < 1e-12);
    CHECK_NOTHROW(fc.validate(a));
    CHECK((torsion_equivariance(a, t, fc) - act(fc, t)).norm() < 1e-12);
    CHECK((spencer_dstar(a, act(fc, t)) - act(fc, spencer_dstar(a, t))).norm() < 1e-12);
    TwoCochain h = harmonic_decompose(a, t).harmonic;
    CHECK(torsion_is_harmonic(a, act(fc, h)));
}

TEST_CASE("second torsion reduction") {
    auto a = build_algebra(StructureKind::grassmannian(1, 2));
    Rng rng(3);
    TwoCochain k0 = random_alternating(a, 0, rng);
    BilinearMap full = second_torsion_model(a, k0);
    SecondTorsionResult r = second_torsion_reduction(a, full);
    CHECK(r.defect < 1e-14);
    CHECK((r.component - k0).norm() < 1e-14);

    BilinearMap zero{full.target_dim, Eigen::MatrixXd::Zero(full.values.rows(), full.values.cols())};
    SecondTorsionResult z = second_torsion_reduction(a, zero, false);
    CHECK(z.component.norm() == 0.0);
    CHECK(z.defect > 0.5);  // the projected bracket itself

    BilinearMap bumped = full;
    const int N = a.dim();
    bumped.values(a.offset(0) * N + a.offset(1), 0) += 1e-3;
    CHECK_THROWS_AS(second_torsion_reduction(a, bumped), InvariantError);
}

TEST_CASE("structure function") {
    auto a = build_algebra(StructureKind::lagrangian(3));
    BilinearMap flat = flat_structure_function(a);
    const int N = a.dim();
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            REQUIRE(max_abs(flat.at(N, i, j) -
                            bracket_full(a, Eigen::VectorXd::Unit(N, i), Eigen::VectorXd::Unit(N, j))) == 0.0);
    CHECK(structure_jacobi_residual(a, flat) == 0.0);

    Rng rng(4);
    TwoCochain k0 = random_alternating(a, 0, rng);
    BilinearMap s = structure_function(a, TwoCochain::zero(a, -1), k0);
    double worst = 0.0;
    for (int X = 0; X < a.n_minus; ++X)
        for (int Y = 0; Y < a.n_minus; ++Y) {
            Eigen::VectorXd d = s.at(N, X, Y) - flat.at(N, X, Y);
            worst = std::max(worst, max_abs(d.segment(a.offset(0), a.n0) - k0.at(X, Y)));
        }
    CHECK(worst < 1e-15);
}

TEST_CASE("transitivity witness") {
    CHECK(transitivity_witness(build_algebra(StructureKind::grassmannian(2, 2))).holds);
    CHECK(transitivity_witness(build_algebra(StructureKind::conformal(4))).holds);
    CHECK_FALSE(transitivity_witness(build_algebra(StructureKind::projective(3))).holds);
}
