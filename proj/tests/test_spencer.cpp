#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ahs/spencer.hpp"
#include "ahs/testkit.hpp"
#include "common.hpp"

using namespace ahs;
using testing::max_abs;

TEST_CASE("zero cochains") {
    auto a = build_algebra(StructureKind::grassmannian(2, 2));
    CHECK(spencer_d(a, OneCochain::zero(a, 0)).norm() == 0.0);
    CHECK(spencer_dstar(a, TwoCochain::zero(a, 0)).norm() == 0.0);
}

TEST_CASE("d of ad_Z") {
    auto a = build_algebra(StructureKind::grassmannian(1, 2));
    Rng rng(7);
    Eigen::VectorXd Z = Eigen::VectorXd::Zero(a.dim());
    Z.tail(a.n_plus) = rng.vector(a.n_plus);
    OneCochain psi = OneCochain::zero(a, 0);
    for (int X = 0; X < a.n_minus; ++X)
        psi.c.row(X) = bracket_full(a, Z, Eigen::VectorXd::Unit(a.dim(), X)).segment(a.offset(0), a.n0).transpose();
    TwoCochain d = spencer_d(a, psi);
    for (int X = 0; X < a.n_minus; ++X)
        for (int Y = 0; Y < a.n_minus; ++Y) {
            if (X == Y) continue;
            Eigen::VectorXd eX = Eigen::VectorXd::Unit(a.dim(), X), eY = Eigen::VectorXd::Unit(a.dim(), Y);
            Eigen::VectorXd want = bracket_full(a, bracket_full(a, Z, eX), eY) - bracket_full(a, bracket_full(a, Z, eY), eX);
            CHECK(max_abs(d.at(X, Y) - want.head(a.n_minus)) < 1e-14);
        }
}

TEST_CASE("keyed operators agree with the functional ones") {
    for (auto k : {StructureKind::grassmannian(2, 2), StructureKind::lagrangian(3), StructureKind::conformal(4)}) {
        CAPTURE(k.label());
        auto a = build_algebra(k);
        Rng rng(3);
        for (int g : {0, 1}) {
            WeightKeys keys;
            KeyedOperator D = d_operator(a, g, keys);
            OneCochain psi = OneCochain::from_vector(a, g, rng.vector(a.n_minus * a.grade_dim(g)));
            CHECK(max_abs(D.M * psi.vec() - spencer_d(a, psi).packed()) < 1e-13);
            KeyedOperator S = dstar_operator(a, g - 1, keys);
            TwoCochain phi = random_alternating(a, g - 1, rng);
            CHECK(max_abs(S.M * phi.packed() - spencer_dstar(a, phi).vec()) < 1e-13);
        }
    }
}

TEST_CASE("projective d is onto the torsion space") {
    auto a = build_algebra(StructureKind::projective(3));
    ComplementarityReport r = complementarity_check(a, 0);
    CHECK(r.dim_im_d == r.total);
}

TEST_CASE("complementarity on the grid") {
    for (const auto& k : testing::small_grid()) {
        CAPTURE(k.label());
        auto a = build_algebra(k);
        for (int g : {0, 1}) {
            ComplementarityReport r = complementarity_check(a, g);
            CHECK(r.complementary);
            CHECK(r.intersection_dim == 0);
            CHECK(r.dim_im_d + r.dim_ker_dstar == r.total);
        }
    }
    auto tiny = build_algebra(StructureKind::lagrangian(1));
    ComplementarityReport r = complementarity_check(tiny, 0);
    CHECK(r.dim_im_d + r.dim_ker_dstar == r.total);
}

TEST_CASE("cohomology table") {
    CHECK(cohomology_dim(build_algebra(StructureKind::grassmannian(2, 2)), CohomologyLevel::H11) == 0);
    CHECK(cohomology_dim(build_algebra(StructureKind::projective(2)), CohomologyLevel::H11) != 0);
    CHECK(cohomology_dim(build_algebra(StructureKind::grassmannian(1, 1)), CohomologyLevel::H21) != 0);
    CHECK(cohomology_dim(build_algebra(StructureKind::grassmannian(2, 2)), CohomologyLevel::H21) == 0);
    CHECK(cohomology_dim(build_algebra(StructureKind::conformal(4)), CohomologyLevel::H11) == 0);
    auto rep = cohomology_report(build_algebra(StructureKind::grassmannian(1, 2)));
    CHECK(rep["H11"] == 4);
    CHECK(rep["complementarity"] == true);
}

TEST_CASE("harmonic decomposition") {
    auto a = build_algebra(StructureKind::grassmannian(2, 3));
    Rng rng(11);
    TwoCochain t = random_alternating(a, -1, rng);
    HarmonicDecomposition h = harmonic_decompose(a, t);
    CHECK(spencer_dstar(a, h.harmonic).norm() < 1e-10);
    CHECK((t - h.harmonic - spencer_d(a, h.psi)).norm() < 1e-10);

    HarmonicDecomposition again = harmonic_decompose(a, h.harmonic);
    CHECK((again.harmonic - h.harmonic).norm() < 1e-10);
    CHECK(spencer_d(a, again.psi).norm() < 1e-10);

    OneCochain psi0 = OneCochain::from_vector(a, 0, rng.vector(a.n_minus * a.n0));
    HarmonicDecomposition exact = harmonic_decompose(a, spencer_d(a, psi0));
    CHECK(exact.harmonic.norm() < 1e-10);
    CHECK((spencer_d(a, exact.psi) - spencer_d(a, psi0)).norm() < 1e-10);
}
