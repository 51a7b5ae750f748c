#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ahs/errors.hpp"
#include "ahs/spencer.hpp"
#include "ahs/testkit.hpp"
#include "common.hpp"

#include <cstring>

using namespace ahs;
using testing::max_abs;

TEST_CASE("uniform stream") {
    Rng a(1), b(1);
    for (int i = 0; i < 1000; ++i) {
        double x = a.uniform();
        REQUIRE(x >= -1.0);
        REQUIRE(x < 1.0);
        REQUIRE(x == b.uniform());
    }
    Rng c(1);
    CHECK(c.fork(1).uniform() != Rng(1).fork(2).uniform());
}

TEST_CASE("riemann samples") {
    Rng rng(1);
    RawCurvature R = random_riemann(3, true, rng);
    CHECK(R.bianchi_defect() < 1e-15);
    CHECK(R.antisymmetry_defect() == 0.0);
    Eigen::MatrixXd ric = R.ricci();
    CHECK(max_abs(ric - ric.transpose()) < 1e-15);
    RawCurvature B = random_riemann(4, false, rng);
    CHECK(B.bianchi_defect() < 1e-15);
}

TEST_CASE("harmonic samples") {
    for (auto k : {StructureKind::grassmannian(2, 2), StructureKind::lagrangian(3)}) {
        auto a = build_algebra(k);
        Rng rng(2);
        CurvatureData cd = random_curvature(a, Symmetry::harmonic, rng);
        CHECK(spencer_dstar(a, cd.kappa0).norm() <= 1e-12);
        CHECK(spencer_d2(a, cd.kappa0).norm() <= 1e-12);
        HarmonicSampler hm(a, -1);
        CHECK(spencer_dstar(a, hm.sample(rng)).norm() <= 1e-12);
    }
}

TEST_CASE("deformation-image samples lie in the image") {
    auto a = build_algebra(StructureKind::grassmannian(2, 3));
    Rng rng(3);
    CurvatureData cd = random_curvature(a, Symmetry::deformation_image, rng);
    // d*d is invertible on g-1*(x)g1 here, so a preimage exists
    HarmonicDecomposition h = harmonic_decompose(a, cd.kappa0);
    CHECK(h.harmonic.norm() < 1e-10);
}

TEST_CASE("symmetry classes by kind") {
    auto a = build_algebra(StructureKind::grassmannian(2, 2));
    Rng rng(4);
    CHECK_THROWS_AS(random_curvature(a, Symmetry::riemann_symmetric, rng), ValidationError);
    CHECK(parse_symmetry("deformation-image") == Symmetry::deformation_image);
    CHECK_THROWS_AS(parse_symmetry("anything"), ValidationError);
}

TEST_CASE("sample spec round trip and reproducibility") {
    SampleSpec s{StructureKind::projective(3), 99, 4, Symmetry::bianchi};
    SampleSpec t = SampleSpec::from_json(s.to_json());
    CHECK(t.kind == s.kind);
    CHECK(t.seed == 99);
    CHECK(t.count == 4);
    CHECK(t.symmetry == Symmetry::bianchi);
    auto x = random_curvature(s), y = random_curvature(t);
    REQUIRE(x.size() == 4);
    for (size_t i = 0; i < x.size(); ++i)
        CHECK(std::memcmp(x[i].kappa0.c.data(), y[i].kappa0.c.data(), sizeof(double) * x[i].kappa0.c.size()) == 0);
}

TEST_CASE("pair-symmetric Gamma") {
    auto a = build_algebra(StructureKind::lagrangian(3));
    Rng rng(5);
    Tensor4 G = gamma_pair_form(a, random_symmetric_gamma(a, rng));
    double defect = 0.0;
    for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) defect = std::max(defect, std::abs(G(p, q, k, l) - G(k, l, p, q)));
    CHECK(defect < 1e-15);
}

TEST_CASE("brute-force trace map") {
    auto a = build_algebra(StructureKind::grassmannian(2, 2));
    Eigen::MatrixXd A = brute_force_trace_map(a);
    CHECK(A.rows() == 16);
    CHECK(A.cols() == 16);
    CHECK(dense_rank(A) == 16);
    CHECK(max_abs(A - OracleSolver(a).trace_map()) < 1e-13);
    CHECK(max_abs(A * Eigen::VectorXd::Zero(16)) == 0.0);
    auto sl2 = build_algebra(StructureKind::grassmannian(1, 1));
    CHECK(dense_rank(brute_force_trace_map(sl2)) < 1);
}
