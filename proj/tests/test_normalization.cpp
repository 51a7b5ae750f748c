#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ahs/errors.hpp"
#include "ahs/normalization.hpp"
#include "ahs/spencer.hpp"
#include "ahs/testkit.hpp"
#include "common.hpp"

using namespace ahs;
using testing::max_abs;

namespace {

CurvatureData from_kappa0(const GradedLieAlgebra& a, const TwoCochain& k0) {
    return {TwoCochain::zero(a, -1), k0, std::nullopt, false};
}

CurvatureData from_raw(const GradedLieAlgebra& a, const RawCurvature& R) {
    return {TwoCochain::zero(a, -1), kappa0_from_raw(a, R), R, true};
}

double gamma_diff(const DeformationTensor& x, const DeformationTensor& y) { return max_abs(x.gamma.c - y.gamma.c); }

}  // namespace

TEST_CASE("codifferential equals the trace") {
    for (const auto& k : testing::small_grid()) {
        CAPTURE(k.label());
        auto a = build_algebra(k);
        Rng rng(5);
        for (int s = 0; s < 100; ++s) {
            TwoCochain k0 = random_alternating(a, 0, rng);
            Eigen::MatrixXd viaD = spencer_dstar(a, k0).c * a.D.transpose();
            REQUIRE(max_abs(trace_kappa0(a, k0) - viaD) <= 1e-12 * std::max(1.0, k0.norm()));
        }
        CHECK(max_abs(trace_kappa0(a, TwoCochain::zero(a, 0))) == 0.0);
    }
}

TEST_CASE("deformation of zero") {
    auto a = build_algebra(StructureKind::lagrangian(3));
    CHECK(deformation_delta_kappa0(a, DeformationTensor{OneCochain::zero(a, 1)}).norm() == 0.0);
}

TEST_CASE("deformation is minus d") {
    auto a = build_algebra(StructureKind::grassmannian(2, 2));
    Rng rng(2);
    DeformationTensor g = random_gamma(a, rng);
    CHECK((deformation_delta_kappa0(a, g) + spencer_d(a, g.gamma)).norm() < 1e-13);
}

TEST_CASE("grassmannian g0 trace of symmetric deformations vanishes") {
    for (auto k : {StructureKind::grassmannian(2, 2), StructureKind::grassmannian(2, 3), StructureKind::grassmannian(1, 3)}) {
        auto a = build_algebra(k);
        Rng rng(9);
        DeformationTensor g = random_symmetric_gamma(a, rng);
        CHECK(max_abs(trace_g0(a, deformation_delta_kappa0(a, g))) < 1e-13);
        // a generic Gamma does produce a g0 trace
        CHECK(max_abs(trace_g0(a, deformation_delta_kappa0(a, random_gamma(a, rng)))) > 1e-3);
    }
}

TEST_CASE("harmonic torsion test") {
    auto a = build_algebra(StructureKind::grassmannian(2, 2));
    Rng rng(4);
    CHECK(torsion_is_harmonic(a, TwoCochain::zero(a, -1)));
    OneCochain psi = OneCochain::from_vector(a, 0, rng.vector(a.n_minus * a.n0));
    CHECK_FALSE(torsion_is_harmonic(a, spencer_d(a, psi)));
    CHECK(torsion_is_harmonic(a, harmonic_decompose(a, random_alternating(a, -1, rng)).harmonic));
}

TEST_CASE("conformal closed form") {
    auto a = build_algebra(StructureKind::conformal(4));
    CHECK(max_abs(closed_form_gamma(a, from_raw(a, RawCurvature{Tensor4(4)})).gamma.c) == 0.0);
    CurvatureData sphere = from_raw(a, RawCurvature::constant_curvature(4));
    CHECK(max_abs(gamma_matrix_form(a, closed_form_gamma(a, sphere)) + 0.5 * Eigen::MatrixXd::Identity(4, 4)) < 1e-13);
    CHECK(max_abs(gamma_matrix_form(a, oracle_gamma(a, sphere.kappa0)) + 0.5 * Eigen::MatrixXd::Identity(4, 4)) < 1e-13);
    Rng rng(17);
    for (int s = 0; s < 10; ++s) {
        CurvatureData cd = random_curvature(a, Symmetry::riemann_symmetric, rng);
        CHECK(gamma_diff(closed_form_gamma(a, cd), oracle_gamma(a, cd.kappa0)) < 1e-9);
    }
}

TEST_CASE("projective closed form") {
    auto a = build_algebra(StructureKind::projective(3));
    CurvatureData sphere = from_raw(a, RawCurvature::constant_curvature(3));
    CHECK(max_abs(gamma_matrix_form(a, closed_form_gamma(a, sphere)) - Eigen::MatrixXd::Identity(3, 3)) < 1e-13);
    CHECK(max_abs(gamma_matrix_form(a, oracle_gamma(a, sphere.kappa0)) - Eigen::MatrixXd::Identity(3, 3)) < 1e-13);
    Rng rng(23);
    for (int s = 0; s < 10; ++s) {
        CurvatureData cd = random_curvature(a, Symmetry::riemann_symmetric, rng);
        CHECK(gamma_diff(closed_form_gamma(a, cd), oracle_gamma(a, cd.kappa0)) < 1e-9);
    }
}

// With only antisymmetry and Bianchi the Ricci tensor is not symmetric and the
// contraction formula sees only part of it; the oracle gives (q Ric + Ric^T)/(q^2-1).
TEST_CASE("projective closed form on Bianchi-only curvature" * doctest::should_fail()) {
    auto a = build_algebra(StructureKind::projective(3));
    Rng rng(29);
    CurvatureData cd = random_curvature(a, Symmetry::bianchi, rng);
    CHECK(gamma_diff(closed_form_gamma(a, cd), oracle_gamma(a, cd.kappa0)) < 1e-9);
}

TEST_CASE("projective oracle is the projective Schouten tensor") {
    auto a = build_algebra(StructureKind::projective(3));
    Rng rng(29);
    CurvatureData cd = random_curvature(a, Symmetry::bianchi, rng);
    Eigen::MatrixXd ric = cd.raw->ricci();
    Eigen::MatrixXd want = (3.0 * ric + ric.transpose()) / 8.0;
    CHECK(max_abs(gamma_matrix_form(a, oracle_gamma(a, cd.kappa0)) - want) < 1e-12);
}

TEST_CASE("grassmannian round trip") {
    for (auto k : {StructureKind::grassmannian(2, 2), StructureKind::grassmannian(1, 2), StructureKind::grassmannian(2, 4)}) {
        CAPTURE(k.label());
        auto a = build_algebra(k);
        HarmonicSampler h(a, 0);
        Rng rng(31);
        for (int s = 0; s < 10; ++s) {
            RoundTrip rt = random_round_trip(a, h, rng);
            CHECK(gamma_diff(closed_form_gamma(a, from_kappa0(a, rt.kappa0)), rt.gamma_true) < 1e-9);
            CHECK(gamma_diff(oracle_gamma(a, rt.kappa0), rt.gamma_true) < 1e-9);
        }
        CHECK(max_abs(closed_form_gamma(a, from_kappa0(a, TwoCochain::zero(a, 0))).gamma.c) == 0.0);
    }
}

TEST_CASE("pair formulas recover pair-symmetric Gamma") {
    for (auto k : {StructureKind::lagrangian(3), StructureKind::lagrangian(2), StructureKind::spinorial(4),
                   StructureKind::spinorial(3)}) {
        CAPTURE(k.label());
        auto a = build_algebra(k);
        HarmonicSampler h(a, 0);
        Rng rng(37);
        for (int s = 0; s < 10; ++s) {
            RoundTrip rt = random_round_trip(a, h, rng, true);
            CHECK(gamma_diff(closed_form_gamma(a, from_kappa0(a, rt.kappa0)), rt.gamma_true) < 1e-9);
        }
    }
}

TEST_CASE("oracle recovers general Gamma for the pair-indexed kinds") {
    for (auto k : {StructureKind::lagrangian(3), StructureKind::spinorial(4)}) {
        auto a = build_algebra(k);
        HarmonicSampler h(a, 0);
        Rng rng(41);
        RoundTrip rt = random_round_trip(a, h, rng);
        CHECK(gamma_diff(oracle_gamma(a, rt.kappa0), rt.gamma_true) < 1e-9);
    }
}

// The printed pair formulas only invert the trace on pair-symmetric Gamma.
TEST_CASE("lagrangian substitution identity for general Gamma" * doctest::should_fail()) {
    auto a = build_algebra(StructureKind::lagrangian(3));
    Rng rng(43);
    DeformationTensor g = random_gamma(a, rng);
    CHECK(gamma_diff(closed_form_gamma(a, from_kappa0(a, deformation_delta_kappa0(a, g))), g) < 1e-12);
}

TEST_CASE("spinorial substitution identity for general Gamma" * doctest::should_fail()) {
    auto a = build_algebra(StructureKind::spinorial(4));
    Rng rng(47);
    DeformationTensor g = random_gamma(a, rng);
    CHECK(gamma_diff(closed_form_gamma(a, from_kappa0(a, deformation_delta_kappa0(a, g))), g) < 1e-12);
}

TEST_CASE("uniqueness") {
    CHECK(uniqueness_certificate(build_algebra(StructureKind::grassmannian(2, 2))).combined_kernel_dim == 0);
    CHECK(uniqueness_certificate(build_algebra(StructureKind::lagrangian(3))).combined_kernel_dim == 0);
    CHECK(uniqueness_certificate(build_algebra(StructureKind::grassmannian(1, 1))).combined_kernel_dim > 0);
    auto sl2 = build_algebra(StructureKind::grassmannian(1, 1));
    CHECK_THROWS_AS(oracle_gamma(sl2, TwoCochain::zero(sl2, 0)), NonUniquenessError);
    auto a = build_algebra(StructureKind::conformal(3));
    CHECK(max_abs(oracle_gamma(a, TwoCochain::zero(a, 0)).gamma.c) == 0.0);
}

TEST_CASE("degenerate denominators are refused") {
    auto a = build_algebra(StructureKind::conformal(2));
    CHECK_THROWS_AS(closed_form_gamma(a, from_raw(a, RawCurvature::constant_curvature(2))), ValidationError);
}

TEST_CASE("raw curvature embedding") {
    auto a = build_algebra(StructureKind::conformal(4));
    Rng rng(53);
    RawCurvature R = random_riemann(4, true, rng);
    RawCurvature back = raw_from_kappa0(a, kappa0_from_raw(a, R));
    CHECK(back.R.max_abs_diff(R.R) < 1e-13);
    RawCurvature S = RawCurvature::constant_curvature(4);
    CHECK(max_abs(S.ricci() - 3.0 * Eigen::MatrixXd::Identity(4, 4)) == 0.0);
    CHECK(S.scalar() == 12.0);
}

TEST_CASE("fiber constancy") {
    auto a = build_algebra(StructureKind::grassmannian(2, 2));
    HarmonicSampler hm(a, -1);
    Rng rng(59);
    TwoCochain k0 = random_alternating(a, 0, rng);
    TwoCochain km1 = hm.sample(rng);
    CHECK(fiber_constancy_check(a, k0, km1, Eigen::VectorXd::Zero(a.n_plus)).residual == 0.0);
    FiberConstancyReport r = fiber_constancy_check(a, k0, km1, rng.vector(a.n_plus));
    CHECK(r.passed);
    CHECK(r.residual <= 1e-12 * r.scale);
    TwoCochain bad = random_alternating(a, -1, rng);
    CHECK_THROWS_AS(fiber_constancy_check(a, k0, bad, rng.vector(a.n_plus)), ValidationError);
    CHECK_FALSE(fiber_constancy_check(a, k0, bad, rng.vector(a.n_plus), false).passed);
}
