#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ahs/errors.hpp"
#include "ahs/graded_algebra.hpp"
#include "ahs/verify.hpp"
#include "common.hpp"

using namespace ahs;
using testing::index_of;
using testing::unit;

TEST_CASE("dimensions") {
    auto g = build_algebra(StructureKind::grassmannian(2, 3));
    CHECK(g.n_minus == 6);
    CHECK(g.n0 == 12);  // p^2 + q^2 - 1
    CHECK(g.n_plus == 6);
    CHECK(build_algebra(StructureKind::lagrangian(3)).n_minus == 6);
    CHECK(build_algebra(StructureKind::spinorial(4)).n_minus == 6);
    CHECK(build_algebra(StructureKind::conformal(5)).n0 == 11);
    CHECK(build_algebra(StructureKind::projective(3)).n0 == 9);
}

TEST_CASE("validity ranges") {
    CHECK(StructureKind::grassmannian(1, 2).normalizable());
    CHECK_FALSE(StructureKind::grassmannian(1, 1).normalizable());
    CHECK_NOTHROW(StructureKind::grassmannian(1, 1).check_constructible());
    CHECK(StructureKind::projective(2).normalizable());
    CHECK_FALSE(StructureKind::projective(1).normalizable());
    CHECK(StructureKind::conformal(3).normalizable());
    CHECK_FALSE(StructureKind::conformal(2).normalizable());
    CHECK(StructureKind::lagrangian(2).normalizable());
    CHECK(StructureKind::spinorial(3).normalizable());
    CHECK_FALSE(StructureKind::spinorial(2).normalizable());
    CHECK_THROWS_AS(StructureKind::grassmannian(3, 2).check_constructible(), ValidationError);
    CHECK_THROWS_AS(StructureKind::conformal(0).check_constructible(), ValidationError);
    CHECK_THROWS_AS(StructureKind::spinorial(1).check_constructible(), ValidationError);
    CHECK_THROWS_AS(StructureKind::parse("hyperbolic", 3, 0, 0), ValidationError);
}

TEST_CASE("axioms on the grid") {
    for (const auto& k : testing::small_grid()) {
        CAPTURE(k.label());
        auto a = build_algebra(k);
        CHECK(table_axiom_violations(a) == 0);
        CHECK(jacobi_check(a).failures == 0);
        CHECK(center_dimension(a) == 1);
        CHECK(g0_action_rank(a) == a.n0);
        CHECK(g1_action_rank(a) == a.n_plus);
        CHECK(a.D.determinant() != doctest::Approx(0.0));
    }
}

TEST_CASE("matrix realization cross-check") {
    for (auto k : {StructureKind::grassmannian(2, 2), StructureKind::lagrangian(3), StructureKind::conformal(3),
                   StructureKind::spinorial(4), StructureKind::projective(3)}) {
        CAPTURE(k.label());
        CrossCheckReport r = cross_check_matrix_rep(build_algebra(k));
        CHECK(r.ok);
        CHECK(r.max_discrepancy == 0.0);
    }
}

TEST_CASE("grassmannian brackets") {
    auto a = build_algebra(StructureKind::grassmannian(2, 3));
    // [e^a_i, e^j_b] = d^a_b e^j_i - d^j_i e^a_b
    Eigen::VectorXd v = bracket_full(a, unit(a, "e^a1_i1"), unit(a, "e^i1_a1"));
    CHECK(testing::max_abs(v - unit(a, "e^i1_i1") + unit(a, "e^a1_a1")) == 0.0);
    v = bracket_full(a, unit(a, "e^a1_i1"), unit(a, "e^i1_a2"));
    CHECK(testing::max_abs(v + unit(a, "e^a1_a2")) == 0.0);
    v = bracket_full(a, unit(a, "e^a1_i2"), unit(a, "e^i1_a1"));
    CHECK(testing::max_abs(v - unit(a, "e^i1_i2")) == 0.0);
    // [e^k_a, e^b_c] = -d^b_a e^k_c
    v = bracket_full(a, unit(a, "e^i1_a1"), unit(a, "e^a1_a2"));
    CHECK(testing::max_abs(v + unit(a, "e^i1_a2")) == 0.0);
}

TEST_CASE("pair-indexed tables") {
    CHECK(printed_rule_mismatches(build_algebra(StructureKind::lagrangian(3))) == 0);
    CHECK(printed_rule_mismatches(build_algebra(StructureKind::spinorial(4))) == 0);
    auto a = build_algebra(StructureKind::spinorial(4));
    // [e^1^e^2, e^3_2] = e^1^e^3 with t = w = 2
    Eigen::VectorXd v = bracket_full(a, unit(a, "e^1∧e^2"), unit(a, "e^3_2"));
    CHECK(testing::max_abs(v - unit(a, "e^1∧e^3")) == 0.0);
    auto l = build_algebra(StructureKind::lagrangian(3));
    v = bracket_full(l, unit(l, "e^1⊙e^2"), unit(l, "e_1⊙e_2"));
    CHECK(testing::max_abs(v + 0.25 * (unit(l, "e^2_2") + unit(l, "e^1_1"))) < 1e-15);
}

TEST_CASE("bracket basics") {
    auto a = build_algebra(StructureKind::conformal(4));
    Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(a.dim(), -1.0, 1.0).array().sin();
    CHECK(testing::max_abs(bracket_full(a, x, x)) < 1e-14);
    CHECK(testing::max_abs(bracket_full(a, Eigen::VectorXd::Zero(a.dim()), x)) == 0.0);
}

TEST_CASE("duality") {
    auto g = build_algebra(StructureKind::grassmannian(2, 3));
    CHECK(testing::max_abs(g.D - Eigen::MatrixXd::Identity(6, 6)) == 0.0);
    auto c = build_algebra(StructureKind::conformal(3));
    CHECK(testing::max_abs(c.D - Eigen::MatrixXd::Identity(3, 3)) == 0.0);
    auto l = build_algebra(StructureKind::lagrangian(2));
    CHECK(l.D(0, 0) == 1.0);
    CHECK(l.D(1, 1) == 0.5);  // dual of e_1.e_2 is 2 e^1.e^2
    CHECK(testing::max_abs(l.D * l.dual.transpose() - Eigen::MatrixXd::Identity(3, 3)) < 1e-15);
}

TEST_CASE("ad_exp") {
    auto a = build_algebra(StructureKind::grassmannian(1, 2));
    GradedElement x = GradedElement::basis(a, 0);
    Eigen::VectorXd Z = Eigen::VectorXd::Zero(a.n_plus);
    CHECK(testing::max_abs(ad_exp(a, Z, x).full() - x.full()) == 0.0);
    Z << 0.3, -0.7;
    GradedElement y = GradedElement::basis(a, a.offset(1));
    CHECK(testing::max_abs(ad_exp(a, Z, y).full() - y.full()) == 0.0);
    // [Z,[Z,[Z,x]]] = 0, so the truncated series is the full exponential
    Eigen::VectorXd zf = Eigen::VectorXd::Zero(a.dim());
    zf.tail(a.n_plus) = Z;
    Eigen::VectorXd t = bracket_full(a, zf, bracket_full(a, zf, bracket_full(a, zf, x.full())));
    CHECK(testing::max_abs(t) < 1e-15);
}

TEST_CASE("sign fault breaks Jacobi") {
    auto a = build_algebra(StructureKind::grassmannian(2, 2));
    inject_sign_fault(a);
    CHECK(jacobi_check(a).failures > 0);
    CHECK_FALSE(cross_check_matrix_rep(a).ok);
}

TEST_CASE("json export") {
    auto a = build_algebra(StructureKind::grassmannian(1, 2));
    auto j = to_json(a);
    CHECK(j["dims"]["g_minus1"] == 2);
    CHECK(j["basis"]["g1"].size() == 2);
    auto t = sparse_triples(a);
    CHECK(t.size() > 0);
    CHECK(t[0].size() == 4);
}
