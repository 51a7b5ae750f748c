#pragma once

#include "ahs/graded_algebra.hpp"

#include <Eigen/Dense>

namespace ahs {

/// Linear map g-1 -> g_i; row X holds the coordinates of psi(e_X).
struct OneCochain {
    int grade = 0;
    Eigen::MatrixXd c;

    static OneCochain zero(const GradedLieAlgebra& alg, int grade);
    /// From the flat vector with index X * dim(g_i) + a.
    static OneCochain from_vector(const GradedLieAlgebra& alg, int grade, const Eigen::VectorXd& v);
    Eigen::VectorXd vec() const;
    Eigen::VectorXd value(int X) const { return c.row(X).transpose(); }
    /// Throws ValidationError on a shape mismatch.
    void check(const GradedLieAlgebra& alg) const;
    double norm() const { return c.norm(); }
};

/// Alternating bilinear map g-1 x g-1 -> g_j, stored in both (X,Y) and (Y,X) slots.
/// Row X * n + Y holds the coordinates of phi(e_X, e_Y).
struct TwoCochain {
    int grade = -1;
    int n = 0;
    Eigen::MatrixXd c;

    static TwoCochain zero(const GradedLieAlgebra& alg, int grade);
    /// From packed coordinates: pair (X<Y) index times dim(g_j) plus component.
    static TwoCochain from_packed(const GradedLieAlgebra& alg, int grade, const Eigen::VectorXd& v);
    /// Alternating part of an arbitrary (n*n) x dim(g_j) array.
    static TwoCochain alternate(const GradedLieAlgebra& alg, int grade, const Eigen::MatrixXd& full);

    Eigen::VectorXd packed() const;
    Eigen::VectorXd at(int X, int Y) const { return c.row(X * n + Y).transpose(); }
    /// Sets phi(X,Y) = v and phi(Y,X) = -v; X == Y is rejected.
    void set(int X, int Y, const Eigen::VectorXd& v);
    void add(int X, int Y, const Eigen::VectorXd& v);
    double alternation_defect() const;
    void check(const GradedLieAlgebra& alg) const;
    double norm() const;  // norm of the packed vector
};

int pair_count(int n);
int pair_index(int n, int X, int Y);  // requires X < Y
int triple_count(int n);

OneCochain operator+(const OneCochain& a, const OneCochain& b);
OneCochain operator-(const OneCochain& a, const OneCochain& b);
OneCochain operator*(double s, const OneCochain& a);
TwoCochain operator+(const TwoCochain& a, const TwoCochain& b);
TwoCochain operator-(const TwoCochain& a, const TwoCochain& b);
TwoCochain operator*(double s, const TwoCochain& a);

/// ad_A restricted to grade g, as a dim(g) x dim(g) matrix, for A in g0 coordinates.
Eigen::MatrixXd g0_ad_matrix(const GradedLieAlgebra& alg, const Eigen::VectorXd& A, int grade);

/// Infinitesimal g0-action: (A.psi)(X) = [A, psi(X)] - psi([A, X]).
OneCochain g0_act(const GradedLieAlgebra& alg, const Eigen::VectorXd& A, const OneCochain& psi);
TwoCochain g0_act(const GradedLieAlgebra& alg, const Eigen::VectorXd& A, const TwoCochain& phi);

/// Group action given by grade-preserving matrices: (b.psi)(X) = Bt psi(Bm^{-1} X).
OneCochain transform(const OneCochain& psi, const Eigen::MatrixXd& Bm, const Eigen::MatrixXd& Bt);
TwoCochain transform(const TwoCochain& phi, const Eigen::MatrixXd& Bm, const Eigen::MatrixXd& Bt);

/// Target-wise bracket with W in g1, raising the value grade by one.
OneCochain ad_target(const GradedLieAlgebra& alg, const Eigen::VectorXd& W, const OneCochain& psi);
TwoCochain ad_target(const GradedLieAlgebra& alg, const Eigen::VectorXd& W, const TwoCochain& phi);

}  // namespace ahs
