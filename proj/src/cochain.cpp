#include "ahs/cochain.hpp"

#include "ahs/errors.hpp"

#include <string>

namespace ahs {

int pair_count(int n) { return n * (n - 1) / 2; }

int pair_index(int n, int X, int Y) { return X * n - X * (X + 1) / 2 + (Y - X - 1); }

int triple_count(int n) { return n * (n - 1) * (n - 2) / 6; }

// ---------------------------------------------------------------------------

OneCochain OneCochain::zero(const GradedLieAlgebra& alg, int grade) {
    if (grade < -1 || grade > 1) throw ValidationError("cochain grade out of range");
    return {grade, Eigen::MatrixXd::Zero(alg.n_minus, alg.grade_dim(grade))};
}

OneCochain OneCochain::from_vector(const GradedLieAlgebra& alg, int grade, const Eigen::VectorXd& v) {
    OneCochain out = zero(alg, grade);
    const int d = alg.grade_dim(grade);
    if (v.size() != alg.n_minus * d) throw ValidationError("one-cochain vector has wrong length");
    for (int X = 0; X < alg.n_minus; ++X)
        for (int a = 0; a < d; ++a) out.c(X, a) = v(X * d + a);
    return out;
}

Eigen::VectorXd OneCochain::vec() const {
    Eigen::VectorXd v(c.size());
    for (int X = 0; X < c.rows(); ++X)
        for (int a = 0; a < c.cols(); ++a) v(X * c.cols() + a) = c(X, a);
    return v;
}

void OneCochain::check(const GradedLieAlgebra& alg) const {
    if (grade < -1 || grade > 1 || c.rows() != alg.n_minus || c.cols() != alg.grade_dim(grade))
        throw ValidationError("one-cochain shape mismatch: expected " + std::to_string(alg.n_minus) + "x" +
                              std::to_string(alg.grade_dim(grade)) + ", got " + std::to_string(c.rows()) + "x" +
                              std::to_string(c.cols()));
}

// ---------------------------------------------------------------------------

TwoCochain TwoCochain::zero(const GradedLieAlgebra& alg, int grade) {
    if (grade < -1 || grade > 1) throw ValidationError("cochain grade out of range");
    const int n = alg.n_minus;
    return {grade, n, Eigen::MatrixXd::Zero(n * n, alg.grade_dim(grade))};
}

TwoCochain TwoCochain::from_packed(const GradedLieAlgebra& alg, int grade, const Eigen::VectorXd& v) {
    TwoCochain out = zero(alg, grade);
    const int n = out.n;
    const int d = alg.grade_dim(grade);
    if (v.size() != pair_count(n) * d) throw ValidationError("two-cochain vector has wrong length");
    for (int X = 0; X < n; ++X)
        for (int Y = X + 1; Y < n; ++Y) out.set(X, Y, v.segment(pair_index(n, X, Y) * d, d));
    return out;
}

TwoCochain TwoCochain::alternate(const GradedLieAlgebra& alg, int grade, const Eigen::MatrixXd& full) {
    TwoCochain out = zero(alg, grade);
    if (full.rows() != out.c.rows() || full.cols() != out.c.cols())
        throw ValidationError("two-cochain array has wrong shape");
    const int n = out.n;
    for (int X = 0; X < n; ++X)
        for (int Y = X + 1; Y < n; ++Y)
            out.set(X, Y, 0.5 * (full.row(X * n + Y) - full.row(Y * n + X)).transpose());
    return out;
}

Eigen::VectorXd TwoCochain::packed() const {
    const int d = static_cast<int>(c.cols());
    Eigen::VectorXd v(pair_count(n) * d);
    for (int X = 0; X < n; ++X)
        for (int Y = X + 1; Y < n; ++Y) v.segment(pair_index(n, X, Y) * d, d) = c.row(X * n + Y).transpose();
    return v;
}

void TwoCochain::set(int X, int Y, const Eigen::VectorXd& v) {
    if (X == Y) throw ValidationError("two-cochain diagonal entries are zero by alternation");
    c.row(X * n + Y) = v.transpose();
    c.row(Y * n + X) = -v.transpose();
}

void TwoCochain::add(int X, int Y, const Eigen::VectorXd& v) {
    if (X == Y) return;
    c.row(X * n + Y) += v.transpose();
    c.row(Y * n + X) -= v.transpose();
}

double TwoCochain::alternation_defect() const {
    double worst = 0.0;
    for (int X = 0; X < n; ++X)
        for (int Y = X; Y < n; ++Y)
            worst = std::max(worst, (c.row(X * n + Y) + c.row(Y * n + X)).cwiseAbs().maxCoeff());
    return c.cols() == 0 ? 0.0 : worst;
}

void TwoCochain::check(const GradedLieAlgebra& alg) const {
    if (grade < -1 || grade > 1 || n != alg.n_minus || c.rows() != n * n || c.cols() != alg.grade_dim(grade))
        throw ValidationError("two-cochain shape mismatch");
}

double TwoCochain::norm() const { return packed().norm(); }

// ---------------------------------------------------------------------------

OneCochain operator+(const OneCochain& a, const OneCochain& b) { return {a.grade, a.c + b.c}; }
OneCochain operator-(const OneCochain& a, const OneCochain& b) { return {a.grade, a.c - b.c}; }
OneCochain operator*(double s, const OneCochain& a) { return {a.grade, s * a.c}; }
TwoCochain operator+(const TwoCochain& a, const TwoCochain& b) { return {a.grade, a.n, a.c + b.c}; }
TwoCochain operator-(const TwoCochain& a, const TwoCochain& b) { return {a.grade, a.n, a.c - b.c}; }
TwoCochain operator*(double s, const TwoCochain& a) { return {a.grade, a.n, s * a.c}; }

// ---------------------------------------------------------------------------

Eigen::MatrixXd g0_ad_matrix(const GradedLieAlgebra& alg, const Eigen::VectorXd& A, int grade) {
    if (A.size() != alg.n0) throw ValidationError("g0 element has wrong length");
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(alg.grade_dim(grade), alg.grade_dim(grade));
    for (int a = 0; a < alg.n0; ++a)
        if (A(a) != 0.0) M += A(a) * alg.ad_block(alg.offset(0) + a, grade);
    return M;
}

OneCochain g0_act(const GradedLieAlgebra& alg, const Eigen::VectorXd& A, const OneCochain& psi) {
    psi.check(alg);
    Eigen::MatrixXd Am = g0_ad_matrix(alg, A, -1);
    Eigen::MatrixXd At = g0_ad_matrix(alg, A, psi.grade);
    return {psi.grade, psi.c * At.transpose() - Am.transpose() * psi.c};
}

TwoCochain g0_act(const GradedLieAlgebra& alg, const Eigen::VectorXd& A, const TwoCochain& phi) {
    phi.check(alg);
    Eigen::MatrixXd Am = g0_ad_matrix(alg, A, -1);
    Eigen::MatrixXd At = g0_ad_matrix(alg, A, phi.grade);
    const int n = phi.n;
    TwoCochain out{phi.grade, n, phi.c * At.transpose()};
    // - phi([A,X],Y) - phi(X,[A,Y])
    for (int X = 0; X < n; ++X)
        for (int Y = 0; Y < n; ++Y)
            for (int U = 0; U < n; ++U) {
                if (Am(U, X) != 0.0) out.c.row(X * n + Y) -= Am(U, X) * phi.c.row(U * n + Y);
                if (Am(U, Y) != 0.0) out.c.row(X * n + Y) -= Am(U, Y) * phi.c.row(X * n + U);
            }
    return out;
}

OneCochain transform(const OneCochain& psi, const Eigen::MatrixXd& Bm, const Eigen::MatrixXd& Bt) {
    Eigen::MatrixXd Bi = Bm.inverse();
    return {psi.grade, Bi.transpose() * psi.c * Bt.transpose()};
}

TwoCochain transform(const TwoCochain& phi, const Eigen::MatrixXd& Bm, const Eigen::MatrixXd& Bt) {
    Eigen::MatrixXd Bi = Bm.inverse();
    const int n = phi.n;
    Eigen::MatrixXd vals = phi.c * Bt.transpose();
    TwoCochain out{phi.grade, n, Eigen::MatrixXd::Zero(phi.c.rows(), phi.c.cols())};
    // out(X,Y) = sum_{U,V} Bi(U,X) Bi(V,Y) vals(U,V)
    Eigen::MatrixXd tmp = Eigen::MatrixXd::Zero(phi.c.rows(), phi.c.cols());
    for (int U = 0; U < n; ++U)
        for (int Y = 0; Y < n; ++Y)
            for (int V = 0; V < n; ++V)
                if (Bi(V, Y) != 0.0) tmp.row(U * n + Y) += Bi(V, Y) * vals.row(U * n + V);
    for (int X = 0; X < n; ++X)
        for (int Y = 0; Y < n; ++Y)
            for (int U = 0; U < n; ++U)
                if (Bi(U, X) != 0.0) out.c.row(X * n + Y) += Bi(U, X) * tmp.row(U * n + Y);
    return out;
}

OneCochain ad_target(const GradedLieAlgebra& alg, const Eigen::VectorXd& W, const OneCochain& psi) {
    psi.check(alg);
    if (psi.grade >= 1) throw ValidationError("ad_target: value grade already maximal");
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(alg.grade_dim(psi.grade + 1), alg.grade_dim(psi.grade));
    for (int z = 0; z < alg.n_plus; ++z)
        if (W(z) != 0.0) M += W(z) * alg.ad_block(alg.offset(1) + z, psi.grade);
    return {psi.grade + 1, psi.c * M.transpose()};
}

TwoCochain ad_target(const GradedLieAlgebra& alg, const Eigen::VectorXd& W, const TwoCochain& phi) {
    phi.check(alg);
    if (phi.grade >= 1) throw ValidationError("ad_target: value grade already maximal");
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(alg.grade_dim(phi.grade + 1), alg.grade_dim(phi.grade));
    for (int z = 0; z < alg.n_plus; ++z)
        if (W(z) != 0.0) M += W(z) * alg.ad_block(alg.offset(1) + z, phi.grade);
    return {phi.grade + 1, phi.n, phi.c * M.transpose()};
}

}  // namespace ahs
