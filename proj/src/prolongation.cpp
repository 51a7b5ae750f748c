#include "ahs/prolongation.hpp"

#include "ahs/errors.hpp"
#include "ahs/spencer.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace ahs {

namespace {

Eigen::VectorXd g1_full(const GradedLieAlgebra& alg, const Eigen::VectorXd& Z) {
    Eigen::VectorXd z = Eigen::VectorXd::Zero(alg.dim());
    z.segment(alg.offset(1), alg.n_plus) = Z;
    return z;
}

Eigen::MatrixXd block_diag(const GradedLieAlgebra& alg, const FrameChange& fc) {
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(alg.dim(), alg.dim());
    B.block(alg.offset(-1), alg.offset(-1), alg.n_minus, alg.n_minus) = fc.Bm;
    B.block(alg.offset(0), alg.offset(0), alg.n0, alg.n0) = fc.B0;
    B.block(alg.offset(1), alg.offset(1), alg.n_plus, alg.n_plus) = fc.Bp;
    return B;
}

}  // namespace

FrameChange FrameChange::identity(const GradedLieAlgebra& alg) {
    return {Eigen::MatrixXd::Identity(alg.n_minus, alg.n_minus), Eigen::MatrixXd::Identity(alg.n0, alg.n0),
            Eigen::MatrixXd::Identity(alg.n_plus, alg.n_plus), Eigen::VectorXd::Zero(alg.n_plus)};
}

FrameChange FrameChange::from_generator(const GradedLieAlgebra& alg, const Eigen::VectorXd& A,
                                        const Eigen::VectorXd& Z) {
    if (A.size() != alg.n0 || Z.size() != alg.n_plus) throw ValidationError("frame change: shape mismatch");
    FrameChange fc;
    fc.Bm = g0_ad_matrix(alg, A, -1).exp();
    fc.B0 = g0_ad_matrix(alg, A, 0).exp();
    fc.Bp = g0_ad_matrix(alg, A, 1).exp();
    fc.Z = Z;
    return fc;
}

Eigen::VectorXd FrameChange::adjoint(const GradedLieAlgebra& alg, const Eigen::VectorXd& x) const {
    Eigen::VectorXd z = g1_full(alg, Z);
    Eigen::VectorXd zx = bracket_full(alg, z, x);
    Eigen::VectorXd e = x + zx + 0.5 * bracket_full(alg, z, zx);
    return block_diag(alg, *this) * e;
}

Eigen::VectorXd FrameChange::adjoint_inverse(const GradedLieAlgebra& alg, const Eigen::VectorXd& x) const {
    Eigen::VectorXd y = block_diag(alg, *this).inverse() * x;
    Eigen::VectorXd z = -g1_full(alg, Z);
    Eigen::VectorXd zy = bracket_full(alg, z, y);
    return y + zy + 0.5 * bracket_full(alg, z, zy);
}

double FrameChange::automorphism_defect(const GradedLieAlgebra& alg) const {
    const int N = alg.dim();
    Eigen::MatrixXd B = block_diag(alg, *this);
    Eigen::MatrixXd Bi = B.inverse();
    double worst = 0.0;
    for (int i = 0; i < N; ++i) {
        Eigen::VectorXd bi = B.col(i);
        Eigen::MatrixXd adb = Eigen::MatrixXd::Zero(N, N);
        for (int k = 0; k < N; ++k)
            if (bi(k) != 0.0) adb += bi(k) * alg.ad[k];
        worst = std::max(worst, (B * alg.ad[i] * Bi - adb).cwiseAbs().maxCoeff());
    }
    return worst;
}

void FrameChange::validate(const GradedLieAlgebra& alg, double tol) const {
    if (Bm.rows() != alg.n_minus || Bm.cols() != alg.n_minus || B0.rows() != alg.n0 || B0.cols() != alg.n0 ||
        Bp.rows() != alg.n_plus || Bp.cols() != alg.n_plus || Z.size() != alg.n_plus)
        throw ValidationError("frame change: shape mismatch");
    const double scale = std::max({1.0, Bm.cwiseAbs().maxCoeff(), B0.cwiseAbs().maxCoeff()});
    if (automorphism_defect(alg) > tol * scale * scale) throw InvariantError("Ad(b0) is not a bracket automorphism");
}

OneCochain act(const FrameChange& fc, const OneCochain& psi) {
    const Eigen::MatrixXd& Bt = psi.grade < 0 ? fc.Bm : psi.grade == 0 ? fc.B0 : fc.Bp;
    return transform(psi, fc.Bm.inverse(), Bt.inverse());
}

TwoCochain act(const FrameChange& fc, const TwoCochain& phi) {
    const Eigen::MatrixXd& Bt = phi.grade < 0 ? fc.Bm : phi.grade == 0 ? fc.B0 : fc.Bp;
    return transform(phi, fc.Bm.inverse(), Bt.inverse());
}

TwoCochain torsion_change(const GradedLieAlgebra& alg, const TwoCochain& t, const OneCochain& psi) {
    t.check(alg);
    psi.check(alg);
    if (t.grade != -1 || psi.grade != 0) throw ValidationError("torsion_change: expects t in L2(x)g-1 and psi in g-1*(x)g0");
    return t - spencer_d(alg, psi);
}

TwoCochain torsion_equivariance(const GradedLieAlgebra& alg, const TwoCochain& t, const FrameChange& fc,
                                double tol) {
    t.check(alg);
    if (t.grade != -1) throw ValidationError("torsion_equivariance: expects a g-1 valued torsion");
    fc.validate(alg);
    const int n = alg.n_minus;
    // g-1 components of Ad(b) e_X; the exp(Z) terms land in g0 and g1
    Eigen::MatrixXd P(n, n);
    for (int X = 0; X < n; ++X) P.col(X) = fc.adjoint(alg, Eigen::VectorXd::Unit(alg.dim(), X)).head(n);
    TwoCochain out = TwoCochain::zero(alg, -1);
    for (int X = 0; X < n; ++X)
        for (int Y = X + 1; Y < n; ++Y) {
            Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
            for (int U = 0; U < n; ++U)
                for (int V = 0; V < n; ++V)
                    if (P(U, X) != 0.0 && P(V, Y) != 0.0) v += P(U, X) * P(V, Y) * t.at(U, V);
            Eigen::VectorXd full = Eigen::VectorXd::Zero(alg.dim());
            full.head(n) = v;
            out.set(X, Y, fc.adjoint_inverse(alg, full).head(n));
        }
    TwoCochain expected = act(fc, t);
    const double scale = std::max(1.0, t.c.size() ? t.c.cwiseAbs().maxCoeff() : 0.0);
    if (out.c.size() && (out.c - expected.c).cwiseAbs().maxCoeff() > tol * scale * std::max(1.0, fc.Bm.norm() * fc.Bm.norm()))
        throw InvariantError("torsion_equivariance: the exp(Z) part does not drop out");
    return out;
}

// ---------------------------------------------------------------------------

BilinearMap second_torsion_model(const GradedLieAlgebra& alg, const TwoCochain& kappa0,
                                 const std::optional<TwoCochain>& kappa_m1) {
    kappa0.check(alg);
    if (kappa0.grade != 0) throw ValidationError("second_torsion_model: kappa0 must be g0 valued");
    if (kappa_m1) kappa_m1->check(alg);
    const int N = alg.dim();
    const int n = alg.n_minus;
    const int td = alg.n_minus + alg.n0;
    BilinearMap out{td, Eigen::MatrixXd::Zero(N * N, td)};
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            if (i < n && j < n) {
                if (kappa_m1) out.values.row(i * N + j).head(n) = kappa_m1->at(i, j).transpose();
                out.values.row(i * N + j).tail(alg.n0) = kappa0.at(i, j).transpose();
            } else {
                for (const auto& term : alg.structure(i, j))
                    if (term.index < td) out.values(i * N + j, term.index) -= boost::rational_cast<double>(term.value);
            }
        }
    return out;
}

SecondTorsionResult second_torsion_reduction(const GradedLieAlgebra& alg, const BilinearMap& full, bool strict,
                                             double tol) {
    const int N = alg.dim();
    const int n = alg.n_minus;
    const int td = alg.n_minus + alg.n0;
    if (full.target_dim != td || full.values.rows() != N * N || full.values.cols() != td)
        throw ValidationError("second_torsion_reduction: input must be g x g -> g-1 + g0 on basis pairs");
    SecondTorsionResult res{TwoCochain::zero(alg, 0), 0.0};
    double scale = 1.0;
    if (full.values.size()) scale = std::max(scale, full.values.cwiseAbs().maxCoeff());
    // on basis pairs the identity reads full(b_i,b_j) = -pr[b_i,b_j] unless both lie in g-1
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            if (i < n && j < n) continue;
            Eigen::VectorXd d = full.at(N, i, j);
            for (const auto& term : alg.structure(i, j))
                if (term.index < td) d(term.index) += boost::rational_cast<double>(term.value);
            if (d.size()) res.defect = std::max(res.defect, d.cwiseAbs().maxCoeff());
        }
    // alternation on g-1 pairs
    for (int X = 0; X < n; ++X)
        for (int Y = X; Y < n; ++Y)
            res.defect = std::max(res.defect, (full.at(N, X, Y) + full.at(N, Y, X)).cwiseAbs().maxCoeff());
    if (strict && res.defect > tol * scale)
        throw InvariantError("second_torsion_reduction: identity violated (defect " + std::to_string(res.defect) + ")");
    for (int X = 0; X < n; ++X)
        for (int Y = X + 1; Y < n; ++Y) res.component.set(X, Y, full.at(N, X, Y).tail(alg.n0));
    return res;
}

BilinearMap flat_structure_function(const GradedLieAlgebra& alg) {
    const int N = alg.dim();
    BilinearMap out{N, Eigen::MatrixXd::Zero(N * N, N)};
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (const auto& term : alg.structure(i, j))
                out.values(i * N + j, term.index) = boost::rational_cast<double>(term.value);
    return out;
}

BilinearMap structure_function(const GradedLieAlgebra& alg, const TwoCochain& kappa_m1, const TwoCochain& kappa0,
                               const std::optional<TwoCochain>& kappa1) {
    kappa_m1.check(alg);
    kappa0.check(alg);
    if (kappa_m1.grade != -1 || kappa0.grade != 0 || (kappa1 && kappa1->grade != 1))
        throw ValidationError("structure_function: curvature components have wrong grades");
    BilinearMap out = flat_structure_function(alg);
    const int N = alg.dim();
    const int n = alg.n_minus;
    for (int X = 0; X < n; ++X)
        for (int Y = 0; Y < n; ++Y) {
            out.values.row(X * N + Y).segment(alg.offset(-1), n) += kappa_m1.at(X, Y).transpose();
            out.values.row(X * N + Y).segment(alg.offset(0), alg.n0) += kappa0.at(X, Y).transpose();
            if (kappa1) out.values.row(X * N + Y).segment(alg.offset(1), alg.n_plus) += kappa1->at(X, Y).transpose();
        }
    return out;
}

double structure_jacobi_residual(const GradedLieAlgebra& alg, const BilinearMap& s) {
    const int N = alg.dim();
    if (s.target_dim != N) throw ValidationError("structure_jacobi_residual: needs a g-valued structure function");
    // S[k] = matrix of s(b_k, .)
    std::vector<Eigen::MatrixXd> S(N, Eigen::MatrixXd::Zero(N, N));
    for (int k = 0; k < N; ++k)
        for (int j = 0; j < N; ++j) S[k].col(j) = s.values.row(k * N + j).transpose();
    auto apply = [&](const Eigen::VectorXd& v, int k) {
        Eigen::VectorXd out = Eigen::VectorXd::Zero(N);
        for (int l = 0; l < N; ++l)
            if (v(l) != 0.0) out += v(l) * S[l].col(k);
        return out;
    };
    double worst = 0.0;
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j)
            for (int k = j + 1; k < N; ++k) {
                Eigen::VectorXd c = apply(S[i].col(j), k) + apply(S[j].col(k), i) + apply(S[k].col(i), j);
                worst = std::max(worst, c.cwiseAbs().maxCoeff());
            }
    return worst;
}

nlohmann::json TransitivityWitness::to_json() const {
    return {{"ker_d", ker_d}, {"n_plus", n_plus}, {"holds", holds}};
}

TransitivityWitness transitivity_witness(const GradedLieAlgebra& alg) {
    WeightKeys keys;
    KeyedOperator d = d_operator(alg, 0, keys);
    TransitivityWitness w;
    w.ker_d = static_cast<int>(d.M.cols()) - d.rank();
    w.n_plus = alg.n_plus;
    w.holds = w.ker_d == w.n_plus;
    return w;
}

}  // namespace ahs
