#include "ahs/normalization.hpp"

#include "ahs/errors.hpp"
#include "ahs/spencer.hpp"

#include <cmath>

namespace ahs {

namespace {

Eigen::VectorXd embed(const GradedLieAlgebra& alg, int grade, const Eigen::VectorXd& v) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(alg.dim());
    x.segment(alg.offset(grade), alg.grade_dim(grade)) = v;
    return x;
}

void require_kind(const GradedLieAlgebra& alg, Kind k, const char* what) {
    if (alg.kind.kind != k) throw ValidationError(std::string(what) + ": wrong structure kind " + alg.kind.label());
}

void require_square(const Eigen::MatrixXd& M, int n, const char* what) {
    if (M.rows() != n || M.cols() != n) throw ValidationError(std::string(what) + ": expected a square array of size " + std::to_string(n));
}

// g-1 pair basis for lagrangian (k <= l) and spinorial (k < l)
struct PairBasis {
    int m = 0;
    bool lag = true;
    std::vector<std::vector<int>> index;  // index[k][l] for the ordered pair, -1 on the spinorial diagonal

    explicit PairBasis(const GradedLieAlgebra& alg) : m(alg.kind.m), lag(alg.kind.kind == Kind::lagrangian) {
        if (alg.kind.kind != Kind::lagrangian && alg.kind.kind != Kind::spinorial)
            throw ValidationError("pair index forms exist only for lagrangian and spinorial kinds");
        index.assign(m, std::vector<int>(m, -1));
        int c = 0;
        for (int k = 0; k < m; ++k)
            for (int l = lag ? k : k + 1; l < m; ++l) index[k][l] = index[l][k] = c++;
    }
    // coordinates of e_k.e_l (or e_k^e_l, antisymmetric)
    double sign(int k, int l) const { return lag ? 1.0 : (k < l ? 1.0 : (k > l ? -1.0 : 0.0)); }
    Eigen::VectorXd elem(int k, int l, int n) const {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
        if (index[k][l] >= 0) v(index[k][l]) = sign(k, l);
        return v;
    }
};

}  // namespace

double Tensor4::max_abs_diff(const Tensor4& o) const {
    if (d != o.d) return INFINITY;
    double w = 0.0;
    for (size_t i = 0; i < v.size(); ++i) w = std::max(w, std::abs(v[i] - o.v[i]));
    return w;
}

// ---------------------------------------------------------------------------
// RawCurvature

Eigen::MatrixXd RawCurvature::ricci() const {
    const int m = dim();
    Eigen::MatrixXd Ric = Eigen::MatrixXd::Zero(m, m);
    for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
            for (int l = 0; l < m; ++l) Ric(j, k) += R(l, j, l, k);
    return Ric;
}

double RawCurvature::scalar() const { return ricci().trace(); }

double RawCurvature::antisymmetry_defect() const {
    const int m = dim();
    double w = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) w = std::max(w, std::abs(R(i, j, k, l) + R(i, j, l, k)));
    return w;
}

double RawCurvature::bianchi_defect() const {
    const int m = dim();
    double w = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l)
                    w = std::max(w, std::abs(R(i, j, k, l) + R(i, k, l, j) + R(i, l, j, k)));
    return w;
}

RawCurvature RawCurvature::constant_curvature(int m) {
    RawCurvature out{Tensor4(m)};
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l)
                    out.R(i, j, k, l) = (i == k && j == l ? 1.0 : 0.0) - (i == l && j == k ? 1.0 : 0.0);
    return out;
}

nlohmann::json RawCurvature::to_json() const {
    const int m = dim();
    nlohmann::json a = nlohmann::json::array();
    for (int i = 0; i < m; ++i) {
        nlohmann::json b = nlohmann::json::array();
        for (int j = 0; j < m; ++j) {
            nlohmann::json c = nlohmann::json::array();
            for (int k = 0; k < m; ++k) {
                nlohmann::json d = nlohmann::json::array();
                for (int l = 0; l < m; ++l) d.push_back(R(i, j, k, l));
                c.push_back(d);
            }
            b.push_back(c);
        }
        a.push_back(b);
    }
    return a;
}

RawCurvature RawCurvature::from_json(const nlohmann::json& j, int m) {
    auto fail = [] { throw ValidationError("raw curvature R must be an m x m x m x m numeric array"); };
    if (!j.is_array() || static_cast<int>(j.size()) != m) fail();
    RawCurvature out{Tensor4(m)};
    for (int i = 0; i < m; ++i) {
        if (!j[i].is_array() || static_cast<int>(j[i].size()) != m) fail();
        for (int a = 0; a < m; ++a) {
            if (!j[i][a].is_array() || static_cast<int>(j[i][a].size()) != m) fail();
            for (int b = 0; b < m; ++b) {
                const auto& row = j[i][a][b];
                if (!row.is_array() || static_cast<int>(row.size()) != m) fail();
                for (int c = 0; c < m; ++c) {
                    if (!row[c].is_number()) fail();
                    out.R(i, a, b, c) = row[c].get<double>();
                }
            }
        }
    }
    return out;
}

void CurvatureData::validate(const GradedLieAlgebra& alg) const {
    kappa_m1.check(alg);
    kappa0.check(alg);
    if (kappa_m1.grade != -1 || kappa0.grade != 0) throw ValidationError("curvature components have wrong grades");
    const double s0 = std::max(1.0, kappa0.c.cwiseAbs().maxCoeff());
    if (kappa0.alternation_defect() > 1e-12 * s0) throw ValidationError("kappa0 is not alternating");
    if (kappa_m1.c.size() > 0 &&
        kappa_m1.alternation_defect() > 1e-12 * std::max(1.0, kappa_m1.c.cwiseAbs().maxCoeff()))
        throw ValidationError("kappa_-1 is not alternating");
    if (raw) {
        if (alg.kind.kind != Kind::conformal && alg.kind.kind != Kind::projective)
            throw ValidationError("raw curvature input is only accepted for conformal and projective kinds");
        if (raw->dim() != alg.n_minus) throw ValidationError("raw curvature has the wrong dimension");
        double rs = 1.0;
        for (double x : raw->R.v) rs = std::max(rs, std::abs(x));
        if (raw->antisymmetry_defect() > 1e-12 * rs) throw ValidationError("raw curvature is not antisymmetric in k,l");
        if (torsion_free && raw->bianchi_defect() > 1e-12 * rs)
            throw ValidationError("raw curvature flagged torsion-free violates the first Bianchi identity");
    }
}

// ---------------------------------------------------------------------------
// traces

Eigen::MatrixXd trace_kappa0(const GradedLieAlgebra& alg, const TwoCochain& kappa0) {
    kappa0.check(alg);
    if (kappa0.grade != 0) throw ValidationError("trace_kappa0: value grade must be 0");
    const int n = alg.n_minus;
    // C[a](i, Y) = [b_a, e_Y](e^i)
    std::vector<Eigen::MatrixXd> C(alg.n0);
    for (int a = 0; a < alg.n0; ++a) C[a] = alg.ad_block(alg.offset(0) + a, -1);
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(n, n);
    for (int X = 0; X < n; ++X)
        for (int i = 0; i < n; ++i) {
            const auto row = kappa0.c.row(i * n + X);
            for (int a = 0; a < alg.n0; ++a)
                if (row(a) != 0.0) T.row(X) += row(a) * C[a].row(i);
        }
    return T;
}

OneCochain trace_as_g1(const GradedLieAlgebra& alg, const Eigen::MatrixXd& T) {
    require_square(T, alg.n_minus, "trace_as_g1");
    // <e_Y, z> = (D z)_Y
    return {1, (alg.D.inverse() * T.transpose()).transpose()};
}

Eigen::MatrixXd trace_g0(const GradedLieAlgebra& alg, const TwoCochain& kappa0) {
    kappa0.check(alg);
    if (kappa0.grade != 0) throw ValidationError("trace_g0: value grade must be 0");
    const int n = alg.n_minus;
    Eigen::VectorXd t(alg.n0);
    for (int a = 0; a < alg.n0; ++a) t(a) = alg.ad_block(alg.offset(0) + a, -1).trace();
    Eigen::MatrixXd T(n, n);
    for (int X = 0; X < n; ++X)
        for (int Y = 0; Y < n; ++Y) T(X, Y) = kappa0.c.row(X * n + Y).dot(t);
    return T;
}

TwoCochain deformation_delta_kappa0(const GradedLieAlgebra& alg, const DeformationTensor& gamma) {
    gamma.gamma.check(alg);
    if (gamma.gamma.grade != 1) throw ValidationError("deformation tensor must take values in g1");
    const int n = alg.n_minus;
    std::vector<Eigen::VectorXd> G(n), E(n);
    std::vector<bool> nz(n);
    for (int X = 0; X < n; ++X) {
        G[X] = embed(alg, 1, gamma.gamma.value(X));
        E[X] = Eigen::VectorXd::Unit(alg.dim(), X);
        nz[X] = gamma.gamma.value(X).cwiseAbs().maxCoeff() != 0.0;
    }
    TwoCochain out = TwoCochain::zero(alg, 0);
    for (int X = 0; X < n; ++X)
        for (int Y = X + 1; Y < n; ++Y) {
            if (!nz[X] && !nz[Y]) continue;
            Eigen::VectorXd v = Eigen::VectorXd::Zero(alg.dim());
            // [Gamma(Y),X] - [Gamma(X),Y] = [Y,Gamma(X)] - [X,Gamma(Y)]
            if (nz[X]) v += bracket_full(alg, E[Y], G[X]);
            if (nz[Y]) v -= bracket_full(alg, E[X], G[Y]);
            out.set(X, Y, v.segment(alg.offset(0), alg.n0));
        }
    return out;
}

bool torsion_is_harmonic(const GradedLieAlgebra& alg, const TwoCochain& T, double rel_tol) {
    T.check(alg);
    if (T.grade != -1) throw ValidationError("torsion must take values in g-1");
    const double scale = std::max(1.0, T.c.size() ? T.c.cwiseAbs().maxCoeff() : 0.0);
    OneCochain ds = spencer_dstar(alg, T);
    return ds.c.size() == 0 || ds.c.cwiseAbs().maxCoeff() <= rel_tol * scale;
}

// ---------------------------------------------------------------------------
// index forms

double grass_index(const GradedLieAlgebra& alg, const Eigen::MatrixXd& M, int c, int l, int a, int k) {
    const int q = alg.kind.q;
    return M(a * q + k, c * q + l);
}

Tensor4 gamma_pair_form(const GradedLieAlgebra& alg, const DeformationTensor& gamma) {
    PairBasis pb(alg);
    const int m = pb.m;
    const int n = alg.n_minus;
    Tensor4 G(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Eigen::VectorXd out = gamma.gamma.c.transpose() * pb.elem(i, j, n);
            for (int s = 0; s < m; ++s)
                for (int t = 0; t < m; ++t) {
                    const int z = pb.index[s][t];
                    if (z < 0) continue;
                    G(s, t, i, j) = pb.lag ? out(z) / (s == t ? 1.0 : 2.0) : 0.5 * pb.sign(s, t) * out(z);
                }
        }
    return G;
}

DeformationTensor gamma_from_pair_form(const GradedLieAlgebra& alg, const Tensor4& G) {
    PairBasis pb(alg);
    const int m = pb.m;
    if (G.d != m) throw ValidationError("pair form has the wrong dimension");
    DeformationTensor out{OneCochain::zero(alg, 1)};
    for (int i = 0; i < m; ++i)
        for (int j = pb.lag ? i : i + 1; j < m; ++j) {
            const int X = pb.index[i][j];
            for (int s = 0; s < m; ++s)
                for (int t = pb.lag ? s : s + 1; t < m; ++t) {
                    const int Z = pb.index[s][t];
                    if (s == t) out.gamma.c(X, Z) = G(s, s, i, j);
                    else out.gamma.c(X, Z) = G(s, t, i, j) + (pb.lag ? 1.0 : -1.0) * G(t, s, i, j);
                }
        }
    return out;
}

Tensor4 trace_pair_form(const GradedLieAlgebra& alg, const Eigen::MatrixXd& T) {
    PairBasis pb(alg);
    const int m = pb.m;
    const int n = alg.n_minus;
    require_square(T, n, "trace_pair_form");
    Tensor4 out(m);
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q) {
            // spinorial pairs with e_q^e_p, see the index conventions in the README
            Eigen::VectorXd w = T * (pb.lag ? pb.elem(p, q, n) : pb.elem(q, p, n));
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) out(p, q, k, l) = pb.elem(k, l, n).dot(w);
        }
    return out;
}

Eigen::MatrixXd gamma_matrix_form(const GradedLieAlgebra& alg, const DeformationTensor& gamma) {
    if (alg.kind.kind != Kind::conformal && alg.kind.kind != Kind::projective)
        throw ValidationError("matrix index form exists only for conformal and projective kinds");
    return gamma.gamma.c.transpose();  // Gamma_jk = coefficient of e^j in Gamma(e_k)
}

DeformationTensor gamma_from_matrix_form(const GradedLieAlgebra& alg, const Eigen::MatrixXd& G) {
    if (alg.kind.kind != Kind::conformal && alg.kind.kind != Kind::projective)
        throw ValidationError("matrix index form exists only for conformal and projective kinds");
    require_square(G, alg.n_minus, "gamma_from_matrix_form");
    return {OneCochain{1, G.transpose()}};
}

// ---------------------------------------------------------------------------
// closed forms

DeformationTensor gamma_conformal(const GradedLieAlgebra& alg, const Eigen::MatrixXd& ricci, double scalar) {
    require_kind(alg, Kind::conformal, "gamma_conformal");
    const int m = alg.kind.m;
    if (m < 3) throw ValidationError("gamma_conformal: needs m >= 3 (denominator m - 2)");
    require_square(ricci, m, "gamma_conformal");
    Eigen::MatrixXd G = -(ricci - Eigen::MatrixXd::Identity(m, m) * scalar / (2.0 * (m - 1))) / (m - 2.0);
    return gamma_from_matrix_form(alg, G);
}

DeformationTensor gamma_grassmannian(const GradedLieAlgebra& alg, const Eigen::MatrixXd& TrR,
                                     const Eigen::MatrixXd& TrR_g0) {
    require_kind(alg, Kind::grassmannian, "gamma_grassmannian");
    const int p = alg.kind.p, q = alg.kind.q;
    const double s = p + q;
    if (!(q >= p && p >= 1 && p + q >= 3)) throw ValidationError("gamma_grassmannian: needs q >= p >= 1 and p + q >= 3");
    require_square(TrR, alg.n_minus, "gamma_grassmannian");
    require_square(TrR_g0, alg.n_minus, "gamma_grassmannian");
    Eigen::MatrixXd G2 = TrR_g0 / s;
    auto T = [&](int c, int l, int a, int k) { return grass_index(alg, TrR, c, l, a, k); };
    auto B = [&](int c, int l, int a, int k) { return grass_index(alg, G2, c, l, a, k); };
    DeformationTensor out{OneCochain::zero(alg, 1)};
    for (int c = 0; c < p; ++c)
        for (int l = 0; l < q; ++l)
            for (int a = 0; a < p; ++a)
                for (int k = 0; k < q; ++k)
                    out.gamma.c(a * q + k, c * q + l) =
                        -1.0 / (4.0 - s * s) *
                        (s * T(c, l, a, k) + 2.0 * T(a, l, c, k) + s * B(a, l, c, k) + 2.0 * B(c, l, a, k));
    return out;
}

DeformationTensor gamma_projective(const GradedLieAlgebra& alg, const RawCurvature& R) {
    require_kind(alg, Kind::projective, "gamma_projective");
    const int q = alg.kind.q;
    if (q <= 1) throw ValidationError("gamma_projective: needs q > 1");
    if (R.dim() != q) throw ValidationError("gamma_projective: curvature has the wrong dimension");
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(q, q);
    for (int j = 0; j < q; ++j)
        for (int k = 0; k < q; ++k) {
            double v = 0.0;
            for (int l = 0; l < q; ++l) v += R.R(l, j, l, k) + R.R(l, l, j, k);
            G(j, k) = v / (q - 1.0);
        }
    return gamma_from_matrix_form(alg, G);
}

DeformationTensor gamma_lagrangian(const GradedLieAlgebra& alg, const Eigen::MatrixXd& TrR) {
    require_kind(alg, Kind::lagrangian, "gamma_lagrangian");
    const int m = alg.kind.m;
    if (m * (m + 1) == 2 || m < 1) throw ValidationError("gamma_lagrangian: degenerate m (m(m+1) = 2)");
    Tensor4 T = trace_pair_form(alg, TrR);
    Tensor4 G(m);
    const double den = m * (m + 1) - 2.0;
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l)
                    G(p, q, k, l) = (m * T(p, q, k, l) + T(p, k, q, l) + T(p, l, q, k)) / den;
    return gamma_from_pair_form(alg, G);
}

DeformationTensor gamma_spinorial(const GradedLieAlgebra& alg, const Eigen::MatrixXd& TrR) {
    require_kind(alg, Kind::spinorial, "gamma_spinorial");
    const int m = alg.kind.m;
    if (m * (m - 1) == 2 || m < 2) throw ValidationError("gamma_spinorial: degenerate m (m(m-1) = 2)");
    Tensor4 T = trace_pair_form(alg, TrR);
    Tensor4 G(m);
    const double den = m * (m - 1) - 2.0;
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l)
                    G(p, q, k, l) = (m * T(p, q, k, l) + T(p, k, q, l) - T(p, l, q, k)) / den;
    return gamma_from_pair_form(alg, G);
}

DeformationTensor closed_form_gamma(const GradedLieAlgebra& alg, const CurvatureData& data) {
    const TwoCochain R = -1.0 * data.kappa0;
    switch (alg.kind.kind) {
        case Kind::conformal: {
            RawCurvature raw = data.raw ? *data.raw : raw_from_kappa0(alg, data.kappa0);
            return gamma_conformal(alg, raw.ricci(), raw.scalar());
        }
        case Kind::projective:
            return gamma_projective(alg, data.raw ? *data.raw : raw_from_kappa0(alg, data.kappa0));
        case Kind::grassmannian:
            return gamma_grassmannian(alg, trace_kappa0(alg, R), trace_g0(alg, R));
        case Kind::lagrangian:
            return gamma_lagrangian(alg, trace_kappa0(alg, R));
        case Kind::spinorial:
            return gamma_spinorial(alg, trace_kappa0(alg, R));
    }
    throw ValidationError("unknown kind");
}

TwoCochain kappa0_from_raw(const GradedLieAlgebra& alg, const RawCurvature& R) {
    const int n = alg.n_minus;
    if (R.dim() != n) throw ValidationError("raw curvature has the wrong dimension");
    Eigen::MatrixXd Ad(n * n, alg.n0);
    for (int a = 0; a < alg.n0; ++a) {
        Eigen::MatrixXd M = alg.ad_block(alg.offset(0) + a, -1);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) Ad(i * n + j, a) = M(i, j);
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Ad);
    double scale = 1.0;
    for (double x : R.R.v) scale = std::max(scale, std::abs(x));
    TwoCochain out = TwoCochain::zero(alg, 0);
    for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
            Eigen::VectorXd r(n * n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) r(i * n + j) = R.R(i, j, k, l);
            Eigen::VectorXd a = qr.solve(r);
            if ((Ad * a - r).cwiseAbs().maxCoeff() > 1e-9 * scale)
                throw ValidationError("raw curvature value R(" + std::to_string(k) + "," + std::to_string(l) +
                                      ") does not lie in g0");
            out.set(k, l, -a);
        }
    return out;
}

RawCurvature raw_from_kappa0(const GradedLieAlgebra& alg, const TwoCochain& kappa0) {
    kappa0.check(alg);
    const int n = alg.n_minus;
    std::vector<Eigen::MatrixXd> C(alg.n0);
    for (int a = 0; a < alg.n0; ++a) C[a] = alg.ad_block(alg.offset(0) + a, -1);
    RawCurvature out{Tensor4(n)};
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
            const auto row = kappa0.c.row(k * n + l);
            for (int a = 0; a < alg.n0; ++a)
                if (row(a) != 0.0) M -= row(a) * C[a];
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) out.R(i, j, k, l) = M(i, j);
        }
    return out;
}

// ---------------------------------------------------------------------------
// oracle

namespace {

Eigen::VectorXd flat(const Eigen::MatrixXd& T) {
    Eigen::VectorXd v(T.size());
    for (int X = 0; X < T.rows(); ++X)
        for (int Y = 0; Y < T.cols(); ++Y) v(X * T.cols() + Y) = T(X, Y);
    return v;
}

DeformationTensor basis_gamma(const GradedLieAlgebra& alg, int col) {
    DeformationTensor g{OneCochain::zero(alg, 1)};
    g.gamma.c(col / alg.n_plus, col % alg.n_plus) = 1.0;
    return g;
}

}  // namespace

std::vector<int> gamma_keys(const GradedLieAlgebra& alg, WeightKeys& keys) {
    std::vector<int> out;
    for (int X = 0; X < alg.n_minus; ++X)
        for (int Z = 0; Z < alg.n_plus; ++Z)
            out.push_back(keys.key(weight_add(alg.weights[alg.offset(1) + Z], alg.weights[X], -1)));
    return out;
}

std::vector<int> bilinear_keys(const GradedLieAlgebra& alg, WeightKeys& keys) {
    std::vector<int> out;
    for (int X = 0; X < alg.n_minus; ++X)
        for (int Y = 0; Y < alg.n_minus; ++Y)
            out.push_back(keys.key(weight_add(std::vector<Q>(alg.cartan.size(), Q(0)),
                                              weight_add(alg.weights[X], alg.weights[Y]), -1)));
    return out;
}

OracleSolver::OracleSolver(const GradedLieAlgebra& alg) : alg_(&alg) {
    const int n = alg.n_minus;
    const int cols = n * alg.n_plus;
    A_ = Eigen::MatrixXd::Zero(n * n, cols);
    for (int c = 0; c < cols; ++c) A_.col(c) = flat(trace_kappa0(alg, deformation_delta_kappa0(alg, basis_gamma(alg, c))));
    WeightKeys keys;
    std::vector<int> ck = gamma_keys(alg, keys);
    std::vector<int> rk = bilinear_keys(alg, keys);
    svd_.emplace(keyed_from_dense(A_, rk, ck));
    kernel_dim_ = cols - svd_->rank();
}

DeformationTensor OracleSolver::solve(const TwoCochain& kappa0) const {
    if (kernel_dim_ > 0)
        throw NonUniquenessError("trace map of " + alg_->kind.label() + " has a kernel of dimension " +
                                     std::to_string(kernel_dim_) + "; Gamma is not unique",
                                 kernel_dim_);
    Eigen::VectorXd b = flat(trace_kappa0(*alg_, kappa0));
    Eigen::VectorXd x = svd_->solve(b);
    const double scale = std::max(1.0, b.size() ? b.cwiseAbs().maxCoeff() : 0.0);
    if (b.size() && (A_ * x - b).cwiseAbs().maxCoeff() > 1e-9 * scale)
        throw InvariantError("oracle least-squares residual exceeds tolerance; kappa0 cannot be normalized");
    DeformationTensor out{OneCochain::zero(*alg_, 1)};
    for (int col = 0; col < x.size(); ++col) out.gamma.c(col / alg_->n_plus, col % alg_->n_plus) = x(col);
    return out;
}

DeformationTensor oracle_gamma(const GradedLieAlgebra& alg, const TwoCochain& kappa0) {
    return OracleSolver(alg).solve(kappa0);
}

double residual_trace_norm(const GradedLieAlgebra& alg, const TwoCochain& kappa0, const DeformationTensor& gamma) {
    Eigen::MatrixXd T = trace_kappa0(alg, kappa0 - deformation_delta_kappa0(alg, gamma));
    return T.size() ? T.cwiseAbs().maxCoeff() : 0.0;
}

nlohmann::json UniquenessReport::to_json() const {
    return {{"gamma_dim", gamma_dim}, {"trace_kernel_dim", trace_kernel_dim}, {"combined_kernel_dim", combined_kernel_dim}};
}

UniquenessReport uniqueness_certificate(const GradedLieAlgebra& alg) {
    const int n = alg.n_minus;
    const int cols = n * alg.n_plus;
    Eigen::MatrixXd A(2 * n * n, cols);
    for (int c = 0; c < cols; ++c) {
        TwoCochain dk = deformation_delta_kappa0(alg, basis_gamma(alg, c));
        A.col(c) << flat(trace_kappa0(alg, dk)), flat(trace_g0(alg, dk));
    }
    WeightKeys keys;
    std::vector<int> ck = gamma_keys(alg, keys);
    std::vector<int> rk = bilinear_keys(alg, keys);
    KeyedOperator tr = keyed_from_dense(A.topRows(n * n), rk, ck);
    KeyedOperator both = stack(tr, keyed_from_dense(A.bottomRows(n * n), rk, ck));
    UniquenessReport rep;
    rep.gamma_dim = cols;
    rep.trace_kernel_dim = cols - tr.rank();
    rep.combined_kernel_dim = cols - both.rank();
    return rep;
}

// ---------------------------------------------------------------------------

nlohmann::json FiberConstancyReport::to_json() const {
    return {{"precondition", precondition},
            {"interchange", interchange},
            {"residual", residual},
            {"scale", scale},
            {"passed", passed}};
}

FiberConstancyReport fiber_constancy_check(const GradedLieAlgebra& alg, const TwoCochain& kappa0,
                                           const TwoCochain& kappa_m1, const Eigen::VectorXd& tau, bool strict,
                                           double tol) {
    kappa0.check(alg);
    kappa_m1.check(alg);
    if (kappa0.grade != 0 || kappa_m1.grade != -1) throw ValidationError("fiber_constancy_check: wrong grades");
    if (tau.size() != alg.n_plus) throw ValidationError("fiber_constancy_check: tau must be a g1 element");
    FiberConstancyReport rep;
    auto mx = [](const Eigen::MatrixXd& M) { return M.size() ? M.cwiseAbs().maxCoeff() : 0.0; };
    rep.scale = std::max({1.0, mx(kappa0.c), mx(kappa_m1.c) * std::max(1.0, tau.cwiseAbs().maxCoeff())});
    OneCochain ds_m1 = spencer_dstar(alg, kappa_m1);
    rep.precondition = mx(ds_m1.c);
    if (strict && rep.precondition > tol * rep.scale)
        throw ValidationError("fiber_constancy_check: kappa_-1 is not harmonic (|d* kappa_-1| = " +
                              std::to_string(rep.precondition) + ")");
    TwoCochain shift = ad_target(alg, tau, kappa_m1);  // [tau, kappa_-1(X,Y)]
    OneCochain lhs = spencer_dstar(alg, shift);
    OneCochain rhs = ad_target(alg, tau, ds_m1);
    rep.interchange = mx(lhs.c - rhs.c);
    rep.residual = mx(spencer_dstar(alg, kappa0 - shift).c - spencer_dstar(alg, kappa0).c);
    rep.passed = rep.residual <= tol * rep.scale && rep.interchange <= tol * rep.scale;
    return rep;
}

}  // namespace ahs
