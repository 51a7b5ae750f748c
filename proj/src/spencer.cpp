#include "ahs/spencer.hpp"

#include "ahs/errors.hpp"

namespace ahs {

namespace {

using Trip = Eigen::Triplet<double, long>;

int local(const GradedLieAlgebra& alg, int full_index) {
    return full_index - alg.offset(alg.grade_of(full_index));
}

SpMat from_triplets(long rows, long cols, const std::vector<Trip>& t) {
    SpMat M(rows, cols);
    M.setFromTriplets(t.begin(), t.end());
    M.prune(0.0);
    return M;
}

}  // namespace

// ---------------------------------------------------------------------------
// functional forms

TwoCochain spencer_d(const GradedLieAlgebra& alg, const OneCochain& psi) {
    psi.check(alg);
    if (psi.grade != 0 && psi.grade != 1) throw ValidationError("spencer_d: value grade must be 0 or 1");
    const int n = alg.n_minus;
    std::vector<Eigen::MatrixXd> R(n);  // R[Y] = ad(e_Y) on g_i
    for (int Y = 0; Y < n; ++Y) R[Y] = alg.ad_block(Y, psi.grade);
    TwoCochain out = TwoCochain::zero(alg, psi.grade - 1);
    for (int X = 0; X < n; ++X)
        for (int Y = X + 1; Y < n; ++Y)
            out.set(X, Y, -R[Y] * psi.value(X) + R[X] * psi.value(Y));
    return out;
}

OneCochain spencer_dstar(const GradedLieAlgebra& alg, const TwoCochain& phi) {
    phi.check(alg);
    if (phi.grade != -1 && phi.grade != 0) throw ValidationError("spencer_dstar: value grade must be -1 or 0");
    const int n = alg.n_minus;
    OneCochain out = OneCochain::zero(alg, phi.grade + 1);
    for (int i = 0; i < n; ++i) {
        Eigen::MatrixXd Zi = alg.dual_ad_block(i, phi.grade);
        for (int X = 0; X < n; ++X) out.c.row(X) += (Zi * phi.at(i, X)).transpose();
    }
    return out;
}

Eigen::VectorXd spencer_d2(const GradedLieAlgebra& alg, const TwoCochain& phi) {
    phi.check(alg);
    if (phi.grade != 0) throw ValidationError("spencer_d2: value grade must be 0");
    const int n = alg.n_minus;
    std::vector<Eigen::MatrixXd> R(n);
    for (int W = 0; W < n; ++W) R[W] = alg.ad_block(W, 0);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<long>(triple_count(n)) * n);
    int t = 0;
    for (int X = 0; X < n; ++X)
        for (int Y = X + 1; Y < n; ++Y)
            for (int W = Y + 1; W < n; ++W, ++t)
                out.segment(t * n, n) = -(R[W] * phi.at(X, Y) + R[X] * phi.at(Y, W) + R[Y] * phi.at(W, X));
    return out;
}

// ---------------------------------------------------------------------------
// weight keys

std::vector<int> one_cochain_keys(const GradedLieAlgebra& alg, int grade, WeightKeys& keys) {
    const int d = alg.grade_dim(grade);
    std::vector<int> out(static_cast<size_t>(alg.n_minus) * d);
    for (int X = 0; X < alg.n_minus; ++X)
        for (int a = 0; a < d; ++a)
            out[X * d + a] = keys.key(weight_add(alg.weights[alg.offset(grade) + a], alg.weights[X], -1));
    return out;
}

std::vector<int> two_cochain_keys(const GradedLieAlgebra& alg, int grade, WeightKeys& keys) {
    const int n = alg.n_minus;
    const int d = alg.grade_dim(grade);
    std::vector<int> out(static_cast<size_t>(pair_count(n)) * d);
    for (int X = 0; X < n; ++X)
        for (int Y = X + 1; Y < n; ++Y) {
            auto w = weight_add(alg.weights[X], alg.weights[Y]);
            for (int a = 0; a < d; ++a)
                out[pair_index(n, X, Y) * d + a] = keys.key(weight_add(alg.weights[alg.offset(grade) + a], w, -1));
        }
    return out;
}

namespace {

std::vector<int> three_cochain_keys(const GradedLieAlgebra& alg, WeightKeys& keys) {
    const int n = alg.n_minus;
    std::vector<int> out;
    out.reserve(static_cast<size_t>(triple_count(n)) * n);
    for (int X = 0; X < n; ++X)
        for (int Y = X + 1; Y < n; ++Y)
            for (int W = Y + 1; W < n; ++W) {
                auto w = weight_add(weight_add(alg.weights[X], alg.weights[Y]), alg.weights[W]);
                for (int a = 0; a < n; ++a) out.push_back(keys.key(weight_add(alg.weights[a], w, -1)));
            }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// matrix forms, built straight from the structure table

KeyedOperator d_operator(const GradedLieAlgebra& alg, int grade, WeightKeys& keys) {
    if (grade != 0 && grade != 1) throw ValidationError("d_operator: value grade must be 0 or 1");
    const int n = alg.n_minus;
    const int di = alg.grade_dim(grade);
    const int dt = alg.grade_dim(grade - 1);
    std::vector<Trip> t;
    for (int X = 0; X < n; ++X)
        for (int a = 0; a < di; ++a) {
            const long col = X * di + a;
            for (int Y = 0; Y < n; ++Y) {
                if (Y == X) continue;
                // phi(X,Y) += [b_a, e_Y]
                for (const auto& term : alg.structure(alg.offset(grade) + a, Y)) {
                    const int b = local(alg, term.index);
                    const double v = boost::rational_cast<double>(term.value);
                    if (X < Y) t.emplace_back(pair_index(n, X, Y) * dt + b, col, v);
                    else t.emplace_back(pair_index(n, Y, X) * dt + b, col, -v);
                }
            }
        }
    KeyedOperator op;
    op.M = from_triplets(static_cast<long>(pair_count(n)) * dt, static_cast<long>(n) * di, t);
    op.row_key = two_cochain_keys(alg, grade - 1, keys);
    op.col_key = one_cochain_keys(alg, grade, keys);
    return op;
}

KeyedOperator dstar_operator(const GradedLieAlgebra& alg, int grade, WeightKeys& keys) {
    if (grade != -1 && grade != 0) throw ValidationError("dstar_operator: value grade must be -1 or 0");
    const int n = alg.n_minus;
    const int dj = alg.grade_dim(grade);
    const int dt = alg.grade_dim(grade + 1);
    // [Z^i, b_a] rows: coefficient lists per (i, a)
    auto dual_bracket = [&](int i, int a) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(dt);
        for (int z = 0; z < alg.n_plus; ++z) {
            const double w = alg.dual(i, z);
            if (w == 0.0) continue;
            for (const auto& term : alg.structure(alg.offset(1) + z, alg.offset(grade) + a))
                v(local(alg, term.index)) += w * boost::rational_cast<double>(term.value);
        }
        return v;
    };
    std::vector<Trip> t;
    for (int P = 0; P < n; ++P)
        for (int Qi = P + 1; Qi < n; ++Qi)
            for (int a = 0; a < dj; ++a) {
                const long col = pair_index(n, P, Qi) * dj + a;
                // phi(P,Q) = b_a contributes [Z^P, b_a] at X = Q; phi(Q,P) = -b_a gives -[Z^Q, b_a] at X = P
                Eigen::VectorXd u = dual_bracket(P, a);
                Eigen::VectorXd w = dual_bracket(Qi, a);
                for (int b = 0; b < dt; ++b) {
                    if (u(b) != 0.0) t.emplace_back(Qi * dt + b, col, u(b));
                    if (w(b) != 0.0) t.emplace_back(P * dt + b, col, -w(b));
                }
            }
    KeyedOperator op;
    op.M = from_triplets(static_cast<long>(n) * dt, static_cast<long>(pair_count(n)) * dj, t);
    op.row_key = one_cochain_keys(alg, grade + 1, keys);
    op.col_key = two_cochain_keys(alg, grade, keys);
    return op;
}

KeyedOperator d2_operator(const GradedLieAlgebra& alg, WeightKeys& keys) {
    const int n = alg.n_minus;
    const int d0 = alg.n0;
    std::vector<Trip> t;
    int row_triple = 0;
    for (int X = 0; X < n; ++X)
        for (int Y = X + 1; Y < n; ++Y)
            for (int W = Y + 1; W < n; ++W, ++row_triple) {
                // cyclic pairs (X,Y;W), (Y,W;X), (W,X;Y) with (W,X) = -(X,W)
                const int pairs[3][3] = {{X, Y, W}, {Y, W, X}, {X, W, Y}};
                const double sign[3] = {1.0, 1.0, -1.0};
                for (int c = 0; c < 3; ++c) {
                    const int pidx = pair_index(n, pairs[c][0], pairs[c][1]);
                    for (int a = 0; a < d0; ++a)
                        for (const auto& term : alg.structure(alg.offset(0) + a, pairs[c][2]))
                            t.emplace_back(static_cast<long>(row_triple) * n + term.index, pidx * d0 + a,
                                           sign[c] * boost::rational_cast<double>(term.value));
                }
            }
    KeyedOperator op;
    op.M = from_triplets(static_cast<long>(triple_count(n)) * n, static_cast<long>(pair_count(n)) * d0, t);
    op.row_key = three_cochain_keys(alg, keys);
    op.col_key = two_cochain_keys(alg, 0, keys);
    return op;
}

KeyedOperator adz_operator(const GradedLieAlgebra& alg, WeightKeys& keys) {
    const int n = alg.n_minus;
    std::vector<Trip> t;
    for (int z = 0; z < alg.n_plus; ++z)
        for (int X = 0; X < n; ++X)
            for (const auto& term : alg.structure(alg.offset(1) + z, X))
                t.emplace_back(static_cast<long>(X) * alg.n0 + local(alg, term.index), z,
                               boost::rational_cast<double>(term.value));
    KeyedOperator op;
    op.M = from_triplets(static_cast<long>(n) * alg.n0, alg.n_plus, t);
    op.row_key = one_cochain_keys(alg, 0, keys);
    op.col_key.resize(alg.n_plus);
    for (int z = 0; z < alg.n_plus; ++z) op.col_key[z] = keys.key(alg.weights[alg.offset(1) + z]);
    return op;
}

// ---------------------------------------------------------------------------

nlohmann::json ComplementarityReport::to_json() const {
    return {{"grade", grade},
            {"total", total},
            {"dim_im_d", dim_im_d},
            {"dim_ker_dstar", dim_ker_dstar},
            {"intersection_dim", intersection_dim},
            {"complementary", complementary}};
}

ComplementarityReport complementarity_check(const GradedLieAlgebra& alg, int grade) {
    WeightKeys keys;
    KeyedOperator d = d_operator(alg, grade, keys);
    KeyedOperator ds = dstar_operator(alg, grade - 1, keys);
    ComplementarityReport rep;
    rep.grade = grade;
    rep.total = static_cast<int>(d.M.rows());
    const int rd = d.rank();
    const int rds = ds.rank();
    const int rdsd = product(ds, d).rank();
    rep.dim_im_d = rd;
    rep.dim_ker_dstar = rep.total - rds;
    // im d ∩ ker d* = d(ker d*d) modulo ker d
    rep.intersection_dim = rd - rdsd;
    rep.complementary = rep.intersection_dim == 0 && rep.dim_im_d + rep.dim_ker_dstar == rep.total;
    return rep;
}

int cohomology_dim(const GradedLieAlgebra& alg, CohomologyLevel level) {
    WeightKeys keys;
    if (level == CohomologyLevel::H11) {
        KeyedOperator d = d_operator(alg, 0, keys);
        const int ker = static_cast<int>(d.M.cols()) - d.rank();
        return ker - adz_operator(alg, keys).rank();
    }
    KeyedOperator d = d_operator(alg, 1, keys);
    return static_cast<int>(d.M.cols()) - d.rank();
}

nlohmann::json cohomology_report(const GradedLieAlgebra& alg) {
    ComplementarityReport c0 = complementarity_check(alg, 0);
    ComplementarityReport c1 = complementarity_check(alg, 1);
    return {{"kind", alg.kind.name()},
            {"params", alg.kind.params_json()},
            {"H11", cohomology_dim(alg, CohomologyLevel::H11)},
            {"H21", cohomology_dim(alg, CohomologyLevel::H21)},
            {"complementarity", c0.complementary && c1.complementary},
            {"levels", {c0.to_json(), c1.to_json()}}};
}

HarmonicDecomposition harmonic_decompose(const GradedLieAlgebra& alg, const TwoCochain& t) {
    t.check(alg);
    if (t.grade != -1 && t.grade != 0) throw ValidationError("harmonic_decompose: value grade must be -1 or 0");
    WeightKeys keys;
    KeyedOperator d = d_operator(alg, t.grade + 1, keys);
    KeyedOperator ds = dstar_operator(alg, t.grade, keys);
    KeyedOperator A = product(ds, d);
    Eigen::VectorXd rhs = ds.M * t.packed();
    Eigen::VectorXd x = A.min_norm_solve(rhs);
    HarmonicDecomposition out{t, OneCochain::from_vector(alg, t.grade + 1, x)};
    out.harmonic = t - TwoCochain::from_packed(alg, t.grade, d.M * x);
    return out;
}

}  // namespace ahs
