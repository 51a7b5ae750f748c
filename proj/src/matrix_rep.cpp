// Block-matrix realizations used only to validate the hard-coded tables.
#include "ahs/graded_algebra.hpp"

#include <sstream>

namespace ahs {

namespace {

using SparseQ = std::map<std::pair<int, int>, Q>;

void put(SparseQ& M, int r, int c, const Q& v) {
    if (is_zero(v)) return;
    Q& s = M[{r, c}];
    s += v;
    if (is_zero(s)) M.erase({r, c});
}

SparseQ mul(const SparseQ& A, const SparseQ& B) {
    SparseQ out;
    for (const auto& [ab, x] : A)
        for (auto it = B.lower_bound({ab.second, -1}); it != B.end() && it->first.first == ab.second; ++it)
            put(out, ab.first, it->first.second, x * it->second);
    return out;
}

SparseQ commutator(const SparseQ& A, const SparseQ& B) {
    SparseQ out = mul(A, B);
    for (const auto& [rc, v] : mul(B, A)) put(out, rc.first, rc.second, -v);
    return out;
}

Q trace_of(const SparseQ& A) {
    Q t(0);
    for (const auto& [rc, v] : A)
        if (rc.first == rc.second) t += v;
    return t;
}

struct Realization {
    int size = 0;
    std::vector<SparseQ> basis;  // full basis order
};

Realization realize(const GradedLieAlgebra& alg) {
    Realization R;
    const StructureKind& k = alg.kind;
    if (k.kind == Kind::grassmannian || k.kind == Kind::projective) {
        const int p = k.kind == Kind::projective ? 1 : k.p;
        const int q = k.q;
        const int n = p + q;
        R.size = n;
        // e^alpha_beta = E(beta, alpha); g0 made traceless
        auto E = [&](int alpha, int beta, bool traceless) {
            SparseQ M;
            put(M, beta, alpha, Q(1));
            if (traceless && alpha == beta)
                for (int g = 0; g < n; ++g) put(M, g, g, Q(-1, n));
            return M;
        };
        for (int a = 0; a < p; ++a)
            for (int i = 0; i < q; ++i) R.basis.push_back(E(a, p + i, false));
        for (int a = 0; a < p; ++a)
            for (int b = 0; b < p; ++b) R.basis.push_back(E(a, b, true));
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j)
                if (!(i == q - 1 && j == q - 1)) R.basis.push_back(E(p + i, p + j, true));
        for (int a = 0; a < p; ++a)
            for (int i = 0; i < q; ++i) R.basis.push_back(E(p + i, a, false));
    } else if (k.kind == Kind::conformal) {
        const int m = k.m;
        const int inf = m + 1;
        R.size = m + 2;
        for (int i = 0; i < m; ++i) {
            SparseQ M;
            put(M, 1 + i, 0, Q(1));
            put(M, inf, 1 + i, Q(-1));
            R.basis.push_back(M);
        }
        SparseQ Eg;
        put(Eg, 0, 0, Q(1));
        put(Eg, inf, inf, Q(-1));
        R.basis.push_back(Eg);
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b) {
                SparseQ M;
                put(M, 1 + a, 1 + b, Q(1));
                put(M, 1 + b, 1 + a, Q(-1));
                R.basis.push_back(M);
            }
        for (int i = 0; i < m; ++i) {  // g1 basis carries an overall sign flip
            SparseQ M;
            put(M, 0, 1 + i, Q(-1));
            put(M, 1 + i, inf, Q(1));
            R.basis.push_back(M);
        }
    } else {
        const bool lag = k.kind == Kind::lagrangian;
        const int m = k.m;
        R.size = 2 * m;
        const Q half(1, 2);
        auto S = [&](int a, int b, int roff, int coff) {
            SparseQ M;
            put(M, roff + a, coff + b, half);
            put(M, roff + b, coff + a, lag ? half : -half);
            return M;
        };
        for (int a = 0; a < m; ++a)
            for (int b = lag ? a : a + 1; b < m; ++b) R.basis.push_back(S(a, b, m, 0));
        for (int p = 0; p < m; ++p)
            for (int w = 0; w < m; ++w) {  // A = -E_pw, lower block -A^T
                SparseQ M;
                put(M, p, w, Q(-1));
                put(M, m + w, m + p, Q(1));
                R.basis.push_back(M);
            }
        for (int a = 0; a < m; ++a)
            for (int b = lag ? a : a + 1; b < m; ++b) R.basis.push_back(S(a, b, 0, m));
    }
    return R;
}

}  // namespace

CrossCheckReport cross_check_matrix_rep(const GradedLieAlgebra& alg) {
    CrossCheckReport rep;
    Realization R = realize(alg);
    rep.matrix_size = R.size;
    const int N = alg.dim();

    auto table_matrix = [&](int i, int j) {
        SparseQ M;
        for (const auto& t : alg.structure(i, j))
            for (const auto& [rc, v] : R.basis[t.index]) put(M, rc.first, rc.second, t.value * v);
        return M;
    };

    // fit the single scalar on g1 x g-1 from the first nonzero commutator
    bool fitted = false;
    for (int z = alg.offset(1); z < N && !fitted; ++z)
        for (int x = 0; x < alg.n_minus && !fitted; ++x) {
            SparseQ C = commutator(R.basis[z], R.basis[x]);
            SparseQ T = table_matrix(z, x);
            for (const auto& [rc, v] : T) {
                auto it = C.find(rc);
                if (it != C.end()) {
                    rep.bracket_scalar = it->second / v;
                    fitted = true;
                }
                break;
            }
        }

    rep.ok = true;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            SparseQ C = commutator(R.basis[i], R.basis[j]);
            SparseQ T = table_matrix(i, j);
            int gi = alg.grade_of(i), gj = alg.grade_of(j);
            Q s = (gi + gj == 0 && gi != 0) ? rep.bracket_scalar : Q(1);
            for (const auto& [rc, v] : T) put(C, rc.first, rc.second, -s * v);
            double worst = 0.0;
            for (const auto& [rc, v] : C) worst = std::max(worst, std::abs(boost::rational_cast<double>(v)));
            if (worst > rep.max_discrepancy) rep.max_discrepancy = worst;
            if (!C.empty() && rep.offending.empty()) {
                rep.ok = false;
                rep.offending = "[" + alg.label(i) + ", " + alg.label(j) + "]";
            }
        }

    // pairing proportional to the trace form
    bool have = false;
    for (int x = 0; x < alg.n_minus; ++x)
        for (int z = 0; z < alg.n_plus; ++z) {
            Q tr = trace_of(mul(R.basis[x], R.basis[alg.offset(1) + z]));
            const Q& d = alg.pairing[x][z];
            if (!have && !is_zero(tr)) {
                rep.pairing_scalar = d / tr;
                have = true;
            }
            if (d != rep.pairing_scalar * tr) {
                rep.ok = false;
                if (rep.offending.empty()) rep.offending = "pairing <" + alg.labels_minus[x] + ", " + alg.labels_plus[z] + ">";
            }
        }
    return rep;
}

}  // namespace ahs
