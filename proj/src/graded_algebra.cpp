#include "ahs/graded_algebra.hpp"

#include "ahs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ahs {

// ---------------------------------------------------------------------------
// StructureKind
// ---------------------------------------------------------------------------

StructureKind StructureKind::conformal(int m) { return {Kind::conformal, m, 0, 0}; }
StructureKind StructureKind::grassmannian(int p, int q) { return {Kind::grassmannian, 0, p, q}; }
StructureKind StructureKind::projective(int q) { return {Kind::projective, 0, 0, q}; }
StructureKind StructureKind::lagrangian(int m) { return {Kind::lagrangian, m, 0, 0}; }
StructureKind StructureKind::spinorial(int m) { return {Kind::spinorial, m, 0, 0}; }

StructureKind StructureKind::parse(const std::string& name, int m, int p, int q) {
    if (name == "conformal") return conformal(m);
    if (name == "grassmannian") return grassmannian(p, q);
    if (name == "projective") return projective(q);
    if (name == "lagrangian") return lagrangian(m);
    if (name == "spinorial") return spinorial(m);
    throw ValidationError("unknown kind '" + name +
                          "' (expected conformal|grassmannian|projective|lagrangian|spinorial)");
}

std::string StructureKind::name() const {
    switch (kind) {
        case Kind::conformal: return "conformal";
        case Kind::grassmannian: return "grassmannian";
        case Kind::projective: return "projective";
        case Kind::lagrangian: return "lagrangian";
        case Kind::spinorial: return "spinorial";
    }
    return "?";
}

std::string StructureKind::label() const {
    std::ostringstream os;
    os << name() << "(";
    if (kind == Kind::grassmannian)
        os << p << "," << q;
    else if (kind == Kind::projective)
        os << q;
    else
        os << m;
    os << ")";
    return os.str();
}

nlohmann::json StructureKind::params_json() const {
    if (kind == Kind::grassmannian) return {{"p", p}, {"q", q}};
    if (kind == Kind::projective) return {{"q", q}};
    return {{"m", m}};
}

void StructureKind::check_constructible() const {
    switch (kind) {
        case Kind::grassmannian:
            if (p < 1 || q < 1) throw ValidationError("grassmannian needs p >= 1 and q >= 1");
            if (p > q) throw ValidationError("grassmannian needs p <= q");
            break;
        case Kind::projective:
            if (q < 1) throw ValidationError("projective needs q >= 1");
            break;
        case Kind::conformal:
        case Kind::lagrangian:
            if (m < 1) throw ValidationError(name() + " needs m >= 1");
            break;
        case Kind::spinorial:
            if (m < 2) throw ValidationError("spinorial needs m >= 2");
            break;
    }
    if (p > 12 || q > 12 || m > 12) throw ValidationError("parameters above 12 are not supported");
}

bool StructureKind::normalizable() const {
    switch (kind) {
        case Kind::grassmannian: return q >= p && p >= 1 && p + q >= 3;
        case Kind::projective: return q > 1;
        case Kind::conformal: return m >= 3;
        case Kind::lagrangian: return m >= 2;  // dim g-1 = m(m+1)/2 > 2
        case Kind::spinorial: return m >= 3;   // dim g-1 = m(m-1)/2 > 2
    }
    return false;
}

bool StructureKind::projective_type() const {
    switch (kind) {
        case Kind::projective: return q >= 2;
        case Kind::grassmannian: return p == 1 && q >= 2;
        case Kind::spinorial: return m == 3;  // so(3,3) = sl(4), g-1 of dim 3
        default: return false;
    }
}

// ---------------------------------------------------------------------------
// helpers
// ---------------------------------------------------------------------------

std::string to_string(const Q& v) {
    std::ostringstream os;
    os << v.numerator();
    if (v.denominator() != 1) os << "/" << v.denominator();
    return os.str();
}

namespace {

using Coeffs = std::map<int, Q>;

void add(Coeffs& c, int k, const Q& v) {
    if (k < 0 || is_zero(v)) return;
    Q& slot = c[k];
    slot += v;
    if (is_zero(slot)) c.erase(k);
}

int delta(int a, int b) { return a == b ? 1 : 0; }

std::vector<std::pair<int, int>> pairs_of(int m, bool symmetric) {
    std::vector<std::pair<int, int>> out;
    for (int k = 0; k < m; ++k)
        for (int l = symmetric ? k : k + 1; l < m; ++l) out.emplace_back(k, l);
    return out;
}

// Basis bookkeeping for the two pair-indexed kinds.
struct PairIndex {
    int m = 0;
    bool symmetric = true;
    std::vector<std::vector<int>> idx;

    PairIndex(int m_, bool sym) : m(m_), symmetric(sym), idx(m_, std::vector<int>(m_, -1)) {
        int c = 0;
        for (auto [k, l] : pairs_of(m, sym)) idx[k][l] = c++;
    }
    // coefficient and basis index of the product e_k.e_l (or e_k^e_l)
    std::pair<int, int> of(int k, int l) const {
        if (symmetric) return {1, idx[std::min(k, l)][std::max(k, l)]};
        if (k == l) return {0, -1};
        return {k < l ? 1 : -1, idx[std::min(k, l)][std::max(k, l)]};
    }
};

// --- Grassmannian / projective: gl(p+q) pair labels e^alpha_beta -------------

struct GlLayout {
    int p, q, n;
    std::map<std::pair<int, int>, int> index;  // (alpha,beta) -> full basis index
    int dropped;                               // alpha = beta = n-1 is expressed via the identity

    GlLayout(int p_, int q_) : p(p_), q(q_), n(p_ + q_), dropped(p_ + q_ - 1) {
        int c = 0;
        for (int a = 0; a < p; ++a)
            for (int i = 0; i < q; ++i) index[{a, p + i}] = c++;  // g-1: e^a_i
        for (int a = 0; a < p; ++a)
            for (int b = 0; b < p; ++b) index[{a, b}] = c++;  // g0: e^a_b
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j)
                if (!(i == q - 1 && j == q - 1)) index[{p + i, p + j}] = c++;  // g0: e^i_j
        for (int a = 0; a < p; ++a)
            for (int i = 0; i < q; ++i) index[{p + i, a}] = c++;  // g1: e^i_a
    }

    // add v * e^alpha_beta, reducing modulo the identity
    void put(Coeffs& c, int alpha, int beta, const Q& v) const {
        if (alpha == dropped && beta == dropped) {
            for (int g = 0; g + 1 < n; ++g) add(c, index.at({g, g}), -v);
            return;
        }
        add(c, index.at({alpha, beta}), v);
    }
};

void build_gl(GradedLieAlgebra& alg, int p, int q, bool projective_labels) {
    GlLayout L(p, q);
    const int N = static_cast<int>(L.index.size());
    std::vector<std::pair<int, int>> lab(N);
    for (auto& [ab, k] : L.index) lab[k] = ab;
    alg.n_minus = p * q;
    alg.n_plus = p * q;
    alg.n0 = N - 2 * p * q;

    auto name = [&](int g) {
        std::ostringstream os;
        if (g < p)
            os << "a" << g + 1;
        else
            os << "i" << g - p + 1;
        return os.str();
    };
    for (int k = 0; k < N; ++k) {
        auto [al, be] = lab[k];
        std::string s;
        int gr = alg.grade_of(k);
        if (projective_labels && gr == -1)
            s = "e_" + std::to_string(be - p + 1);
        else if (projective_labels && gr == 1)
            s = "e^" + std::to_string(al - p + 1);
        else
            s = "e^" + name(al) + "_" + name(be);
        (gr < 0 ? alg.labels_minus : gr == 0 ? alg.labels0 : alg.labels_plus).push_back(s);
    }

    alg.table.assign(N * N, {});
    for (int x = 0; x < N; ++x) {
        for (int y = 0; y < N; ++y) {
            auto [a, b] = lab[x];
            auto [c, d] = lab[y];
            // [e^a_b, e^c_d] = delta^a_d e^c_b - delta^c_b e^a_d
            Coeffs out;
            if (a == d) L.put(out, c, b, Q(1));
            if (c == b) L.put(out, a, d, Q(-1));
            for (auto& [k, v] : out) alg.table[x * N + y].push_back({k, v});
        }
    }
    alg.pairing.assign(alg.n_minus, std::vector<Q>(alg.n_plus, Q(0)));
    for (int i = 0; i < alg.n_minus; ++i) alg.pairing[i][i] = Q(1);
}

// --- conformal: so(m+1,1) -----------------------------------------------------

void build_conformal(GradedLieAlgebra& alg, int m) {
    auto J = pairs_of(m, false);
    PairIndex Jx(m, false);
    alg.n_minus = m;
    alg.n_plus = m;
    alg.n0 = 1 + static_cast<int>(J.size());
    const int N = alg.dim();
    const int E = m;  // grading element
    auto X = [&](int i) { return i; };
    auto Z = [&](int i) { return m + alg.n0 + i; };
    auto Jidx = [&](int a, int b) -> std::pair<int, int> {  // J_ab = sign * basis
        auto [s, k] = Jx.of(a, b);
        return {s, k < 0 ? -1 : m + 1 + k};
    };

    for (int i = 0; i < m; ++i) alg.labels_minus.push_back("e_" + std::to_string(i + 1));
    alg.labels0.push_back("E");
    for (auto [a, b] : J) alg.labels0.push_back("J_" + std::to_string(a + 1) + "," + std::to_string(b + 1));
    for (int i = 0; i < m; ++i) alg.labels_plus.push_back("e^" + std::to_string(i + 1));

    std::vector<Coeffs> T(N * N);
    auto set_anti = [&](int x, int y, const Coeffs& c) {
        T[x * N + y] = c;
        Coeffs neg;
        for (auto& [k, v] : c) neg[k] = -v;
        T[y * N + x] = neg;
    };
    // [E, X] = -X, [E, Z] = Z
    for (int i = 0; i < m; ++i) {
        set_anti(E, X(i), {{X(i), Q(-1)}});
        set_anti(E, Z(i), {{Z(i), Q(1)}});
    }
    // [J_ab, X_j] = delta_bj X_a - delta_aj X_b, same on Z
    for (auto [a, b] : J) {
        int jab = Jidx(a, b).second;
        for (int j = 0; j < m; ++j) {
            Coeffs cx, cz;
            if (b == j) {
                add(cx, X(a), Q(1));
                add(cz, Z(a), Q(1));
            }
            if (a == j) {
                add(cx, X(b), Q(-1));
                add(cz, Z(b), Q(-1));
            }
            set_anti(jab, X(j), cx);
            set_anti(jab, Z(j), cz);
        }
    }
    // [J_ab, J_cd] = d_bc J_ad - d_ac J_bd - d_bd J_ac + d_ad J_bc
    for (auto [a, b] : J) {
        for (auto [c, d] : J) {
            Coeffs out;
            auto put = [&](int coef, int u, int v) {
                if (coef == 0) return;
                auto [s, k] = Jidx(u, v);
                if (k >= 0) add(out, k, Q(coef * s));
            };
            put(delta(b, c), a, d);
            put(-delta(a, c), b, d);
            put(-delta(b, d), a, c);
            put(delta(a, d), b, c);
            T[Jidx(a, b).second * N + Jidx(c, d).second] = out;
        }
    }
    // [Z_i, X_j] = -delta_ij E - J_ij
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            Coeffs out;
            if (i == j) add(out, E, Q(-1));
            auto [s, k] = Jidx(i, j);
            if (k >= 0) add(out, k, Q(-s));
            set_anti(Z(i), X(j), out);
        }
    }
    alg.table.assign(N * N, {});
    for (int k = 0; k < N * N; ++k)
        for (auto& [i, v] : T[k]) alg.table[k].push_back({i, v});
    alg.pairing.assign(m, std::vector<Q>(m, Q(0)));
    for (int i = 0; i < m; ++i) alg.pairing[i][i] = Q(1);
}

// --- lagrangian (sp(2m)) and spinorial (so(m,m)) ----------------------------

void build_pairs(GradedLieAlgebra& alg, int m, bool lag) {
    PairIndex P(m, lag);
    const int n1 = static_cast<int>(pairs_of(m, lag).size());
    alg.n_minus = n1;
    alg.n_plus = n1;
    alg.n0 = m * m;
    const int N = alg.dim();
    const std::string op = lag ? "⊙" : "∧";
    for (auto [k, l] : pairs_of(m, lag))
        alg.labels_minus.push_back("e_" + std::to_string(k + 1) + op + "e_" + std::to_string(l + 1));
    for (int p = 0; p < m; ++p)
        for (int w = 0; w < m; ++w)
            alg.labels0.push_back("e^" + std::to_string(p + 1) + "_" + std::to_string(w + 1));
    for (auto [s, t] : pairs_of(m, lag))
        alg.labels_plus.push_back("e^" + std::to_string(s + 1) + op + "e^" + std::to_string(t + 1));

    auto G0 = [&](int p, int w) { return n1 + p * m + w; };
    auto Gm = [&](int k, int l, Coeffs& c, const Q& v) {
        auto [s, idx] = P.of(k, l);
        if (s != 0) add(c, idx, v * Q(s));
    };
    auto Gp = [&](int k, int l, Coeffs& c, const Q& v) {
        auto [s, idx] = P.of(k, l);
        if (s != 0) add(c, n1 + m * m + idx, v * Q(s));
    };

    std::vector<Coeffs> T(N * N);
    auto set_anti = [&](int x, int y, const Coeffs& c) {
        T[x * N + y] = c;
        Coeffs neg;
        for (auto& [k, v] : c) neg[k] = -v;
        T[y * N + x] = neg;
    };
    const auto prs = pairs_of(m, lag);
    // g1 x g-1 -> g0
    for (int zi = 0; zi < n1; ++zi) {
        auto [s, t] = prs[zi];
        for (int xi = 0; xi < n1; ++xi) {
            auto [k, l] = prs[xi];
            Coeffs out;
            const Q f(1, 4);
            if (lag) {
                // -1/4 (d^s_k e^t_l + d^s_l e^t_k + d^t_k e^s_l + d^t_l e^s_k)
                if (s == k) add(out, G0(t, l), -f);
                if (s == l) add(out, G0(t, k), -f);
                if (t == k) add(out, G0(s, l), -f);
                if (t == l) add(out, G0(s, k), -f);
            } else {
                // 1/4 (-d^s_l e^t_k + d^t_l e^s_k + d^s_k e^t_l - d^t_k e^s_l)
                if (s == l) add(out, G0(t, k), -f);
                if (t == l) add(out, G0(s, k), f);
                if (s == k) add(out, G0(t, l), f);
                if (t == k) add(out, G0(s, l), -f);
            }
            set_anti(n1 + m * m + zi, xi, out);
        }
    }
    // g1 x g0 -> g1
    for (int zi = 0; zi < n1; ++zi) {
        auto [s, t] = prs[zi];
        for (int p = 0; p < m; ++p) {
            for (int w = 0; w < m; ++w) {
                Coeffs out;
                if (lag) {
                    // d^t_w e^p.e^s + d^s_w e^p.e^t
                    if (t == w) Gp(p, s, out, Q(1));
                    if (s == w) Gp(p, t, out, Q(1));
                } else {
                    // d^t_w e^s^e^p - d^s_w e^t^e^p
                    if (t == w) Gp(s, p, out, Q(1));
                    if (s == w) Gp(t, p, out, Q(-1));
                }
                set_anti(n1 + m * m + zi, G0(p, w), out);
            }
        }
    }
    // g0 x g-1 -> g-1
    for (int p = 0; p < m; ++p) {
        for (int w = 0; w < m; ++w) {
            for (int xi = 0; xi < n1; ++xi) {
                auto [k, l] = prs[xi];
                Coeffs out;
                // d_pk e_w.e_l + d_pl e_k.e_w (e_w.e_k for the symmetric product)
                if (p == k) Gm(w, l, out, Q(1));
                if (p == l) Gm(k, w, out, Q(1));
                set_anti(G0(p, w), xi, out);
            }
        }
    }
    // g0 x g0: [e^p_w, e^x_y] = -d_wx e^p_y + d_yp e^x_w
    for (int p = 0; p < m; ++p)
        for (int w = 0; w < m; ++w)
            for (int x = 0; x < m; ++x)
                for (int y = 0; y < m; ++y) {
                    Coeffs out;
                    if (w == x) add(out, G0(p, y), Q(-1));
                    if (y == p) add(out, G0(x, w), Q(1));
                    T[G0(p, w) * N + G0(x, y)] = out;
                }

    alg.table.assign(N * N, {});
    for (int k = 0; k < N * N; ++k)
        for (auto& [i, v] : T[k]) alg.table[k].push_back({i, v});

    alg.pairing.assign(n1, std::vector<Q>(n1, Q(0)));
    for (int i = 0; i < n1; ++i) {
        auto [k, l] = prs[i];
        alg.pairing[i][i] = lag ? (k == l ? Q(1) : Q(1, 2)) : Q(1, 2);
    }
}

void finish(GradedLieAlgebra& alg) {
    const int N = alg.dim();
    const int n = alg.n_minus;
    alg.D = Eigen::MatrixXd(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) alg.D(i, j) = boost::rational_cast<double>(alg.pairing[i][j]);
    // <e_X, Z^i> = delta  =>  D W^T = I
    alg.dual = alg.D.inverse().transpose();

    alg.ad.assign(N, Eigen::MatrixXd::Zero(N, N));
    for (int k = 0; k < N; ++k)
        for (int c = 0; c < N; ++c)
            for (const auto& t : alg.structure(k, c)) alg.ad[k](t.index, c) = boost::rational_cast<double>(t.value);

    alg.cartan.clear();
    for (int h = alg.offset(0); h < alg.offset(1); ++h) {
        bool diag = true;
        for (int c = 0; c < N && diag; ++c) {
            const auto& s = alg.structure(h, c);
            if (s.size() > 1 || (s.size() == 1 && s[0].index != c)) diag = false;
        }
        if (diag) alg.cartan.push_back(h);
    }
    alg.weights.assign(N, std::vector<Q>(alg.cartan.size(), Q(0)));
    for (int c = 0; c < N; ++c)
        for (size_t a = 0; a < alg.cartan.size(); ++a) {
            const auto& s = alg.structure(alg.cartan[a], c);
            if (!s.empty()) alg.weights[c][a] = s[0].value;
        }
}

}  // namespace

// ---------------------------------------------------------------------------
// GradedLieAlgebra
// ---------------------------------------------------------------------------

Eigen::MatrixXd GradedLieAlgebra::ad_block(int k, int from) const {
    int to = from + grade_of(k);
    if (to < -1 || to > 1) return Eigen::MatrixXd::Zero(0, grade_dim(from));
    return ad[k].block(offset(to), offset(from), grade_dim(to), grade_dim(from));
}

Eigen::MatrixXd GradedLieAlgebra::dual_ad_block(int i, int from) const {
    int to = from + 1;
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(to <= 1 ? grade_dim(to) : 0, grade_dim(from));
    if (to > 1) return out;
    for (int j = 0; j < n_plus; ++j) {
        double w = dual(i, j);
        if (w != 0.0) out += w * ad[offset(1) + j].block(offset(to), offset(from), grade_dim(to), grade_dim(from));
    }
    return out;
}

std::string GradedLieAlgebra::label(int k) const {
    int g = grade_of(k);
    int i = k - offset(g);
    return g < 0 ? labels_minus[i] : g == 0 ? labels0[i] : labels_plus[i];
}

GradedLieAlgebra build_algebra(const StructureKind& kind) {
    kind.check_constructible();
    GradedLieAlgebra alg;
    alg.kind = kind;
    switch (kind.kind) {
        case Kind::grassmannian: build_gl(alg, kind.p, kind.q, false); break;
        case Kind::projective: build_gl(alg, 1, kind.q, true); break;
        case Kind::conformal: build_conformal(alg, kind.m); break;
        case Kind::lagrangian: build_pairs(alg, kind.m, true); break;
        case Kind::spinorial: build_pairs(alg, kind.m, false); break;
    }
    finish(alg);
    return alg;
}

void refresh_caches(GradedLieAlgebra& alg) { finish(alg); }

// ---------------------------------------------------------------------------
// GradedElement
// ---------------------------------------------------------------------------

GradedElement GradedElement::zero(const GradedLieAlgebra& alg) {
    return {Eigen::VectorXd::Zero(alg.n_minus), Eigen::VectorXd::Zero(alg.n0),
            Eigen::VectorXd::Zero(alg.n_plus)};
}

GradedElement GradedElement::from_full(const GradedLieAlgebra& alg, const Eigen::VectorXd& v) {
    if (v.size() != alg.dim()) throw ValidationError("element has wrong length");
    return {v.segment(0, alg.n_minus), v.segment(alg.offset(0), alg.n0),
            v.segment(alg.offset(1), alg.n_plus)};
}

GradedElement GradedElement::basis(const GradedLieAlgebra& alg, int k) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(alg.dim());
    v(k) = 1.0;
    return from_full(alg, v);
}

Eigen::VectorXd GradedElement::full() const {
    Eigen::VectorXd v(xm.size() + x0.size() + xp.size());
    v << xm, x0, xp;
    return v;
}

bool GradedElement::matches(const GradedLieAlgebra& alg) const {
    return xm.size() == alg.n_minus && x0.size() == alg.n0 && xp.size() == alg.n_plus;
}

// ---------------------------------------------------------------------------
// brackets
// ---------------------------------------------------------------------------

Eigen::VectorXd bracket_full(const GradedLieAlgebra& alg, const Eigen::VectorXd& x,
                             const Eigen::VectorXd& y) {
    const int N = alg.dim();
    if (x.size() != N || y.size() != N) throw ValidationError("bracket: dimension mismatch");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(N);
    for (int k = 0; k < N; ++k)
        if (x(k) != 0.0) out.noalias() += x(k) * (alg.ad[k] * y);
    return out;
}

GradedElement bracket(const GradedLieAlgebra& alg, const GradedElement& x, const GradedElement& y) {
    if (!x.matches(alg) || !y.matches(alg)) throw ValidationError("bracket: shape mismatch");
    return GradedElement::from_full(alg, bracket_full(alg, x.full(), y.full()));
}

std::vector<Q> bracket_exact(const GradedLieAlgebra& alg, const std::vector<Q>& x, const std::vector<Q>& y) {
    const int N = alg.dim();
    std::vector<Q> out(N, Q(0));
    for (int i = 0; i < N; ++i) {
        if (is_zero(x[i])) continue;
        for (int j = 0; j < N; ++j) {
            if (is_zero(y[j])) continue;
            for (const auto& t : alg.structure(i, j)) out[t.index] += x[i] * y[j] * t.value;
        }
    }
    return out;
}

std::vector<std::pair<int, Eigen::VectorXd>> dual_basis(const GradedLieAlgebra& alg) {
    std::vector<std::pair<int, Eigen::VectorXd>> out;
    for (int i = 0; i < alg.n_minus; ++i) out.emplace_back(i, alg.dual.row(i).transpose());
    return out;
}

GradedElement ad_exp(const GradedLieAlgebra& alg, const Eigen::VectorXd& Z, const GradedElement& x) {
    if (Z.size() != alg.n_plus || !x.matches(alg)) throw ValidationError("ad_exp: shape mismatch");
    Eigen::VectorXd z = Eigen::VectorXd::Zero(alg.dim());
    z.segment(alg.offset(1), alg.n_plus) = Z;
    Eigen::VectorXd v = x.full();
    Eigen::VectorXd zx = bracket_full(alg, z, v);
    Eigen::VectorXd zzx = bracket_full(alg, z, zx);
    return GradedElement::from_full(alg, v + zx + 0.5 * zzx);
}

// ---------------------------------------------------------------------------
// axioms
// ---------------------------------------------------------------------------

JacobiReport jacobi_check(const GradedLieAlgebra& alg) {
    const int N = alg.dim();
    JacobiReport r;
    std::vector<Q> acc(N, Q(0));
    auto add_double = [&](int a, int b, int c) {  // acc += [[b_a, b_b], b_c]
        for (const auto& t : alg.structure(a, b))
            for (const auto& u : alg.structure(t.index, c)) acc[u.index] += t.value * u.value;
    };
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j)
            for (int k = j + 1; k < N; ++k) {
                std::fill(acc.begin(), acc.end(), Q(0));
                add_double(i, j, k);
                add_double(j, k, i);
                add_double(k, i, j);
                ++r.triples;
                bool bad = std::any_of(acc.begin(), acc.end(), [](const Q& v) { return !is_zero(v); });
                if (bad) {
                    if (r.failures == 0)
                        r.first_failure = alg.label(i) + ", " + alg.label(j) + ", " + alg.label(k);
                    ++r.failures;
                }
            }
    return r;
}

int table_axiom_violations(const GradedLieAlgebra& alg) {
    const int N = alg.dim();
    int bad = 0;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            std::map<int, Q> a, b;
            for (const auto& t : alg.structure(i, j)) a[t.index] += t.value;
            for (const auto& t : alg.structure(j, i)) b[t.index] -= t.value;
            if (a != b) ++bad;
            int g = alg.grade_of(i) + alg.grade_of(j);
            for (const auto& t : alg.structure(i, j))
                if (g < -1 || g > 1 || alg.grade_of(t.index) != g) {
                    ++bad;
                    break;
                }
        }
    return bad;
}

int rank_exact(std::vector<std::vector<Q>> rows) {
    if (rows.empty()) return 0;
    const size_t cols = rows[0].size();
    int rank = 0;
    for (size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
        size_t piv = rank;
        while (piv < rows.size() && is_zero(rows[piv][c])) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        for (size_t r = rank + 1; r < rows.size(); ++r) {
            if (is_zero(rows[r][c])) continue;
            Q f = rows[r][c] / rows[rank][c];
            for (size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
        }
        ++rank;
    }
    return rank;
}

namespace {
// rows of the map (source basis in grade `src`) -> coordinates of [b, e] for e in grade `on`
std::vector<std::vector<Q>> action_rows(const GradedLieAlgebra& alg, int src, int on) {
    const int cols = alg.grade_dim(src);
    const int tgt = src + on;
    std::vector<std::vector<Q>> rows;
    for (int e = 0; e < alg.grade_dim(on); ++e) {
        std::vector<std::vector<Q>> block(alg.grade_dim(tgt), std::vector<Q>(cols, Q(0)));
        for (int a = 0; a < cols; ++a)
            for (const auto& t : alg.structure(alg.offset(src) + a, alg.offset(on) + e))
                block[t.index - alg.offset(tgt)][a] += t.value;
        for (auto& r : block)
            if (std::any_of(r.begin(), r.end(), [](const Q& v) { return !is_zero(v); })) rows.push_back(r);
    }
    if (rows.empty()) rows.push_back(std::vector<Q>(cols, Q(0)));
    return rows;
}
}  // namespace

int center_dimension(const GradedLieAlgebra& alg) {
    return alg.n0 - rank_exact(action_rows(alg, 0, 0));
}

int g0_action_rank(const GradedLieAlgebra& alg) { return rank_exact(action_rows(alg, 0, -1)); }

int g1_action_rank(const GradedLieAlgebra& alg) { return rank_exact(action_rows(alg, 1, -1)); }

// ---------------------------------------------------------------------------
// serialization
// ---------------------------------------------------------------------------

nlohmann::json sparse_triples(const GradedLieAlgebra& alg) {
    nlohmann::json arr = nlohmann::json::array();
    const int N = alg.dim();
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (const auto& t : alg.structure(i, j)) arr.push_back({i, j, t.index, to_string(t.value)});
    return arr;
}

nlohmann::json to_json(const GradedLieAlgebra& alg) {
    nlohmann::json j;
    j["kind"] = alg.kind.name();
    j["params"] = alg.kind.params_json();
    j["dims"] = {{"g_minus1", alg.n_minus}, {"g0", alg.n0}, {"g1", alg.n_plus}};
    j["basis"] = {{"g_minus1", alg.labels_minus}, {"g0", alg.labels0}, {"g1", alg.labels_plus}};
    nlohmann::json D = nlohmann::json::array();
    for (const auto& row : alg.pairing) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& v : row) r.push_back(to_string(v));
        D.push_back(r);
    }
    j["pairing"] = D;
    j["normalizable"] = alg.kind.normalizable();
    j["projective_type"] = alg.kind.projective_type();
    return j;
}

}  // namespace ahs
