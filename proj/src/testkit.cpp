#include "ahs/testkit.hpp"

#include "ahs/errors.hpp"
#include "ahs/spencer.hpp"

namespace ahs {

double Rng::uniform() {
    // 53 random mantissa bits -> [0,1) -> [-1,1)
    const double u = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    return 2.0 * u - 1.0;
}

Eigen::VectorXd Rng::vector(int n) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = uniform();
    return v;
}

Eigen::MatrixXd Rng::matrix(int rows, int cols) {
    Eigen::MatrixXd M(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) M(r, c) = uniform();
    return M;
}

Rng Rng::fork(std::uint64_t salt) {
    std::seed_seq seq{static_cast<std::uint32_t>(eng_()), static_cast<std::uint32_t>(salt),
                      static_cast<std::uint32_t>(salt >> 32)};
    std::uint32_t w[2];
    seq.generate(w, w + 2);
    return Rng((static_cast<std::uint64_t>(w[0]) << 32) | w[1]);
}

Symmetry parse_symmetry(const std::string& name) {
    if (name == "riemann-symmetric") return Symmetry::riemann_symmetric;
    if (name == "bianchi") return Symmetry::bianchi;
    if (name == "harmonic") return Symmetry::harmonic;
    if (name == "deformation-image") return Symmetry::deformation_image;
    if (name == "arbitrary-alternating") return Symmetry::arbitrary_alternating;
    throw ValidationError("unknown symmetry flag '" + name + "'");
}

std::string to_string(Symmetry s) {
    switch (s) {
        case Symmetry::riemann_symmetric: return "riemann-symmetric";
        case Symmetry::bianchi: return "bianchi";
        case Symmetry::harmonic: return "harmonic";
        case Symmetry::deformation_image: return "deformation-image";
        case Symmetry::arbitrary_alternating: return "arbitrary-alternating";
    }
    return "?";
}

nlohmann::json SampleSpec::to_json() const {
    return {{"kind", kind.name()}, {"params", kind.params_json()}, {"seed", seed}, {"count", count},
            {"symmetry", ahs::to_string(symmetry)}};
}

SampleSpec SampleSpec::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw ValidationError("sample spec needs a string 'kind'");
    const nlohmann::json params = j.value("params", nlohmann::json::object());
    SampleSpec s;
    s.kind = StructureKind::parse(j["kind"].get<std::string>(), params.value("m", 0), params.value("p", 0),
                                  params.value("q", 0));
    s.seed = j.value("seed", std::uint64_t{42});
    s.count = j.value("count", 1);
    s.symmetry = parse_symmetry(j.value("symmetry", std::string("arbitrary-alternating")));
    if (s.count < 0) throw ValidationError("sample count must be non-negative");
    return s;
}

// ---------------------------------------------------------------------------

RawCurvature random_riemann(int m, bool metric, Rng& rng) {
    Tensor4 A(m);
    for (double& x : A.v) x = rng.uniform();
    Tensor4 B(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) {
                    if (metric) {
                        auto anti = [&](int a, int b, int c, int d) {
                            return A(a, b, c, d) - A(b, a, c, d) - A(a, b, d, c) + A(b, a, d, c);
                        };
                        B(i, j, k, l) = anti(i, j, k, l) + anti(k, l, i, j);
                    } else {
                        B(i, j, k, l) = A(i, j, k, l) - A(i, j, l, k);
                    }
                }
    RawCurvature out{Tensor4(m)};
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l)
                    out.R(i, j, k, l) = B(i, j, k, l) - (B(i, j, k, l) + B(i, k, l, j) + B(i, l, j, k)) / 3.0;
    return out;
}

HarmonicSampler::HarmonicSampler(const GradedLieAlgebra& alg, int grade) : alg_(&alg), grade_(grade) {
    if (grade != -1 && grade != 0) throw ValidationError("HarmonicSampler: grade must be -1 or 0");
    WeightKeys keys;
    KeyedOperator op = dstar_operator(alg, grade, keys);
    if (grade == 0) op = stack(op, d2_operator(alg, keys));
    blocks_ = op.nullspace();
    for (const auto& b : blocks_) dim_ += static_cast<int>(b.second.cols());
}

TwoCochain HarmonicSampler::sample(Rng& rng) const {
    const int d = alg_->grade_dim(grade_);
    Eigen::VectorXd packed = Eigen::VectorXd::Zero(static_cast<long>(pair_count(alg_->n_minus)) * d);
    for (const auto& [cols, N] : blocks_) {
        Eigen::VectorXd x = N * rng.vector(static_cast<int>(N.cols()));
        for (size_t i = 0; i < cols.size(); ++i) packed(cols[i]) = x(static_cast<long>(i));
    }
    return TwoCochain::from_packed(*alg_, grade_, packed);
}

DeformationTensor random_gamma(const GradedLieAlgebra& alg, Rng& rng) {
    return {OneCochain{1, rng.matrix(alg.n_minus, alg.n_plus)}};
}

DeformationTensor random_symmetric_gamma(const GradedLieAlgebra& alg, Rng& rng) {
    const Kind k = alg.kind.kind;
    if (k == Kind::lagrangian || k == Kind::spinorial) {
        const int m = alg.kind.m;
        const double s = k == Kind::lagrangian ? 1.0 : -1.0;
        Tensor4 A(m);
        for (double& x : A.v) x = rng.uniform();
        Tensor4 G(m);
        for (int p = 0; p < m; ++p)
            for (int q = 0; q < m; ++q)
                for (int a = 0; a < m; ++a)
                    for (int b = 0; b < m; ++b) {
                        auto sym = [&](int w, int x, int y, int z) {
                            return A(w, x, y, z) + s * A(x, w, y, z) + s * A(w, x, z, y) + A(x, w, z, y);
                        };
                        G(p, q, a, b) = sym(p, q, a, b) + sym(a, b, p, q);
                    }
        return gamma_from_pair_form(alg, G);
    }
    Eigen::MatrixXd M = rng.matrix(alg.n_minus, alg.n_plus);
    return {OneCochain{1, M + M.transpose()}};
}

TwoCochain random_alternating(const GradedLieAlgebra& alg, int grade, Rng& rng) {
    const int d = alg.grade_dim(grade);
    return TwoCochain::from_packed(alg, grade, rng.vector(pair_count(alg.n_minus) * d));
}

CurvatureData random_curvature(const GradedLieAlgebra& alg, Symmetry sym, Rng& rng) {
    CurvatureData out{TwoCochain::zero(alg, -1), TwoCochain::zero(alg, 0), std::nullopt, false};
    switch (sym) {
        case Symmetry::riemann_symmetric:
        case Symmetry::bianchi: {
            const Kind k = alg.kind.kind;
            if (k != Kind::conformal && k != Kind::projective)
                throw ValidationError(to_string(sym) + " samples exist only for conformal and projective kinds");
            if (sym == Symmetry::bianchi && k == Kind::conformal)
                throw ValidationError("conformal curvature needs the metric symmetries");
            RawCurvature R = random_riemann(alg.n_minus, sym == Symmetry::riemann_symmetric, rng);
            out.kappa0 = kappa0_from_raw(alg, R);
            out.raw = R;
            out.torsion_free = true;
            break;
        }
        case Symmetry::harmonic:
            out.kappa0 = HarmonicSampler(alg, 0).sample(rng);
            break;
        case Symmetry::deformation_image:
            out.kappa0 = deformation_delta_kappa0(alg, random_gamma(alg, rng));
            break;
        case Symmetry::arbitrary_alternating:
            out.kappa0 = random_alternating(alg, 0, rng);
            break;
    }
    return out;
}

std::vector<CurvatureData> random_curvature(const SampleSpec& spec) {
    spec.kind.check_constructible();
    GradedLieAlgebra alg = build_algebra(spec.kind);
    Rng rng(spec.seed);
    std::vector<CurvatureData> out;
    out.reserve(spec.count);
    for (int i = 0; i < spec.count; ++i) out.push_back(random_curvature(alg, spec.symmetry, rng));
    return out;
}

RoundTrip random_round_trip(const GradedLieAlgebra& alg, const HarmonicSampler& harmonic, Rng& rng,
                            bool symmetric_gamma) {
    RoundTrip rt{symmetric_gamma ? random_symmetric_gamma(alg, rng) : random_gamma(alg, rng), TwoCochain{}};
    rt.kappa0 = deformation_delta_kappa0(alg, rt.gamma_true) + harmonic.sample(rng);
    return rt;
}

Eigen::MatrixXd brute_force_trace_map(const GradedLieAlgebra& alg) {
    const int n = alg.n_minus;
    const int cols = n * alg.n_plus;
    Eigen::MatrixXd A(n * n, cols);
    for (int c = 0; c < cols; ++c) {
        OneCochain g = OneCochain::zero(alg, 1);
        g.c(c / alg.n_plus, c % alg.n_plus) = 1.0;
        Eigen::MatrixXd T = trace_kappa0(alg, -1.0 * spencer_d(alg, g));
        for (int X = 0; X < n; ++X)
            for (int Y = 0; Y < n; ++Y) A(X * n + Y, c) = T(X, Y);
    }
    return A;
}

}  // namespace ahs
