// ahs: algebra inspection, cohomology, curvature normalization and the verification suite.
#include "ahs/errors.hpp"
#include "ahs/graded_algebra.hpp"
#include "ahs/normalization.hpp"
#include "ahs/spencer.hpp"
#include "ahs/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>

using nlohmann::json;

namespace {

struct RunConfig {
    std::string kind;
    std::optional<int> p, q, m;
    std::string input, output;
    std::uint64_t seed = 42;
    int samples = 50;
    double tolerance = 1e-9;
    std::string check;
    bool inject_fault = false;
};

ahs::StructureKind kind_of(const RunConfig& c) {
    if (c.kind.empty()) throw ahs::ValidationError("--kind is required");
    auto k = ahs::StructureKind::parse(c.kind, c.m.value_or(0), c.p.value_or(0), c.q.value_or(0));
    k.check_constructible();
    return k;
}

void emit(const RunConfig& c, const json& j) {
    const std::string text = j.dump(2) + "\n";
    if (c.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.output, std::ios::binary);
    if (!f) throw ahs::ValidationError("cannot write '" + c.output + "'");
    f << text;
}

json read_input(const std::string& path) {
    if (path.empty()) throw ahs::ValidationError("--input is required");
    std::ifstream f(path);
    if (!f) throw ahs::ValidationError("cannot read '" + path + "'");
    try {
        return json::parse(f);
    } catch (const json::exception& e) {
        throw ahs::ValidationError(std::string("malformed JSON: ") + e.what());
    }
}

int cmd_algebra_info(const RunConfig& c) {
    ahs::GradedLieAlgebra alg = ahs::build_algebra(kind_of(c));
    json j = ahs::to_json(alg);
    j["center_dim"] = ahs::center_dimension(alg);
    long long nnz = 0;
    for (const auto& e : alg.table) nnz += static_cast<long long>(e.size());
    j["structure_constants"] = {{"nonzero", nnz},
                                {"dense_size", static_cast<long long>(alg.dim()) * alg.dim() * alg.dim()},
                                {"triples", ahs::sparse_triples(alg)}};
    ahs::CrossCheckReport x = ahs::cross_check_matrix_rep(alg);
    j["matrix_cross_check"] = {{"ok", x.ok},
                               {"matrix_size", x.matrix_size},
                               {"bracket_scalar", ahs::to_string(x.bracket_scalar)},
                               {"pairing_scalar", ahs::to_string(x.pairing_scalar)},
                               {"max_discrepancy", x.max_discrepancy}};
    emit(c, j);
    return 0;
}

int cmd_cohomology(const RunConfig& c) {
    emit(c, ahs::cohomology_report(ahs::build_algebra(kind_of(c))));
    return 0;
}

ahs::StructureKind kind_from_document(const json& doc, const RunConfig& c) {
    if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string())
        throw ahs::ValidationError("input needs a string field 'kind'");
    const json params = doc.value("params", json::object());
    if (!params.is_object()) throw ahs::ValidationError("'params' must be an object");
    auto get = [&](const char* key, const std::optional<int>& flag) {
        if (params.contains(key)) {
            if (!params[key].is_number_integer()) throw ahs::ValidationError(std::string("params.") + key + " must be an integer");
            return params[key].get<int>();
        }
        return flag.value_or(0);
    };
    auto k = ahs::StructureKind::parse(doc["kind"].get<std::string>(), get("m", c.m), get("p", c.p), get("q", c.q));
    if (!c.kind.empty() && c.kind != k.name())
        throw ahs::ValidationError("--kind " + c.kind + " does not match the input kind " + k.name());
    k.check_constructible();
    return k;
}

ahs::TwoCochain dense_kappa0(const ahs::GradedLieAlgebra& alg, const json& a) {
    const int n = alg.n_minus, d = alg.n0;
    auto fail = [&] {
        throw ahs::ValidationError("kappa0 must be a " + std::to_string(n) + " x " + std::to_string(n) + " x " +
                                   std::to_string(d) + " numeric array");
    };
    ahs::TwoCochain k = ahs::TwoCochain::zero(alg, 0);
    if (!a.is_array() || static_cast<int>(a.size()) != n) fail();
    for (int X = 0; X < n; ++X) {
        if (!a[X].is_array() || static_cast<int>(a[X].size()) != n) fail();
        for (int Y = 0; Y < n; ++Y) {
            const json& v = a[X][Y];
            if (!v.is_array() || static_cast<int>(v.size()) != d) fail();
            for (int i = 0; i < d; ++i) {
                if (!v[i].is_number()) fail();
                k.c(X * n + Y, i) = v[i].get<double>();
            }
        }
    }
    return k;
}

json dense(const Eigen::MatrixXd& M) {
    json out = json::array();
    for (int r = 0; r < M.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < M.cols(); ++c) row.push_back(M(r, c));
        out.push_back(row);
    }
    return out;
}

int cmd_normalize(const RunConfig& c) {
    const json doc = read_input(c.input);
    const ahs::StructureKind kind = kind_from_document(doc, c);
    ahs::GradedLieAlgebra alg = ahs::build_algebra(kind);

    ahs::CurvatureData cd{ahs::TwoCochain::zero(alg, -1), ahs::TwoCochain{}, std::nullopt, false};
    if (doc.contains("raw")) {
        const json& raw = doc["raw"];
        if (!raw.is_object() || !raw.contains("R")) throw ahs::ValidationError("raw needs a field 'R'");
        ahs::RawCurvature R = ahs::RawCurvature::from_json(raw["R"], alg.n_minus);
        const double scale = std::max(1.0, R.R.max_abs_diff(ahs::Tensor4(R.dim())));
        if (raw.contains("Ricci")) {
            Eigen::MatrixXd ric = R.ricci();
            const json& given = raw["Ricci"];
            if (!given.is_array() || static_cast<int>(given.size()) != ric.rows())
                throw ahs::ValidationError("raw.Ricci has the wrong shape");
            for (int i = 0; i < ric.rows(); ++i)
                for (int k = 0; k < ric.cols(); ++k)
                    if (std::abs(given[i].at(k).get<double>() - ric(i, k)) > 1e-9 * scale)
                        throw ahs::ValidationError("raw.Ricci is inconsistent with R");
        }
        if (raw.contains("scalar") && std::abs(raw["scalar"].get<double>() - R.scalar()) > 1e-9 * scale)
            throw ahs::ValidationError("raw.scalar is inconsistent with R");
        cd.torsion_free = true;
        cd.kappa0 = ahs::kappa0_from_raw(alg, R);
        cd.raw = R;
    } else if (doc.contains("kappa0")) {
        cd.kappa0 = dense_kappa0(alg, doc["kappa0"]);
    } else {
        throw ahs::ValidationError("input needs 'kappa0' or 'raw'");
    }
    cd.validate(alg);

    ahs::DeformationTensor oracle = ahs::OracleSolver(alg).solve(cd.kappa0);
    ahs::DeformationTensor closed = ahs::closed_form_gamma(alg, cd);
    const double diff = (closed.gamma.c - oracle.gamma.c).cwiseAbs().maxCoeff();
    const bool agree = diff <= c.tolerance;
    const ahs::DeformationTensor& chosen = agree ? closed : oracle;

    json j;
    j["kind"] = kind.name();
    j["params"] = kind.params_json();
    j["convention"] = "kbar = k - delta(k)";
    j["index_order"] = "gamma[X][Z] = coefficient of e^Z in Gamma(e_X), g-1 and g1 basis order of algebra-info";
    j["method"] = agree ? "closed_form" : "oracle";
    j["gamma"] = dense(chosen.gamma.c);
    j["gamma_closed_form"] = dense(closed.gamma.c);
    j["gamma_oracle"] = dense(oracle.gamma.c);
    j["max_abs_diff"] = diff;
    j["residual_trace_norm"] = ahs::residual_trace_norm(alg, cd.kappa0, chosen);
    if (kind.kind == ahs::Kind::conformal || kind.kind == ahs::Kind::projective)
        j["gamma_matrix"] = dense(ahs::gamma_matrix_form(alg, chosen));
    if (kind.kind == ahs::Kind::grassmannian)
        j["g0_trace_signs"] = {{"gl_p_block", "-"}, {"gl_q_block", "+"}};
    if (kind.kind == ahs::Kind::spinorial) j["trace_order"] = "Tr[pq][kl] = Tr(e_k^e_l, e_q^e_p)";
    emit(c, j);
    return 0;
}

int cmd_verify(const RunConfig& c) {
    ahs::VerifyConfig v;
    v.seed = c.seed;
    v.samples = c.samples;
    v.tolerance = c.tolerance;
    v.check = c.check;
    v.inject_fault = c.inject_fault;
    if (c.p || c.q || c.m) {
        v.grid = {kind_of(c)};
    } else {
        v.grid = ahs::make_grid(3, 5, c.kind);
    }
    auto results = ahs::run_checks(v);
    emit(c, ahs::verify_report(v, results));
    return ahs::all_passed(results) ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graded Lie algebra curvature normalization toolkit"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto common = [&](CLI::App* s) {
        s->add_option("--kind", cfg.kind, "conformal|grassmannian|projective|lagrangian|spinorial");
        s->add_option("--p", cfg.p, "Grassmannian p");
        s->add_option("--q", cfg.q, "Grassmannian/projective q");
        s->add_option("--m", cfg.m, "conformal/lagrangian/spinorial m");
        s->add_option("--output", cfg.output, "write JSON here instead of stdout");
    };
    auto* info = app.add_subcommand("algebra-info", "dimensions, basis, structure constants");
    auto* coh = app.add_subcommand("cohomology", "H11, H21 and complementarity");
    auto* norm = app.add_subcommand("normalize", "deformation tensor of a curvature document");
    auto* ver = app.add_subcommand("verify", "run the invariant suite");
    for (auto* s : {info, coh, norm, ver}) common(s);
    norm->add_option("--input", cfg.input, "curvature JSON")->required();
    norm->add_option("--tolerance", cfg.tolerance, "closed form vs oracle agreement")->check(CLI::PositiveNumber);
    ver->add_option("--seed", cfg.seed, "sample seed");
    ver->add_option("--samples", cfg.samples, "samples per grid point")->check(CLI::PositiveNumber);
    ver->add_option("--tolerance", cfg.tolerance, "closed form vs oracle tolerance")->check(CLI::PositiveNumber);
    ver->add_option("--check", cfg.check, "single check or alias (h11, h21, jacobi)");
    ver->add_flag("--inject-fault", cfg.inject_fault, "flip the sign of one structure constant");
    for (auto* s : {info, coh}) s->add_option("--input", cfg.input, "unused")->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*info) return cmd_algebra_info(cfg);
        if (*coh) return cmd_cohomology(cfg);
        if (*norm) return cmd_normalize(cfg);
        return cmd_verify(cfg);
    } catch (const ahs::Error& e) {
        json err = {{"error", e.what()}, {"exit_code", e.exit_code()}};
        if (auto* nu = dynamic_cast<const ahs::NonUniquenessError*>(&e)) err["kernel_dim"] = nu->kernel_dim();
        std::cerr << err.dump() << "\n";
        return e.exit_code();
    } catch (const json::exception& e) {
        std::cerr << json{{"error", e.what()}, {"exit_code", 2}}.dump() << "\n";
        return 2;
    }
}
