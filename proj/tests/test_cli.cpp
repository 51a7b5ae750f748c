#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(AHS_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf{};
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string data(const char* f) { return std::string(AHS_DATA) + "/" + f; }

}  // namespace

TEST_CASE("algebra-info") {
    Run r = run("algebra-info --kind grassmannian --p 2 --q 3");
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["dims"]["g_minus1"] == 6);
    CHECK(j["dims"]["g0"] == 12);
    CHECK(j["dims"]["g1"] == 6);
    CHECK(j["center_dim"] == 1);
    CHECK(j["matrix_cross_check"]["ok"] == true);
    CHECK(nlohmann::json::parse(run("algebra-info --kind lagrangian --m 3").out)["dims"]["g_minus1"] == 6);
    CHECK(nlohmann::json::parse(run("algebra-info --kind spinorial --m 4").out)["dims"]["g_minus1"] == 6);
    CHECK(run("algebra-info --kind grassmannian --p 3 --q 2").code == 2);
    CHECK(run("algebra-info --kind nothing --m 3").code == 2);
}

TEST_CASE("cohomology") {
    auto j = nlohmann::json::parse(run("cohomology --kind projective --q 2").out);
    CHECK(j["H11"].get<int>() > 0);
    j = nlohmann::json::parse(run("cohomology --kind grassmannian --p 1 --q 1").out);
    CHECK(j["H21"].get<int>() > 0);
    CHECK(j["complementarity"] == true);
}

TEST_CASE("normalize") {
    Run r = run("normalize --input " + data("conformal4_sphere.json"));
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["method"] == "closed_form");
    CHECK(j["convention"] == "kbar = k - delta(k)");
    CHECK(j["residual_trace_norm"].get<double>() <= 1e-12);
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k)
            CHECK(j["gamma_matrix"][i][k].get<double>() == doctest::Approx(i == k ? -0.5 : 0.0));

    j = nlohmann::json::parse(run("normalize --input " + data("projective3_sphere.json")).out);
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) CHECK(j["gamma_matrix"][i][k].get<double>() == doctest::Approx(i == k ? 1.0 : 0.0));

    CHECK(run("normalize --input " + data("sl2_zero.json")).code == 3);
    CHECK(run("normalize --input " + data("grass12_not_alternating.json")).code == 2);
    CHECK(run("normalize --input /nonexistent.json").code == 2);
    CHECK(run("normalize --kind lagrangian --input " + data("projective3_sphere.json")).code == 2);
}

TEST_CASE("verify") {
    Run r = run("verify --kind projective --check h11");
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    bool nonzero = false;
    for (const auto& c : j["checks"][0]["cases"])
        if (!c.contains("informational") && c["detail"]["H11"].get<int>() > 0) nonzero = true;
    CHECK(nonzero);

    r = run("verify --kind conformal --m 4 --inject-fault --check jacobi");
    CHECK(r.code == 4);
    j = nlohmann::json::parse(r.out);
    CHECK(j["checks"][0]["cases"][0]["detail"]["jacobi_failures"].get<int>() > 0);

    CHECK(run("verify --check nonsense").code == 2);
    CHECK(run("verify --samples 0").code == 2);
}
