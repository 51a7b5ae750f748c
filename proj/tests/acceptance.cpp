// One PASS/FAIL line per acceptance criterion on the desk-scale grid (p,q <= 4, m <= 6).
#include "ahs/verify.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

std::string failing(const ahs::CheckResult& r) {
    std::string out;
    for (const auto& c : r.cases)
        if (!c.passed && !c.informational) out += (out.empty() ? "" : ", ") + c.label;
    return out;
}

}  // namespace

int main() {
    ahs::VerifyConfig cfg;
    cfg.grid = ahs::make_grid(4, 6);
    cfg.seed = 42;
    cfg.samples = 50;
    cfg.tolerance = 1e-9;
    std::map<std::string, ahs::CheckResult> by_name;
    for (auto& r : ahs::run_checks(cfg)) by_name[r.name] = r;

    const std::pair<const char*, const char*> criteria[] = {
        {"1 bracket fidelity", "bracket_fidelity"},
        {"2 grading axioms", "grading_axioms"},
        {"3 trace identity", "trace_identity"},
        {"4 complementarity", "complementarity"},
        {"5 cohomology table", "cohomology"},
        {"6 closed form vs oracle", "closed_vs_oracle"},
        {"7 uniqueness", "uniqueness"},
        {"8 substitution identities", "substitution_identities"},
        {"9 spot values", "spot_values"},
        {"10 fiber constancy", "fiber_constancy"},
    };
    bool all = true;
    for (const auto& [label, name] : criteria) {
        const ahs::CheckResult& r = by_name.at(name);
        all = all && r.passed;
        std::cout << (r.passed ? "PASS " : "FAIL ") << label << "  max_residual=" << r.max_residual;
        if (!r.passed) std::cout << "  failing: " << failing(r);
        std::cout << "\n";
    }

    const std::string base = std::string(AHS_WORKDIR) + "/determinism_";
    const std::string cmd = std::string(AHS_CLI) + " verify --seed 42 --output " + base;
    int rc1 = std::system((cmd + "a.json").c_str());
    int rc2 = std::system((cmd + "b.json").c_str());
    const std::string a = slurp(base + "a.json"), b = slurp(base + "b.json");
    const bool same = !a.empty() && a == b && rc1 == rc2;
    all = all && same;
    std::cout << (same ? "PASS " : "FAIL ") << "11 determinism  bytes=" << a.size() << "\n";
    return all ? 0 : 1;
}
