#pragma once

#include "ahs/graded_algebra.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace ahs {

struct CaseResult {
    std::string label;
    bool passed = false;
    bool informational = false;  // reported, never counted against the check
    double residual = 0.0;
    nlohmann::json detail = nlohmann::json::object();
    nlohmann::json to_json() const;
};

struct CheckResult {
    std::string name;
    std::string description;
    bool passed = true;
    bool informational = false;
    double max_residual = 0.0;
    double tolerance = 0.0;
    std::vector<CaseResult> cases;

    CheckResult() = default;
    CheckResult(std::string n, std::string d) : name(std::move(n)), description(std::move(d)) {}
    void add(CaseResult c);
    nlohmann::json to_json() const;
};

struct VerifyConfig {
    std::vector<StructureKind> grid;
    std::uint64_t seed = 42;
    int samples = 50;
    double tolerance = 1e-9;  // closed form vs oracle and normalized residual
    std::string check;        // empty = all checks; otherwise a name or alias
    bool inject_fault = false;
};

/// Every constructible point with p <= q <= max_pq and m <= max_m, optionally one kind only.
std::vector<StructureKind> make_grid(int max_pq, int max_m, const std::string& only_kind = "");

std::vector<std::string> check_names();
/// Maps aliases (h11, h21, jacobi) to check names; throws ValidationError on unknown names.
std::string resolve_check(const std::string& name);

/// Flip the sign of one structure constant pair [b, e_0] = -[e_0, b] for a g0 basis element b.
void inject_sign_fault(GradedLieAlgebra& alg);

/// Bracket table against the printed Lagrangian and spinorial rules; returns mismatches.
int printed_rule_mismatches(const GradedLieAlgebra& alg);

std::vector<CheckResult> run_checks(const VerifyConfig& cfg);
bool all_passed(const std::vector<CheckResult>& results);
nlohmann::json verify_report(const VerifyConfig& cfg, const std::vector<CheckResult>& results);

}  // namespace ahs
