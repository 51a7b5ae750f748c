#pragma once

#include <Eigen/Dense>
#include <boost/rational.hpp>
#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace ahs {

using Q = boost::rational<long long>;

// Mixed int/rational comparisons recurse in some Boost versions; compare numerators.
inline bool is_zero(const Q& v) { return v.numerator() == 0; }

enum class Kind { conformal, grassmannian, projective, lagrangian, spinorial };

/// Kind tag plus integer parameters. Only the fields used by the kind are meaningful.
struct StructureKind {
    Kind kind = Kind::grassmannian;
    int m = 0;
    int p = 0;
    int q = 0;

    static StructureKind conformal(int m);
    static StructureKind grassmannian(int p, int q);
    static StructureKind projective(int q);
    static StructureKind lagrangian(int m);
    static StructureKind spinorial(int m);
    /// From a CLI/JSON kind name; unused parameters are ignored.
    static StructureKind parse(const std::string& name, int m, int p, int q);

    std::string name() const;
    std::string label() const;  // e.g. "grassmannian(2,3)"
    nlohmann::json params_json() const;

    /// Throws ValidationError when the algebra cannot be built at all.
    void check_constructible() const;
    /// Inside the range where the closed forms and uniqueness hold.
    bool normalizable() const;
    /// Graded algebra isomorphic to the projective grading of sl(n+1).
    bool projective_type() const;

    bool operator==(const StructureKind& o) const {
        return kind == o.kind && m == o.m && p == o.p && q == o.q;
    }
};

struct Term {
    int index;
    Q value;
};

/// |1|-graded algebra g-1 + g0 + g1 with exact structure constants.
/// Full basis order is [g-1 | g0 | g1].
struct GradedLieAlgebra {
    StructureKind kind;
    int n_minus = 0;
    int n0 = 0;
    int n_plus = 0;
    std::vector<std::string> labels_minus, labels0, labels_plus;

    /// table[i*N + j] = sparse coordinates of [b_i, b_j].
    std::vector<std::vector<Term>> table;
    /// Pairing D(i,j) = <e_i, e^j> between g-1 basis i and g1 basis j.
    std::vector<std::vector<Q>> pairing;

    // Floating point caches derived from the exact data.
    Eigen::MatrixXd D;             // pairing in double
    Eigen::MatrixXd dual;          // row i = g1 coordinates of the dual element Z^i
    std::vector<Eigen::MatrixXd> ad;  // ad[k] = N x N matrix of ad(b_k)
    std::vector<int> cartan;       // g0 basis indices (full numbering) with diagonal ad
    std::vector<std::vector<Q>> weights;  // weight of each full basis element

    int dim() const { return n_minus + n0 + n_plus; }
    int offset(int grade) const { return grade < 0 ? 0 : (grade == 0 ? n_minus : n_minus + n0); }
    int grade_dim(int grade) const { return grade < 0 ? n_minus : (grade == 0 ? n0 : n_plus); }
    int grade_of(int k) const { return k < n_minus ? -1 : (k < n_minus + n0 ? 0 : 1); }
    const std::vector<Term>& structure(int i, int j) const { return table[i * dim() + j]; }
    /// Block of ad(b_k) mapping grade `from` into grade `from + grade_of(k)`.
    Eigen::MatrixXd ad_block(int k, int from) const;
    /// ad of the dual element Z^i restricted to grade `from`.
    Eigen::MatrixXd dual_ad_block(int i, int from) const;
    std::string label(int k) const;
};

/// Element tagged by its three graded coordinate vectors.
struct GradedElement {
    Eigen::VectorXd xm, x0, xp;

    static GradedElement zero(const GradedLieAlgebra& alg);
    static GradedElement from_full(const GradedLieAlgebra& alg, const Eigen::VectorXd& v);
    static GradedElement basis(const GradedLieAlgebra& alg, int k);
    Eigen::VectorXd full() const;
    bool matches(const GradedLieAlgebra& alg) const;
};

GradedLieAlgebra build_algebra(const StructureKind& kind);
/// Recompute the floating point caches after editing the exact table.
void refresh_caches(GradedLieAlgebra& alg);

Eigen::VectorXd bracket_full(const GradedLieAlgebra& alg, const Eigen::VectorXd& x,
                             const Eigen::VectorXd& y);
GradedElement bracket(const GradedLieAlgebra& alg, const GradedElement& x, const GradedElement& y);
/// Exact bracket of two basis elements as a dense rational vector.
std::vector<Q> bracket_exact(const GradedLieAlgebra& alg, const std::vector<Q>& x,
                             const std::vector<Q>& y);

/// (g-1 index, g1 coordinates of the dual element) pairs.
std::vector<std::pair<int, Eigen::VectorXd>> dual_basis(const GradedLieAlgebra& alg);

/// x + [Z,x] + 1/2 [Z,[Z,x]] for Z in g1.
GradedElement ad_exp(const GradedLieAlgebra& alg, const Eigen::VectorXd& Z, const GradedElement& x);

struct CrossCheckReport {
    bool ok = false;
    Q bracket_scalar{1};   // [M z, M x] = s M([z,x]) on g1 x g-1
    Q pairing_scalar{1};   // D = c tr(M x M z)
    double max_discrepancy = 0.0;
    std::string offending;  // first failing basis triple, empty when ok
    int matrix_size = 0;
};

/// Compare the table with commutators in the defining matrix realization.
CrossCheckReport cross_check_matrix_rep(const GradedLieAlgebra& alg);

struct JacobiReport {
    long long triples = 0;
    long long failures = 0;
    std::string first_failure;
};
JacobiReport jacobi_check(const GradedLieAlgebra& alg);

/// Antisymmetry and grading of the table; returns number of violations.
int table_axiom_violations(const GradedLieAlgebra& alg);

/// Exact rank of a rational matrix given as rows.
int rank_exact(std::vector<std::vector<Q>> rows);

int center_dimension(const GradedLieAlgebra& alg);
/// Rank of A -> ad_A|g-1 (equals n0 when injective).
int g0_action_rank(const GradedLieAlgebra& alg);
/// Rank of Z -> ad_Z|g-1 (equals n1 when injective).
int g1_action_rank(const GradedLieAlgebra& alg);

nlohmann::json to_json(const GradedLieAlgebra& alg);
/// Structure constants as (i, j, k, value) with value a string "a/b".
nlohmann::json sparse_triples(const GradedLieAlgebra& alg);

std::string to_string(const Q& q);

}  // namespace ahs
