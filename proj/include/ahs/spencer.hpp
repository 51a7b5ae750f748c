#pragma once

#include "ahs/cochain.hpp"
#include "ahs/linalg.hpp"

#include <json.hpp>

namespace ahs {

/// (d psi)(X,Y) = [psi(X),Y] - [psi(Y),X]; psi of value grade 0 or 1.
TwoCochain spencer_d(const GradedLieAlgebra& alg, const OneCochain& psi);
/// (d* phi)(X) = sum_i [Z^i, phi(e_i, X)]; phi of value grade -1 or 0.
OneCochain spencer_dstar(const GradedLieAlgebra& alg, const TwoCochain& phi);
/// Cyclic sum of [phi(X,Y),W] over X<Y<W, for phi of value grade 0. Packed triples x g-1.
Eigen::VectorXd spencer_d2(const GradedLieAlgebra& alg, const TwoCochain& phi);

// Keyed sparse matrices acting on vec() / packed() coordinates.
KeyedOperator d_operator(const GradedLieAlgebra& alg, int grade, WeightKeys& keys);
KeyedOperator dstar_operator(const GradedLieAlgebra& alg, int grade, WeightKeys& keys);
KeyedOperator d2_operator(const GradedLieAlgebra& alg, WeightKeys& keys);
/// Z -> ad_Z restricted to g-1, as a map g1 -> g-1* (x) g0.
KeyedOperator adz_operator(const GradedLieAlgebra& alg, WeightKeys& keys);

std::vector<int> one_cochain_keys(const GradedLieAlgebra& alg, int grade, WeightKeys& keys);
std::vector<int> two_cochain_keys(const GradedLieAlgebra& alg, int grade, WeightKeys& keys);

struct ComplementarityReport {
    int grade = 0;           // value grade of the 1-cochains d acts on
    int total = 0;           // dimension of the 2-cochain space
    int dim_im_d = 0;
    int dim_ker_dstar = 0;
    int intersection_dim = 0;
    bool complementary = false;
    nlohmann::json to_json() const;
};

/// grade 0: d on g-1*(x)g0 -> L2(x)g-1;  grade 1: d on g-1*(x)g1 -> L2(x)g0.
ComplementarityReport complementarity_check(const GradedLieAlgebra& alg, int grade);

enum class CohomologyLevel { H11, H21 };
int cohomology_dim(const GradedLieAlgebra& alg, CohomologyLevel level);

/// Both H11 and H21 with complementarity at both levels.
nlohmann::json cohomology_report(const GradedLieAlgebra& alg);

struct HarmonicDecomposition {
    TwoCochain harmonic;
    OneCochain psi;  // minimum-norm solution
};

/// t = harmonic + d psi with d* harmonic = 0. t of value grade -1 (or 0).
HarmonicDecomposition harmonic_decompose(const GradedLieAlgebra& alg, const TwoCochain& t);

}  // namespace ahs
