#pragma once

#include "ahs/cochain.hpp"
#include "ahs/normalization.hpp"

#include <Eigen/Dense>
#include <json.hpp>

#include <optional>

namespace ahs {

/// b = b0 exp(Z) with b0 = exp(ad A) for A in g0, stored through Ad(b0) on each grade.
struct FrameChange {
    Eigen::MatrixXd Bm, B0, Bp;  // Ad(b0) on g-1, g0, g1
    Eigen::VectorXd Z;           // g1 coordinates

    static FrameChange identity(const GradedLieAlgebra& alg);
    static FrameChange from_generator(const GradedLieAlgebra& alg, const Eigen::VectorXd& A, const Eigen::VectorXd& Z);

    /// Ad(b) x = Ad(b0) Ad(exp Z) x on full coordinates, and its inverse.
    Eigen::VectorXd adjoint(const GradedLieAlgebra& alg, const Eigen::VectorXd& x) const;
    Eigen::VectorXd adjoint_inverse(const GradedLieAlgebra& alg, const Eigen::VectorXd& x) const;
    /// max |Ad(b0) ad(e_i) Ad(b0)^-1 - ad(Ad(b0) e_i)| over the basis.
    double automorphism_defect(const GradedLieAlgebra& alg) const;
    /// Ad(b0) must preserve the grading; throws InvariantError otherwise.
    void validate(const GradedLieAlgebra& alg, double tol = 1e-10) const;
};

/// Right action of b0 on cochains: (psi.b0)(X) = Ad(b0)^-1 psi(Ad(b0) X).
OneCochain act(const FrameChange& fc, const OneCochain& psi);
TwoCochain act(const FrameChange& fc, const TwoCochain& phi);

/// t - d psi.
TwoCochain torsion_change(const GradedLieAlgebra& alg, const TwoCochain& t, const OneCochain& psi);

/// Torsion after the frame change, evaluated through the full Ad(b) (including exp Z) and
/// projected to g-1. Throws InvariantError if it differs from the b0-only action.
TwoCochain torsion_equivariance(const GradedLieAlgebra& alg, const TwoCochain& t, const FrameChange& fc,
                                double tol = 1e-10);

/// Bilinear map g x g -> target, values(i * N + j) = value on basis pair (b_i, b_j).
struct BilinearMap {
    int target_dim = 0;
    Eigen::MatrixXd values;  // (N*N) x target_dim

    Eigen::VectorXd at(int N, int i, int j) const { return values.row(i * N + j).transpose(); }
};

/// Torsion of Phi on g x g with values in g-1 + g0 built from kappa0 (and kappa_-1):
/// full(X,Y) = kappa(X,Y) on g-1 pairs, -pr[x,y] on all other basis pairs.
BilinearMap second_torsion_model(const GradedLieAlgebra& alg, const TwoCochain& kappa0,
                                 const std::optional<TwoCochain>& kappa_m1 = std::nullopt);

struct SecondTorsionResult {
    TwoCochain component;  // g-1* ^ g-1* (x) g0 part
    double defect = 0.0;   // max |full(x,y) - full(X,Y) + pr[x,y]|
};

/// Checks full(x,y) - full(X,Y) = -pr[x,y] and returns the g0 component on g-1 pairs.
/// With strict set a defect above tol throws InvariantError.
SecondTorsionResult second_torsion_reduction(const GradedLieAlgebra& alg, const BilinearMap& full,
                                             bool strict = true, double tol = 1e-10);

/// Lie bracket as a structure function g x g -> g, plus kappa on g-1 pairs when given.
BilinearMap flat_structure_function(const GradedLieAlgebra& alg);
BilinearMap structure_function(const GradedLieAlgebra& alg, const TwoCochain& kappa_m1, const TwoCochain& kappa0,
                               const std::optional<TwoCochain>& kappa1 = std::nullopt);

/// max |cyclic sum s(s(x,y),z)| over basis triples; zero for the flat model (Jacobi).
double structure_jacobi_residual(const GradedLieAlgebra& alg, const BilinearMap& s);

struct TransitivityWitness {
    int ker_d = 0;    // dim ker(d: g-1*(x)g0 -> L2(x)g-1)
    int n_plus = 0;   // dim g1 = rank(Z -> ad_Z) when injective
    bool holds = false;
    nlohmann::json to_json() const;
};
TransitivityWitness transitivity_witness(const GradedLieAlgebra& alg);

}  // namespace ahs
