#pragma once

#include "ahs/cochain.hpp"
#include "ahs/linalg.hpp"

#include <Eigen/Dense>
#include <json.hpp>

#include <optional>
#include <vector>

namespace ahs {

/// Dense 4-index array with row-major layout.
struct Tensor4 {
    int d = 0;  // every index ranges over 0..d-1
    std::vector<double> v;

    Tensor4() = default;
    explicit Tensor4(int dim) : d(dim), v(static_cast<size_t>(dim) * dim * dim * dim, 0.0) {}
    double& operator()(int a, int b, int c, int e) { return v[((static_cast<size_t>(a) * d + b) * d + c) * d + e]; }
    double operator()(int a, int b, int c, int e) const { return v[((static_cast<size_t>(a) * d + b) * d + c) * d + e]; }
    double max_abs_diff(const Tensor4& o) const;
};

/// Connection curvature R^i_{jkl} on an m-dimensional space, stored as R(i,j,k,l).
struct RawCurvature {
    Tensor4 R;

    int dim() const { return R.d; }
    /// R_jk = R^l_{jlk}.
    Eigen::MatrixXd ricci() const;
    /// Trace of the Ricci tensor against the identity metric.
    double scalar() const;
    double antisymmetry_defect() const;  // max |R^i_{jkl} + R^i_{jlk}|
    double bianchi_defect() const;       // max |R^i_{jkl} + R^i_{klj} + R^i_{ljk}|
    /// R^i_{jkl} = d^i_k d_jl - d^i_l d_jk.
    static RawCurvature constant_curvature(int m);
    nlohmann::json to_json() const;
    static RawCurvature from_json(const nlohmann::json& j, int m);
};

struct CurvatureData {
    TwoCochain kappa_m1;  // torsion part, value grade -1
    TwoCochain kappa0;    // value grade 0
    std::optional<RawCurvature> raw;
    bool torsion_free = false;

    /// Shape, alternation and raw-tensor symmetry checks; throws ValidationError.
    void validate(const GradedLieAlgebra& alg) const;
};

/// Gamma: g-1 -> g1 with kind-specific index forms derived from the coordinates.
struct DeformationTensor {
    OneCochain gamma;  // grade 1; gamma.c(X, Z) = coefficient of e^Z in Gamma(e_X)
};

// ---------------------------------------------------------------------------
// traces and deformation

/// (Tr phi)(X,Y) = sum_i [phi(e_i,X), e_Y](e^i), for phi of value grade 0.
Eigen::MatrixXd trace_kappa0(const GradedLieAlgebra& alg, const TwoCochain& kappa0);
/// The trace form read as a 1-cochain into g1 through the pairing: <e_Y, T(X)> = Tr(X,Y).
OneCochain trace_as_g1(const GradedLieAlgebra& alg, const Eigen::MatrixXd& T);
/// (Tr_g0 phi)(X,Y) = sum_i [phi(X,Y), e_i](e^i).
Eigen::MatrixXd trace_g0(const GradedLieAlgebra& alg, const TwoCochain& kappa0);

/// delta kappa0(X,Y) = [Gamma(Y),X] - [Gamma(X),Y], evaluated bracket by bracket.
TwoCochain deformation_delta_kappa0(const GradedLieAlgebra& alg, const DeformationTensor& gamma);

bool torsion_is_harmonic(const GradedLieAlgebra& alg, const TwoCochain& T, double rel_tol = 1e-10);

// ---------------------------------------------------------------------------
// index forms

/// Grassmannian: Gamma_{^c_l^a_k} = coefficient of e^l_c in Gamma(e^a_k).
double grass_index(const GradedLieAlgebra& alg, const Eigen::MatrixXd& M, int c, int l, int a, int k);
/// Lagrangian / spinorial pair index form Gamma_(st)(ij) (resp. [st][ij]).
Tensor4 gamma_pair_form(const GradedLieAlgebra& alg, const DeformationTensor& gamma);
DeformationTensor gamma_from_pair_form(const GradedLieAlgebra& alg, const Tensor4& G);
/// Tr_(pq)(kl) = Tr(e_k.e_l, e_p.e_q); spinorial reads Tr(e_k^e_l, e_q^e_p).
Tensor4 trace_pair_form(const GradedLieAlgebra& alg, const Eigen::MatrixXd& T);
/// Projective / conformal: Gamma_jk with j the output index.
Eigen::MatrixXd gamma_matrix_form(const GradedLieAlgebra& alg, const DeformationTensor& gamma);
DeformationTensor gamma_from_matrix_form(const GradedLieAlgebra& alg, const Eigen::MatrixXd& G);

// ---------------------------------------------------------------------------
// closed forms

DeformationTensor gamma_conformal(const GradedLieAlgebra& alg, const Eigen::MatrixXd& ricci, double scalar);
/// TrR = Tr(R), TrR_g0 = Tr_g0(R) for R = -kappa0 (the block normalisation by p+q is internal).
DeformationTensor gamma_grassmannian(const GradedLieAlgebra& alg, const Eigen::MatrixXd& TrR,
                                     const Eigen::MatrixXd& TrR_g0);
DeformationTensor gamma_projective(const GradedLieAlgebra& alg, const RawCurvature& R);
DeformationTensor gamma_lagrangian(const GradedLieAlgebra& alg, const Eigen::MatrixXd& TrR);
DeformationTensor gamma_spinorial(const GradedLieAlgebra& alg, const Eigen::MatrixXd& TrR);

/// Picks the formula for the kind. Conformal/projective use the raw tensor when present.
DeformationTensor closed_form_gamma(const GradedLieAlgebra& alg, const CurvatureData& data);

/// kappa0(e_k,e_l) = -A with ad_A on g-1 equal to R^._{.kl}; throws if R(k,l) is not in g0.
TwoCochain kappa0_from_raw(const GradedLieAlgebra& alg, const RawCurvature& R);
RawCurvature raw_from_kappa0(const GradedLieAlgebra& alg, const TwoCochain& kappa0);

// ---------------------------------------------------------------------------
// oracle

/// Factorises Gamma -> Tr(delta kappa0(Gamma)) once per algebra.
class OracleSolver {
public:
    explicit OracleSolver(const GradedLieAlgebra& alg);
    /// Throws NonUniquenessError when the trace map has a kernel.
    DeformationTensor solve(const TwoCochain& kappa0) const;
    int kernel_dim() const { return kernel_dim_; }
    const Eigen::MatrixXd& trace_map() const { return A_; }

private:
    const GradedLieAlgebra* alg_;
    Eigen::MatrixXd A_;
    std::optional<BlockSVD> svd_;
    int kernel_dim_ = 0;
};

DeformationTensor oracle_gamma(const GradedLieAlgebra& alg, const TwoCochain& kappa0);

/// max |Tr(kappa0 - delta kappa0(Gamma))|.
double residual_trace_norm(const GradedLieAlgebra& alg, const TwoCochain& kappa0, const DeformationTensor& gamma);

struct UniquenessReport {
    int gamma_dim = 0;
    int trace_kernel_dim = 0;     // Gamma -> Tr(delta kappa0)
    int combined_kernel_dim = 0;  // Gamma -> (Tr, Tr_g0)
    nlohmann::json to_json() const;
};
UniquenessReport uniqueness_certificate(const GradedLieAlgebra& alg);

/// Weight keys of Gamma coordinates (X, Z) and of bilinear-form entries (X, Y).
std::vector<int> gamma_keys(const GradedLieAlgebra& alg, WeightKeys& keys);
std::vector<int> bilinear_keys(const GradedLieAlgebra& alg, WeightKeys& keys);

struct FiberConstancyReport {
    double precondition = 0.0;   // |d* kappa_-1|
    double interchange = 0.0;    // |d*[tau, kappa_-1] - [tau, d* kappa_-1]|
    double residual = 0.0;       // |d*(kappa0 - [tau, kappa_-1]) - d* kappa0|
    double scale = 1.0;
    bool passed = false;
    nlohmann::json to_json() const;
};
/// tau is a g1 element. With strict set, a non-harmonic kappa_-1 throws ValidationError.
FiberConstancyReport fiber_constancy_check(const GradedLieAlgebra& alg, const TwoCochain& kappa0,
                                           const TwoCochain& kappa_m1, const Eigen::VectorXd& tau,
                                           bool strict = true, double tol = 1e-10);

}  // namespace ahs
