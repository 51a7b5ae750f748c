#pragma once

#include "ahs/linalg.hpp"
#include "ahs/normalization.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace ahs {

/// Seeded stream of uniform [-1,1) doubles, identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    double uniform();
    Eigen::VectorXd vector(int n);
    Eigen::MatrixXd matrix(int rows, int cols);
    /// Independent child stream, e.g. one per structure kind.
    Rng fork(std::uint64_t salt);

private:
    std::mt19937_64 eng_;
};

enum class Symmetry {
    riemann_symmetric,      // full metric curvature symmetries (conformal, projective)
    bianchi,                // antisymmetry in k,l plus first Bianchi only (projective)
    harmonic,               // kappa0 in ker d* and ker d2
    deformation_image,      // kappa0 = delta kappa0(Gamma) for random Gamma
    arbitrary_alternating,  // i.i.d. alternating kappa0
};

Symmetry parse_symmetry(const std::string& name);
std::string to_string(Symmetry s);

struct SampleSpec {
    StructureKind kind;
    std::uint64_t seed = 42;
    int count = 1;
    Symmetry symmetry = Symmetry::arbitrary_alternating;

    nlohmann::json to_json() const;
    static SampleSpec from_json(const nlohmann::json& j);
};

/// Random R^i_{jkl}; metric selects the Riemann symmetries, otherwise only antisymmetry plus Bianchi.
RawCurvature random_riemann(int m, bool metric, Rng& rng);

/// Basis of ker d* (value grade -1) or ker d* ∩ ker d2 (value grade 0), sampled blockwise.
class HarmonicSampler {
public:
    HarmonicSampler(const GradedLieAlgebra& alg, int grade);
    TwoCochain sample(Rng& rng) const;
    int dimension() const { return dim_; }

private:
    const GradedLieAlgebra* alg_;
    int grade_;
    int dim_ = 0;
    std::vector<std::pair<std::vector<int>, Eigen::MatrixXd>> blocks_;
};

DeformationTensor random_gamma(const GradedLieAlgebra& alg, Rng& rng);
/// Lagrangian/spinorial Gamma with Gamma_(pq)(kl) = Gamma_(kl)(pq); Grassmannian Gamma with
/// Gamma_{^a_k^b_i} = Gamma_{^b_i^a_k}.
DeformationTensor random_symmetric_gamma(const GradedLieAlgebra& alg, Rng& rng);
TwoCochain random_alternating(const GradedLieAlgebra& alg, int grade, Rng& rng);

CurvatureData random_curvature(const GradedLieAlgebra& alg, Symmetry sym, Rng& rng);
std::vector<CurvatureData> random_curvature(const SampleSpec& spec);

/// kappa0 = delta kappa0(Gamma_true) + harmonic.
struct RoundTrip {
    DeformationTensor gamma_true;
    TwoCochain kappa0;
};
RoundTrip random_round_trip(const GradedLieAlgebra& alg, const HarmonicSampler& harmonic, Rng& rng,
                            bool symmetric_gamma = false);

/// Column k = vectorised Tr(-d Gamma_k), assembled through the Spencer differential.
Eigen::MatrixXd brute_force_trace_map(const GradedLieAlgebra& alg);

}  // namespace ahs
