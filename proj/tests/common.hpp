#pragma once

#include "ahs/graded_algebra.hpp"

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace testing {

inline int index_of(const ahs::GradedLieAlgebra& alg, const std::string& label) {
    for (int k = 0; k < alg.dim(); ++k)
        if (alg.label(k) == label) return k;
    throw std::runtime_error("no basis element " + label);
}

inline Eigen::VectorXd unit(const ahs::GradedLieAlgebra& alg, const std::string& label) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(alg.dim());
    v(index_of(alg, label)) = 1.0;
    return v;
}

inline double max_abs(const Eigen::MatrixXd& M) { return M.size() ? M.cwiseAbs().maxCoeff() : 0.0; }

inline std::vector<ahs::StructureKind> small_grid() {
    using ahs::StructureKind;
    return {StructureKind::grassmannian(1, 2), StructureKind::grassmannian(2, 2), StructureKind::grassmannian(2, 3),
            StructureKind::projective(2),      StructureKind::projective(3),      StructureKind::conformal(3),
            StructureKind::conformal(4),       StructureKind::lagrangian(2),      StructureKind::lagrangian(3),
            StructureKind::spinorial(3),       StructureKind::spinorial(4)};
}

}  // namespace testing
