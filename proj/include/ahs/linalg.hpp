#pragma once

#include "ahs/graded_algebra.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <map>
#include <vector>

namespace ahs {

using SpMat = Eigen::SparseMatrix<double, Eigen::ColMajor, long>;

/// Relative singular value threshold for rank decisions.
inline constexpr double kRankTol = 1e-9;

/// Interns weight vectors as small integer keys.
class WeightKeys {
public:
    int key(const std::vector<Q>& w);
    int size() const { return static_cast<int>(ids_.size()); }

private:
    std::map<std::vector<Q>, int> ids_;
};

std::vector<Q> weight_add(std::vector<Q> a, const std::vector<Q>& b, int sign = 1);

/// Rank of a dense matrix by Jacobi SVD with threshold rel * sigma_max.
int dense_rank(const Eigen::MatrixXd& A, double rel = kRankTol);
/// Orthonormal basis of the null space (columns).
Eigen::MatrixXd dense_nullspace(const Eigen::MatrixXd& A, double rel = kRankTol);
/// Minimum-norm least-squares solution.
Eigen::VectorXd dense_min_norm_solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double rel = kRankTol);

struct KeyedOperator;

/// SVD of every weight block of a keyed operator, computed once.
class BlockSVD {
public:
    explicit BlockSVD(const KeyedOperator& op);
    int rank(double rel = kRankTol) const;
    std::vector<std::pair<std::vector<int>, Eigen::MatrixXd>> nullspace(double rel = kRankTol) const;
    Eigen::VectorXd solve(const Eigen::VectorXd& b, double rel = kRankTol) const;
    double sigma_max() const { return smax_; }

private:
    struct Block {
        std::vector<int> rows, cols;
        Eigen::JacobiSVD<Eigen::MatrixXd> svd;
    };
    std::vector<Block> blocks_;
    long n_cols_ = 0;
    double smax_ = 0.0;
};

/// A sparse operator whose rows and columns carry weight keys; entries only
/// connect equal keys, so all computations split into dense blocks.
struct KeyedOperator {
    SpMat M;
    std::vector<int> row_key, col_key;

    /// Throws InvariantError if some nonzero entry connects different keys.
    void check_block_structure() const;
    int rank(double rel = kRankTol) const;
    /// Null space, one dense basis per key: (column indices, basis matrix).
    std::vector<std::pair<std::vector<int>, Eigen::MatrixXd>> nullspace(double rel = kRankTol) const;
    Eigen::VectorXd min_norm_solve(const Eigen::VectorXd& b, double rel = kRankTol) const;

    struct Block {
        std::vector<int> rows, cols;
    };
    std::map<int, Block> blocks() const;
    Eigen::MatrixXd dense_block(const Block& b) const;
};

/// Keyed operator from a dense matrix; entries below drop_tol are treated as zero.
KeyedOperator keyed_from_dense(const Eigen::MatrixXd& A, std::vector<int> row_key, std::vector<int> col_key,
                               double drop_tol = 0.0);

/// Vertical stack of two keyed operators with the same column space.
KeyedOperator stack(const KeyedOperator& a, const KeyedOperator& b);
/// Product a * b (a's columns must match b's rows).
KeyedOperator product(const KeyedOperator& a, const KeyedOperator& b);

}  // namespace ahs
