#include "ahs/linalg.hpp"

#include "ahs/errors.hpp"

#include <Eigen/SVD>

namespace ahs {

int WeightKeys::key(const std::vector<Q>& w) {
    auto it = ids_.find(w);
    if (it != ids_.end()) return it->second;
    int id = static_cast<int>(ids_.size());
    ids_.emplace(w, id);
    return id;
}

std::vector<Q> weight_add(std::vector<Q> a, const std::vector<Q>& b, int sign) {
    for (size_t i = 0; i < a.size(); ++i) a[i] += Q(sign) * b[i];
    return a;
}

int dense_rank(const Eigen::MatrixXd& A, double rel) {
    if (A.size() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    int r = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > rel * s(0)) ++r;
    return r;
}

Eigen::MatrixXd dense_nullspace(const Eigen::MatrixXd& A, double rel) {
    const int n = static_cast<int>(A.cols());
    if (A.rows() == 0) return Eigen::MatrixXd::Identity(n, n);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    int r = 0;
    if (s.size() > 0 && s(0) > 0.0)
        for (int i = 0; i < s.size(); ++i)
            if (s(i) > rel * s(0)) ++r;
    return svd.matrixV().rightCols(n - r);
}

Eigen::VectorXd dense_min_norm_solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double rel) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    Eigen::VectorXd x = Eigen::VectorXd::Zero(A.cols());
    if (s.size() == 0 || s(0) == 0.0) return x;
    Eigen::VectorXd c = svd.matrixU().transpose() * b;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > rel * s(0)) x += svd.matrixV().col(i) * (c(i) / s(i));
    return x;
}

// ---------------------------------------------------------------------------

void KeyedOperator::check_block_structure() const {
    for (long c = 0; c < M.outerSize(); ++c)
        for (SpMat::InnerIterator it(M, c); it; ++it)
            if (it.value() != 0.0 && row_key[it.row()] != col_key[c])
                throw InvariantError("operator is not weight preserving");
}

std::map<int, KeyedOperator::Block> KeyedOperator::blocks() const {
    std::map<int, Block> out;
    for (int c = 0; c < static_cast<int>(col_key.size()); ++c) out[col_key[c]].cols.push_back(c);
    for (int r = 0; r < static_cast<int>(row_key.size()); ++r) out[row_key[r]].rows.push_back(r);
    return out;
}

Eigen::MatrixXd KeyedOperator::dense_block(const Block& b) const {
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(b.rows.size(), b.cols.size());
    std::vector<int> rpos(M.rows(), -1);
    for (size_t i = 0; i < b.rows.size(); ++i) rpos[b.rows[i]] = static_cast<int>(i);
    for (size_t j = 0; j < b.cols.size(); ++j)
        for (SpMat::InnerIterator it(M, b.cols[j]); it; ++it)
            if (rpos[it.row()] >= 0) D(rpos[it.row()], j) = it.value();
    return D;
}

BlockSVD::BlockSVD(const KeyedOperator& op) : n_cols_(op.M.cols()) {
    op.check_block_structure();
    for (const auto& [k, b] : op.blocks()) {
        if (b.cols.empty()) continue;
        Block blk{b.rows, b.cols, {}};
        if (!b.rows.empty()) {
            blk.svd.compute(op.dense_block(b), Eigen::ComputeFullU | Eigen::ComputeFullV);
            if (blk.svd.singularValues().size() > 0) smax_ = std::max(smax_, blk.svd.singularValues()(0));
        }
        blocks_.push_back(std::move(blk));
    }
}

namespace {

int count_above(const Eigen::VectorXd& s, double thr) {
    int r = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > thr) ++r;
    return r;
}

}  // namespace

int BlockSVD::rank(double rel) const {
    if (smax_ == 0.0) return 0;
    int r = 0;
    for (const auto& b : blocks_)
        if (!b.rows.empty()) r += count_above(b.svd.singularValues(), rel * smax_);
    return r;
}

std::vector<std::pair<std::vector<int>, Eigen::MatrixXd>> BlockSVD::nullspace(double rel) const {
    std::vector<std::pair<std::vector<int>, Eigen::MatrixXd>> out;
    for (const auto& b : blocks_) {
        const int n = static_cast<int>(b.cols.size());
        Eigen::MatrixXd N;
        if (b.rows.empty() || smax_ == 0.0) {
            N = Eigen::MatrixXd::Identity(n, n);
        } else {
            const int r = count_above(b.svd.singularValues(), rel * smax_);
            N = b.svd.matrixV().rightCols(n - r);
        }
        if (N.cols() > 0) out.emplace_back(b.cols, N);
    }
    return out;
}

Eigen::VectorXd BlockSVD::solve(const Eigen::VectorXd& rhs, double rel) const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n_cols_);
    if (smax_ == 0.0) return x;
    for (const auto& b : blocks_) {
        if (b.rows.empty()) continue;
        Eigen::VectorXd bb(b.rows.size());
        for (size_t i = 0; i < b.rows.size(); ++i) bb(i) = rhs(b.rows[i]);
        const auto& s = b.svd.singularValues();
        Eigen::VectorXd c = b.svd.matrixU().transpose() * bb;
        Eigen::VectorXd xb = Eigen::VectorXd::Zero(b.cols.size());
        for (int i = 0; i < s.size(); ++i)
            if (s(i) > rel * smax_) xb += b.svd.matrixV().col(i) * (c(i) / s(i));
        for (size_t j = 0; j < b.cols.size(); ++j) x(b.cols[j]) = xb(j);
    }
    return x;
}

int KeyedOperator::rank(double rel) const { return BlockSVD(*this).rank(rel); }

std::vector<std::pair<std::vector<int>, Eigen::MatrixXd>> KeyedOperator::nullspace(double rel) const {
    return BlockSVD(*this).nullspace(rel);
}

Eigen::VectorXd KeyedOperator::min_norm_solve(const Eigen::VectorXd& b, double rel) const {
    return BlockSVD(*this).solve(b, rel);
}

KeyedOperator keyed_from_dense(const Eigen::MatrixXd& A, std::vector<int> row_key, std::vector<int> col_key,
                               double drop_tol) {
    KeyedOperator op;
    std::vector<Eigen::Triplet<double, long>> t;
    for (long c = 0; c < A.cols(); ++c)
        for (long r = 0; r < A.rows(); ++r)
            if (std::abs(A(r, c)) > drop_tol) t.emplace_back(r, c, A(r, c));
    op.M = SpMat(A.rows(), A.cols());
    op.M.setFromTriplets(t.begin(), t.end());
    op.row_key = std::move(row_key);
    op.col_key = std::move(col_key);
    return op;
}

KeyedOperator stack(const KeyedOperator& a, const KeyedOperator& b) {
    if (a.col_key != b.col_key) throw ValidationError("stack: column spaces differ");
    KeyedOperator out;
    out.col_key = a.col_key;
    out.row_key = a.row_key;
    out.row_key.insert(out.row_key.end(), b.row_key.begin(), b.row_key.end());
    std::vector<Eigen::Triplet<double, long>> t;
    for (long c = 0; c < a.M.outerSize(); ++c)
        for (SpMat::InnerIterator it(a.M, c); it; ++it) t.emplace_back(it.row(), c, it.value());
    for (long c = 0; c < b.M.outerSize(); ++c)
        for (SpMat::InnerIterator it(b.M, c); it; ++it) t.emplace_back(a.M.rows() + it.row(), c, it.value());
    out.M = SpMat(a.M.rows() + b.M.rows(), a.M.cols());
    out.M.setFromTriplets(t.begin(), t.end());
    return out;
}

KeyedOperator product(const KeyedOperator& a, const KeyedOperator& b) {
    if (a.M.cols() != b.M.rows()) throw ValidationError("product: shape mismatch");
    KeyedOperator out;
    out.row_key = a.row_key;
    out.col_key = b.col_key;
    out.M = (a.M * b.M).pruned();
    return out;
}

}  // namespace ahs
