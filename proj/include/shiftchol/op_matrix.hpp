#pragma once

#include <vector>

#include <Eigen/Dense>

#include "shiftchol/shift_op.hpp"

namespace shiftchol {

class UndirectedGraph;

/// Column permutation as an index map: column j of M·P is column image[j] of M.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> image);

    static Permutation identity(int n);
    static Permutation swap(int n, int a, int b);

    int size() const { return static_cast<int>(image_.size()); }
    int operator[](int i) const { return image_[i]; }
    const std::vector<int>& image() const { return image_; }
    bool is_identity() const;

    Permutation inverse() const;
    /// 1 ⊕ this
    Permutation lifted() const;

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<int> image_;
};

/// Matrix product of permutation matrices: (a·b).image[j] = a.image[b.image[j]].
Permutation compose(const Permutation& a, const Permutation& b);

struct SparsityPattern {
    int rows = 0;
    int cols = 0;
    std::vector<char> flags;

    bool operator()(int i, int j) const { return flags[std::size_t(i) * cols + j] != 0; }
    std::size_t count() const;
    friend bool operator==(const SparsityPattern&, const SparsityPattern&) = default;
};

SparsityPattern pattern_of(const Eigen::MatrixXd& A, double tol);

class OpMatrix {
public:
    OpMatrix() = default;
    OpMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(std::size_t(rows) * cols) {}

    static OpMatrix identity(int n);
    static OpMatrix from_real(const Eigen::MatrixXd& A);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    ShiftOp& operator()(int i, int j) { return e_[std::size_t(i) * cols_ + j]; }
    const ShiftOp& operator()(int i, int j) const { return e_[std::size_t(i) * cols_ + j]; }

    OpMatrix block(int r0, int c0, int nr, int nc) const;
    /// Real matrix of the coefficients of one monomial.
    Eigen::MatrixXd coeff_matrix(int istar, int j) const;

    friend bool operator==(const OpMatrix&, const OpMatrix&) = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<ShiftOp> e_;
};

OpMatrix matmul(const OpMatrix& A, const OpMatrix& B);
OpMatrix adjoint_matrix(const OpMatrix& A);
OpMatrix gram(const OpMatrix& M);
OpMatrix add(const OpMatrix& A, const OpMatrix& B);
OpMatrix sub(const OpMatrix& A, const OpMatrix& B);

OpMatrix permute_cols(const OpMatrix& M, const Permutation& P);
/// Pᵀ·M: row i of the result is row image[i] of M.
OpMatrix permute_rows(const OpMatrix& M, const Permutation& P);

Eigen::MatrixXd coefficient_sum(const OpMatrix& M);
SparsityPattern sparsity(const OpMatrix& M);
/// True iff b is zero wherever a is zero.
bool dominates(const SparsityPattern& a, const SparsityPattern& b);

bool is_in_MG(const OpMatrix& M, const UndirectedGraph& G);

double max_abs_diff(const OpMatrix& A, const OpMatrix& B);
bool is_lower_triangular(const OpMatrix& L);
/// Block truncation: entry (i,j) becomes the T×T block to_truncation(M(i,j), T).
Eigen::MatrixXd to_truncation(const OpMatrix& M, int T);
/// Leading lead×lead block of each T×T block, assembled.
Eigen::MatrixXd leading_blocks(const Eigen::MatrixXd& Mt, int rows, int cols, int T, int lead);

}  // namespace shiftchol
