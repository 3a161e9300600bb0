#include "shiftchol/op_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "shiftchol/graph.hpp"

namespace shiftchol {

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
    std::vector<char> seen(image_.size(), 0);
    for (int v : image_) {
        if (v < 0 || v >= size() || seen[v])
            throw Error(ErrorKind::PreconditionViolated, "permutation image is not a bijection");
        seen[v] = 1;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> im(n);
    std::iota(im.begin(), im.end(), 0);
    return Permutation(std::move(im));
}

Permutation Permutation::swap(int n, int a, int b) {
    Permutation p = identity(n);
    std::swap(p.image_[a], p.image_[b]);
    return p;
}

bool Permutation::is_identity() const {
    for (int i = 0; i < size(); ++i)
        if (image_[i] != i) return false;
    return true;
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(image_.size());
    for (int i = 0; i < size(); ++i) inv[image_[i]] = i;
    return Permutation(std::move(inv));
}

Permutation Permutation::lifted() const {
    std::vector<int> im{0};
    for (int v : image_) im.push_back(v + 1);
    return Permutation(std::move(im));
}

Permutation compose(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "permutation sizes differ");
    std::vector<int> im(a.size());
    for (int j = 0; j < a.size(); ++j) im[j] = a[b[j]];
    return Permutation(std::move(im));
}

std::size_t SparsityPattern::count() const {
    return std::size_t(std::count(flags.begin(), flags.end(), char(1)));
}

SparsityPattern pattern_of(const Eigen::MatrixXd& A, double tol) {
    SparsityPattern p{int(A.rows()), int(A.cols()), {}};
    p.flags.resize(std::size_t(A.size()));
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) p.flags[std::size_t(i) * p.cols + j] = std::abs(A(i, j)) > tol;
    return p;
}

OpMatrix OpMatrix::identity(int n) {
    OpMatrix I(n, n);
    for (int i = 0; i < n; ++i) I(i, i) = ShiftOp::identity();
    return I;
}

OpMatrix OpMatrix::from_real(const Eigen::MatrixXd& A) {
    OpMatrix M(int(A.rows()), int(A.cols()));
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j) M(i, j) = ShiftOp::constant(A(i, j));
    return M;
}

OpMatrix OpMatrix::block(int r0, int c0, int nr, int nc) const {
    if (r0 < 0 || c0 < 0 || nr < 0 || nc < 0 || r0 + nr > rows_ || c0 + nc > cols_)
        throw Error(ErrorKind::DimensionMismatch, "block out of range");
    OpMatrix B(nr, nc);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) B(i, j) = (*this)(r0 + i, c0 + j);
    return B;
}

Eigen::MatrixXd OpMatrix::coeff_matrix(int istar, int j) const {
    Eigen::MatrixXd A(rows_, cols_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) A(r, c) = (*this)(r, c).coeff(istar, j);
    return A;
}

OpMatrix matmul(const OpMatrix& A, const OpMatrix& B) {
    if (A.cols() != B.rows()) throw Error(ErrorKind::DimensionMismatch, "matmul inner dimensions differ");
    OpMatrix C(A.rows(), B.cols());
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < B.cols(); ++j) {
            ShiftOp acc;
            for (int k = 0; k < A.cols(); ++k) {
                if (A(i, k).is_zero() || B(k, j).is_zero()) continue;
                acc += mul(A(i, k), B(k, j));
            }
            C(i, j) = std::move(acc);
        }
    return C;
}

OpMatrix adjoint_matrix(const OpMatrix& A) {
    OpMatrix R(A.cols(), A.rows());
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) R(j, i) = adjoint(A(i, j));
    return R;
}

OpMatrix gram(const OpMatrix& M) { return matmul(adjoint_matrix(M), M); }

OpMatrix add(const OpMatrix& A, const OpMatrix& B) {
    if (A.rows() != B.rows() || A.cols() != B.cols()) throw Error(ErrorKind::DimensionMismatch, "add");
    OpMatrix C = A;
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) C(i, j) += B(i, j);
    return C;
}

OpMatrix sub(const OpMatrix& A, const OpMatrix& B) {
    if (A.rows() != B.rows() || A.cols() != B.cols()) throw Error(ErrorKind::DimensionMismatch, "sub");
    OpMatrix C = A;
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) C(i, j) -= B(i, j);
    return C;
}

OpMatrix permute_cols(const OpMatrix& M, const Permutation& P) {
    if (P.size() != M.cols()) throw Error(ErrorKind::DimensionMismatch, "permute_cols size");
    OpMatrix R(M.rows(), M.cols());
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j) R(i, j) = M(i, P[j]);
    return R;
}

OpMatrix permute_rows(const OpMatrix& M, const Permutation& P) {
    if (P.size() != M.rows()) throw Error(ErrorKind::DimensionMismatch, "permute_rows size");
    OpMatrix R(M.rows(), M.cols());
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j) R(i, j) = M(P[i], j);
    return R;
}

Eigen::MatrixXd coefficient_sum(const OpMatrix& M) {
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(M.rows(), M.cols());
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j)
            for (const auto& [m, c] : M(i, j).terms()) S(i, j) += c;
    return S;
}

SparsityPattern sparsity(const OpMatrix& M) {
    SparsityPattern p{M.rows(), M.cols(), std::vector<char>(std::size_t(M.rows()) * M.cols())};
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j) p.flags[std::size_t(i) * M.cols() + j] = !M(i, j).is_zero();
    return p;
}

bool dominates(const SparsityPattern& a, const SparsityPattern& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw Error(ErrorKind::DimensionMismatch, "dominates");
    for (std::size_t k = 0; k < a.flags.size(); ++k)
        if (b.flags[k] && !a.flags[k]) return false;
    return true;
}

bool is_in_MG(const OpMatrix& M, const UndirectedGraph& G) {
    if (M.rows() != G.n_vertices() || M.cols() != G.n_edges())
        throw Error(ErrorKind::DimensionMismatch, "is_in_MG: rows must be vertices, cols edges");
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j) {
            const ShiftOp& x = M(i, j);
            if (x.is_zero()) continue;
            if (!G.incident(i, j)) return false;
            // α q^k and (q*)^k α both have every monomial at the same offset j - istar
            const int offset = x.terms().begin()->first.j - x.terms().begin()->first.istar;
            for (const auto& [m, c] : x.terms())
                if (m.j - m.istar != offset) return false;
        }
    return true;
}

double max_abs_diff(const OpMatrix& A, const OpMatrix& B) {
    if (A.rows() != B.rows() || A.cols() != B.cols()) throw Error(ErrorKind::DimensionMismatch, "max_abs_diff");
    double d = 0.0;
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) d = std::max(d, max_abs_diff(A(i, j), B(i, j)));
    return d;
}

bool is_lower_triangular(const OpMatrix& L) {
    if (L.rows() != L.cols()) return false;
    for (int i = 0; i < L.rows(); ++i)
        for (int j = i + 1; j < L.cols(); ++j)
            if (!L(i, j).is_zero()) return false;
    return true;
}

Eigen::MatrixXd to_truncation(const OpMatrix& M, int T) {
    Eigen::MatrixXd R = Eigen::MatrixXd::Zero(M.rows() * T, M.cols() * T);
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j)
            if (!M(i, j).is_zero()) R.block(i * T, j * T, T, T) = to_truncation(M(i, j), T);
    return R;
}

Eigen::MatrixXd leading_blocks(const Eigen::MatrixXd& Mt, int rows, int cols, int T, int lead) {
    Eigen::MatrixXd R(rows * lead, cols * lead);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) R.block(i * lead, j * lead, lead, lead) = Mt.block(i * T, j * T, lead, lead);
    return R;
}

}  // namespace shiftchol
