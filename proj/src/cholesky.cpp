#include "shiftchol/cholesky.hpp"

#include <algorithm>
#include <cmath>

namespace shiftchol {

namespace {

std::vector<int> nonzero_rows(const OpMatrix& M, int c) {
    std::vector<int> nz;
    for (int i = 0; i < M.rows(); ++i)
        if (!M(i, c).is_zero()) nz.push_back(i);
    return nz;
}

bool row_zero_except(const OpMatrix& M, int r, int c) {
    for (int j = 0; j < M.cols(); ++j)
        if (j != c && !M(r, j).is_zero()) return false;
    return true;
}

int first_zero_row(const OpMatrix& M) {
    for (int i = 0; i < M.rows(); ++i)
        if (row_zero_except(M, i, -1)) return i;
    return -1;
}

/// Row that can be eliminated with column c: a nonzero row of c that is zero elsewhere,
/// or, for a column with at most one nonzero, an all-zero row standing in for the missing endpoint.
int leaf_row(const OpMatrix& M, int c) {
    std::vector<int> nz = nonzero_rows(M, c);
    if (nz.size() > 2)
        throw Error(ErrorKind::MalformedColumn, "column " + std::to_string(c) + " has " +
                                                    std::to_string(nz.size()) + " nonzero entries");
    for (int r : nz)
        if (row_zero_except(M, r, c)) return r;
    if (nz.size() <= 1) return first_zero_row(M);
    return -1;
}

bool all_zero(const OpMatrix& M) {
    for (int i = 0; i < M.rows(); ++i)
        if (!row_zero_except(M, i, -1)) return false;
    return true;
}

struct Partial {
    OpMatrix L;
    Permutation P;
};

Partial factor_rec(const OpMatrix& M, const Tolerances& tol, std::vector<ReductionStep>* trace) {
    const int m = M.cols();
    if (m == 0) return {OpMatrix(0, 0), Permutation::identity(0)};
    if (all_zero(M)) return {OpMatrix(m, m), Permutation::identity(m)};
    if (m == 1) {
        OpMatrix L(1, 1);
        L(0, 0) = sqrt_rinf(gram(M)(0, 0), tol.psd_tol);
        return {L, Permutation::identity(1)};
    }

    Permutation Pe = leaf_edge_first_permutation(M);
    OpMatrix Mp = permute_cols(M, Pe);
    Permutation Q = vertices_first_permutation(Mp);
    SchurReduction red = schur_reduce(permute_rows(Mp, Q), tol);
    if (trace) trace->push_back({Pe, Q, red});

    Partial sub = factor_rec(red.m_red, tol, trace);

    OpMatrix L(m, m);
    ShiftOp l11 = sqrt_rinf(red.n11, tol.psd_tol);
    // thresholding N11 before the square root keeps noise-level partial sums at zero
    ShiftOp l11_pinv = sqrt_rinf(pinv_rinf(red.n11), tol.psd_tol);
    L(0, 0) = l11;
    OpMatrix n21 = permute_rows(red.n21, sub.P);
    for (int i = 1; i < m; ++i) {
        L(i, 0) = mul(n21(i - 1, 0), l11_pinv);
        for (int j = 1; j <= i; ++j) L(i, j) = sub.L(i - 1, j - 1);
    }
    return {L, compose(Pe, sub.P.lifted())};
}

}  // namespace

Permutation leaf_edge_first_permutation(const OpMatrix& M) {
    for (int c = 0; c < M.cols(); ++c)
        if (leaf_row(M, c) >= 0) return Permutation::swap(M.cols(), 0, c);
    throw Error(ErrorKind::NoLeafEdge, "no leaf edge: the sparsity graph of M contains a cycle, "
                                       "and only tree (forest) structured matrices admit this factorisation");
}

Permutation vertices_first_permutation(const OpMatrix& M) {
    if (M.cols() == 0) throw Error(ErrorKind::MalformedColumn, "matrix has no columns");
    std::vector<int> nz = nonzero_rows(M, 0);
    const int first = leaf_row(M, 0);
    if (first < 0) throw Error(ErrorKind::PreconditionViolated, "column 0 is not a leaf edge");
    int second = -1;
    for (int r : nz)
        if (r != first) second = r;
    if (second < 0)
        for (int i = 0; i < M.rows() && second < 0; ++i)
            if (i != first) second = i;
    std::vector<int> order{first};
    if (second >= 0) order.push_back(second);
    for (int i = 0; i < M.rows(); ++i)
        if (i != first && i != second) order.push_back(i);
    return Permutation(std::move(order));
}

SchurReduction schur_reduce(const OpMatrix& M, const Tolerances& tol) {
    const int n = M.rows(), m = M.cols();
    if (n == 0 || m == 0) throw Error(ErrorKind::DimensionMismatch, "schur_reduce on an empty matrix");
    if (!row_zero_except(M, 0, 0)) throw Error(ErrorKind::PreconditionViolated, "row 0 is not a leaf row");
    for (int i = 2; i < n; ++i)
        if (!M(i, 0).is_zero()) throw Error(ErrorKind::PreconditionViolated, "column 0 has entries below row 1");

    const ShiftOp& m11 = M(0, 0);
    const ShiftOp m21 = n > 1 ? M(1, 0) : ShiftOp();

    SchurReduction out;
    out.n11 = mul(adjoint(m11), m11) + mul(adjoint(m21), m21);
    out.n21 = OpMatrix(m - 1, 1);
    for (int j = 1; j < m && n > 1; ++j) out.n21(j - 1, 0) = mul(adjoint(M(1, j)), m21);

    ShiftOp t = ShiftOp::identity() - mul(mul(m21, pinv_rinf(out.n11)), adjoint(m21));
    ShiftOp s = sqrt_rinf(t, tol.psd_tol);

    out.m_red = OpMatrix(n - 1, m - 1);
    for (int j = 1; j < m; ++j) {
        if (n > 1) out.m_red(0, j - 1) = mul(s, M(1, j));
        for (int i = 2; i < n; ++i) out.m_red(i - 1, j - 1) = M(i, j);
    }
    return out;
}

Factorisation cholesky_tree(const OpMatrix& M, const Tolerances& tol, std::vector<ReductionStep>* trace) {
    for (int c = 0; c < M.cols(); ++c)
        if (nonzero_rows(M, c).size() > 2)
            throw Error(ErrorKind::MalformedColumn, "column " + std::to_string(c) + " has more than two nonzeros");

    Partial p = factor_rec(M, tol, trace);
    Factorisation F{p.L, p.P, 0.0, true};

    OpMatrix G = gram(permute_cols(M, F.P));
    F.identity_resid = max_abs_diff(G, matmul(F.L, adjoint_matrix(F.L)));
    F.fill_in_free = dominates(sparsity(G), sparsity(F.L));

    double scale = 1.0;
    for (int i = 0; i < G.rows(); ++i)
        for (int j = 0; j < G.cols(); ++j) scale = std::max(scale, G(i, j).max_abs());
    if (F.identity_resid > 1e-8 * scale)
        throw Error(ErrorKind::VerificationFailed, "factor identity residual " + std::to_string(F.identity_resid));
    if (!F.fill_in_free) throw Error(ErrorKind::VerificationFailed, "factor has fill-in");
    if (!is_lower_triangular(F.L)) throw Error(ErrorKind::VerificationFailed, "factor is not lower triangular");
    for (int i = 0; i < F.L.rows(); ++i)
        if (!is_rinf(F.L(i, i))) throw Error(ErrorKind::VerificationFailed, "diagonal entry outside R∞");
    return F;
}

bool diag_invertible(const OpMatrix& L, double inv_tol) {
    for (int i = 0; i < std::min(L.rows(), L.cols()); ++i)
        if (!is_invertible_rinf(L(i, i), inv_tol)) return false;
    return true;
}

bool diag_invertible(const Factorisation& F, double inv_tol) { return diag_invertible(F.L, inv_tol); }

bool relate_triangular_factors(const OpMatrix& L1, const OpMatrix& L2, double tol, double inv_tol) {
    if (!is_lower_triangular(L1) || !is_lower_triangular(L2) || L1.rows() != L2.rows())
        throw Error(ErrorKind::PreconditionViolated, "factors must be square lower triangular of equal size");
    if (!diag_invertible(L1, inv_tol) || !diag_invertible(L2, inv_tol))
        throw Error(ErrorKind::PreconditionViolated, "factor diagonals must be invertible in R∞");
    double dg = max_abs_diff(matmul(L1, adjoint_matrix(L1)), matmul(L2, adjoint_matrix(L2)));
    if (dg > tol) throw Error(ErrorKind::PreconditionViolated, "Grams differ by " + std::to_string(dg));

    OpMatrix R = L1;
    for (int j = 0; j < L1.cols(); ++j) {
        ShiftOp d = mul(inv_rinf(L1(j, j), inv_tol), L2(j, j));
        for (int i = j; i < L1.rows(); ++i) R(i, j) = mul(L1(i, j), d);
    }
    return max_abs_diff(R, L2) <= tol;
}

PermutationReport enumerate_permutation_cholesky(const OpMatrix& M, const Tolerances& tol) {
    const int m = M.cols();
    if (m > 6) throw Error(ErrorKind::TooLarge, "permutation enumeration limited to 6 columns");
    PermutationReport rep;
    rep.limit = coefficient_sum(gram(M));

    std::vector<int> image(m);
    for (int i = 0; i < m; ++i) image[i] = i;
    do {
        PermutationRecord rec;
        rec.P = Permutation(image);
        OpMatrix MP = permute_cols(M, rec.P);
        OpMatrix G = gram(MP);
        Eigen::LLT<Eigen::MatrixXd> llt(coefficient_sum(G));
        if (llt.info() != Eigen::Success) throw Error(ErrorKind::NotPSD, "limit matrix is not positive definite");
        rec.real_factor = llt.matrixL();
        rec.compatible = dominates(sparsity(G), pattern_of(rec.real_factor, 1e-9));
        if (rec.compatible) {
            ++rep.compatible;
            try {
                Factorisation F = cholesky_tree(MP, tol);
                if (F.P.is_identity()) {
                    rec.factored = true;
                    for (int i = 0; i < m; ++i)
                        for (const auto& [mono, c] : F.L(i, i).terms())
                            if (mono.istar >= 1) rec.qq_coeff = std::max(rec.qq_coeff, std::abs(c));
                } else {
                    rec.note = "factorisation reordered the columns";
                }
            } catch (const Error& e) {
                rec.note = e.what();
            }
        }
        rep.records.push_back(std::move(rec));
        ++rep.total;
    } while (std::next_permutation(image.begin(), image.end()));
    return rep;
}

}  // namespace shiftchol
