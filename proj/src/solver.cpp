#include "shiftchol/solver.hpp"

#include <cmath>

namespace shiftchol {

namespace {

using Seq = SequenceSpace::Seq;

void check_square_lower(const OpMatrix& L, std::size_t n_rhs) {
    if (!is_lower_triangular(L)) throw Error(ErrorKind::PreconditionViolated, "L must be square lower triangular");
    if (std::size_t(L.rows()) != n_rhs) throw Error(ErrorKind::DimensionMismatch, "right-hand side length differs from L");
}

std::vector<Seq> flatten(const SequenceSpace& S, const std::vector<Triple>& w) {
    std::vector<Seq> out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i].outputs() != 1) throw Error(ErrorKind::DimensionMismatch, "right-hand side entries must be scalar sequences");
        out.push_back(S.embedded(int(i))[0]);
    }
    return out;
}

std::vector<Triple> export_all(const SequenceSpace& S, const std::vector<Seq>& v) {
    std::vector<Triple> out;
    out.reserve(v.size());
    for (const Seq& s : v) out.push_back(S.to_triple(s));
    return out;
}

PartialSums inverse_weights(const ShiftOp& d, const Tolerances& tol) { return to_partial_sums(inv_rinf(d, tol.inv_tol)); }

std::vector<Seq> lower_pass(const SequenceSpace& S, const OpMatrix& L, const std::vector<Seq>& w, const Tolerances& tol) {
    const int n = L.rows();
    std::vector<Seq> v(n);
    for (int k = 0; k < n; ++k) {
        Seq acc = w[k];
        for (int i = 0; i < k; ++i)
            if (!L(k, i).is_zero()) acc = S.add(acc, S.apply(scale(-1.0, L(k, i)), v[i]));
        v[k] = S.scale_pointwise(inverse_weights(L(k, k), tol), acc);
    }
    return v;
}

std::vector<Seq> upper_adjoint_pass(const SequenceSpace& S, const OpMatrix& L, const std::vector<Seq>& v,
                                    const Tolerances& tol) {
    const int n = L.rows();
    std::vector<Seq> y(n);
    for (int k = n - 1; k >= 0; --k) {
        Seq acc = v[k];
        for (int i = k + 1; i < n; ++i)
            if (!L(i, k).is_zero()) acc = S.add(acc, S.apply(scale(-1.0, adjoint(L(i, k))), y[i]));
        // diagonal entries lie in R∞ and are self-adjoint
        y[k] = S.scale_pointwise(inverse_weights(L(k, k), tol), acc);
    }
    return y;
}

std::vector<Seq> normal_pass(const SequenceSpace& S, const Factorisation& F, const std::vector<Seq>& w,
                             const Tolerances& tol) {
    const int n = F.L.rows();
    std::vector<Seq> wbar(n);
    for (int k = 0; k < n; ++k) wbar[k] = w[F.P[k]];
    std::vector<Seq> y = upper_adjoint_pass(S, F.L, lower_pass(S, F.L, wbar, tol), tol);
    std::vector<Seq> z(n);
    for (int k = 0; k < n; ++k) z[F.P[k]] = y[k];
    return z;
}

}  // namespace

SparsityPattern real_pattern(const Eigen::MatrixXd& A, double tol) { return pattern_of(A, tol); }

std::vector<Triple> solve_lower(const OpMatrix& L, const std::vector<Triple>& w, const Tolerances& tol) {
    check_square_lower(L, w.size());
    SequenceSpace S(w);
    return export_all(S, lower_pass(S, L, flatten(S, w), tol));
}

std::vector<Triple> solve_upper_adjoint(const OpMatrix& L, const std::vector<Triple>& v, const Tolerances& tol) {
    check_square_lower(L, v.size());
    SequenceSpace S(v);
    return export_all(S, upper_adjoint_pass(S, L, flatten(S, v), tol));
}

std::vector<Triple> solve_normal(const Factorisation& F, const std::vector<Triple>& w, const Tolerances& tol) {
    check_square_lower(F.L, w.size());
    SequenceSpace S(w);
    return export_all(S, normal_pass(S, F, flatten(S, w), tol));
}

std::vector<Triple> apply_matrix(const OpMatrix& A, const std::vector<Triple>& x) {
    if (std::size_t(A.cols()) != x.size()) throw Error(ErrorKind::DimensionMismatch, "apply_matrix: length mismatch");
    SequenceSpace S(x);
    std::vector<Seq> xs = flatten(S, x);
    std::vector<Seq> y(A.rows(), S.zero());
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j)
            if (!A(i, j).is_zero()) y[i] = S.add(y[i], S.apply(A(i, j), xs[j]));
    return export_all(S, y);
}

bool has_sparse_law_form(const OpMatrix& L, double inv_tol) {
    if (!is_lower_triangular(L)) return false;
    for (int i = 0; i < L.rows(); ++i)
        for (int j = 0; j <= i; ++j)
            for (const auto& [m, c] : L(i, j).terms()) {
                if (m.istar != 0 || m.j > 1) return false;
                if (i == j && m.j != 0) return false;
            }
    for (int i = 0; i < L.rows(); ++i)
        if (std::abs(L(i, i).coeff(0, 0)) <= inv_tol) return false;
    return true;
}

Eigen::MatrixXd extract_sparse_law(const OpMatrix& L, double r, double inv_tol) {
    if (!has_sparse_law_form(L, inv_tol))
        throw Error(ErrorKind::NotLemma3Shape, "factor is not of the form L0 + L1 q with invertible L0");
    if (!(r > 0.0 && r < 1.0)) throw Error(ErrorKind::PreconditionViolated, "discount must lie in (0,1)");
    Eigen::MatrixXd L0 = L.coeff_matrix(0, 0), L1 = L.coeff_matrix(0, 1);
    return (L0 + r * L1) * L0.transpose();
}

Eigen::MatrixXd extract_dense_gain(const Factorisation& F, const std::vector<Triple>& w_bundle, const Tolerances& tol) {
    check_square_lower(F.L, w_bundle.size());
    SequenceSpace S(w_bundle);
    std::vector<Seq> z = normal_pass(S, F, flatten(S, w_bundle), tol);
    Eigen::MatrixXd K(z.size(), S.bundle());
    for (std::size_t e = 0; e < z.size(); ++e) K.row(e) = S.sample(z[e], 0);
    return K;
}

}  // namespace shiftchol
