#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "shiftchol/cholesky.hpp"
#include "shiftchol/sequence.hpp"

namespace shiftchol {

/// Sparse implicit law K1 u[k] = -K2 x[k], equivalently u[k] = -K x[k] with K = K1^{-1} K2.
struct ControlLaw {
    std::optional<Eigen::MatrixXd> K1;  // present when the factor allows the sparse form
    Eigen::MatrixXd K2;
    Eigen::MatrixXd K;
};

/// Pattern of a real matrix with |entry| > tol.
SparsityPattern real_pattern(const Eigen::MatrixXd& A, double tol = 1e-9);

/// v with L v = w, L lower triangular with invertible diagonal.
std::vector<Triple> solve_lower(const OpMatrix& L, const std::vector<Triple>& w, const Tolerances& tol = {});
/// y with L* y = v.
std::vector<Triple> solve_upper_adjoint(const OpMatrix& L, const std::vector<Triple>& v, const Tolerances& tol = {});
/// z with M* M z = w, for the matrix M factored by F.
std::vector<Triple> solve_normal(const Factorisation& F, const std::vector<Triple>& w, const Tolerances& tol = {});

/// y = A x with A a matrix of operators.
std::vector<Triple> apply_matrix(const OpMatrix& A, const std::vector<Triple>& x);

/// L = L0 + L1 q with L0 real lower triangular invertible and L1 real strictly lower.
bool has_sparse_law_form(const OpMatrix& L, double inv_tol = Tolerances{}.inv_tol);
/// K1 = (L0 + r L1) L0ᵀ.
Eigen::MatrixXd extract_sparse_law(const OpMatrix& L, double r, double inv_tol = Tolerances{}.inv_tol);

/// Row e of the result is first(z_e) where z solves the normal equations for `w_bundle`,
/// whose triples carry one bundle column per basis initial condition.
Eigen::MatrixXd extract_dense_gain(const Factorisation& F, const std::vector<Triple>& w_bundle,
                                   const Tolerances& tol = {});

}  // namespace shiftchol
