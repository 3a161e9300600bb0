#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "shiftchol/op_matrix.hpp"

namespace shiftchol {

/// L L* = (M P)* (M P), L lower triangular with R∞ diagonal.
struct Factorisation {
    OpMatrix L;
    Permutation P;
    double identity_resid = 0.0;
    bool fill_in_free = true;
};

struct SchurReduction {
    ShiftOp n11;
    OpMatrix n21;  // (m-1)×1
    OpMatrix m_red;
};

/// One level of the recursion, recorded for inspection.
struct ReductionStep {
    Permutation col_perm;
    Permutation row_perm;
    SchurReduction reduction;
};

/// Swap of column 0 with the lowest-index leaf column.
Permutation leaf_edge_first_permutation(const OpMatrix& M);
/// Row order for a matrix whose column 0 is a leaf edge: leaf row first, shared row second.
Permutation vertices_first_permutation(const OpMatrix& M);
SchurReduction schur_reduce(const OpMatrix& M, const Tolerances& tol = {});

Factorisation cholesky_tree(const OpMatrix& M, const Tolerances& tol = {},
                            std::vector<ReductionStep>* trace = nullptr);

bool diag_invertible(const Factorisation& F, double inv_tol = Tolerances{}.inv_tol);
bool diag_invertible(const OpMatrix& L, double inv_tol = Tolerances{}.inv_tol);

/// Checks L2 = L1 diag(L1)^{-1} diag(L2) for factors of the same Gram.
bool relate_triangular_factors(const OpMatrix& L1, const OpMatrix& L2, double tol = 1e-9,
                               double inv_tol = Tolerances{}.inv_tol);

struct PermutationRecord {
    Permutation P;
    Eigen::MatrixXd real_factor;
    bool compatible = false;  // real factor has no entries outside the Gram pattern
    bool factored = false;    // operator factorisation ran in the given order
    double qq_coeff = 0.0;    // largest |coefficient| of (q*)^k q^k, k >= 1, on the factor diagonal
    std::string note;
};

struct PermutationReport {
    Eigen::MatrixXd limit;  // coefficient_sum(gram(M))
    std::vector<PermutationRecord> records;
    int compatible = 0;
    int total = 0;
};

PermutationReport enumerate_permutation_cholesky(const OpMatrix& M, const Tolerances& tol = {});

}  // namespace shiftchol
