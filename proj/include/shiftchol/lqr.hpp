#pragma once

#include <vector>

#include <Eigen/Dense>

#include "shiftchol/cholesky.hpp"
#include "shiftchol/graph.hpp"
#include "shiftchol/solver.hpp"

namespace shiftchol {

/// Storage facilities (vertices) joined by one-step transportation links (arcs), with discount r.
struct Network {
    DirectedGraph graph;
    double r = 0.0;

    Network() = default;
    /// Validates 0 < r < 1 and that the underlying graph is a forest.
    Network(DirectedGraph g, double r);
};

/// State order: vertex levels (vertex order), then link buffers (arc order).
struct StateSpace {
    Eigen::MatrixXd A, B, C;
    int n_vertices = 0;

    int nx() const { return int(A.rows()); }
    int nu() const { return int(B.cols()); }
    int ny() const { return int(C.rows()); }
};

StateSpace build_state_space(const Network& net);
/// M[v, e] = -1 if e leaves v, r q* if e enters v.
OpMatrix build_operator_matrix(const Network& net);

/// State indices in the interleaved display order v0, a0, v1, a1, ... (remaining vertices or arcs last).
std::vector<int> interleaved_order(int n_vertices, int n_arcs);
/// Columns of a matrix over states, reordered for display.
Eigen::MatrixXd to_interleaved(const Eigen::MatrixXd& K, int n_vertices);

/// d = (C x0, (C rA - r C) x0, 0, ...), one bundle column per column of X0.
Triple initial_effect(const StateSpace& ss, double r, const Eigen::MatrixXd& X0);
/// y_init solving (1 - r q*) y_init = d, realised with the accumulator y[k] = r y[k-1] + d[k].
Triple resolvent(const Triple& d, double r);
/// w = -q M* y_init, one scalar triple per arc.
std::vector<Triple> build_rhs(const Network& net, const StateSpace& ss, const Eigen::MatrixXd& X0);
/// (M0ᵀ + r M1ᵀ) C rA, the coefficient of the geometric right-hand side.
Eigen::MatrixXd rhs_coefficient(const Network& net, const StateSpace& ss);
/// w[k] = -r^k (M0ᵀ + r M1ᵀ) C rA x0, valid when A = A².
std::vector<Triple> build_rhs_simplified(const Network& net, const StateSpace& ss, const Eigen::MatrixXd& X0);

struct LqrSolution {
    ControlLaw law;  // K1 u = -K2 x̄, u = -K x̄
    Factorisation factor;
    StateSpace ss;
};

LqrSolution solve_lqr(const Network& net, const Tolerances& tol = {});

struct RiccatiResult {
    Eigen::MatrixXd G;  // u = -G x̄
    Eigen::MatrixXd P;
    int iterations = 0;
    int rank = 0;  // rank of BᵀPB at the fixed point
    double residual = 0.0;
};

/// Value iteration on the discounted problem x̄[k+1] = rA x̄ + B u, cost Σ |C x̄|².
RiccatiResult dp_riccati_gain(const StateSpace& ss, double r, int horizon = 200000, double tol = 1e-13);

/// Σ_{k<steps} |C x̄[k]|² under u = -K x̄.
double closed_loop_cost(const StateSpace& ss, double r, const Eigen::MatrixXd& K, const Eigen::VectorXd& x0,
                        int steps = 200);

struct VerifyReport {
    double deviation = 0.0;  // max |K - G|
    double cost_factor = 0.0;
    double cost_dp = 0.0;
    int riccati_iterations = 0;
    int riccati_rank = 0;
    int nnz_K1 = -1;  // -1 when no sparse law exists
    int nnz_K2 = 0;
    int nnz_K = 0;
};

VerifyReport verify(const Network& net, const Tolerances& tol = {}, unsigned seed = 1);

}  // namespace shiftchol
