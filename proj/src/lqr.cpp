#include "shiftchol/lqr.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace shiftchol {

Network::Network(DirectedGraph g, double r_) : graph(std::move(g)), r(r_) {
    if (!(r > 0.0 && r < 1.0)) throw Error(ErrorKind::PreconditionViolated, "discount must lie in (0,1)");
    if (!is_forest(graph.underlying()))
        throw Error(ErrorKind::NotAForest, "network contains a cycle; only tree (forest) topologies are supported");
}

StateSpace build_state_space(const Network& net) {
    const int nv = net.graph.n_vertices(), na = net.graph.n_arcs(), nx = nv + na;
    StateSpace ss;
    ss.n_vertices = nv;
    ss.A = Eigen::MatrixXd::Zero(nx, nx);
    ss.B = Eigen::MatrixXd::Zero(nx, na);
    ss.C = Eigen::MatrixXd::Zero(nv, nx);
    for (int v = 0; v < nv; ++v) {
        ss.A(v, v) = 1.0;
        ss.C(v, v) = 1.0;
    }
    for (int e = 0; e < na; ++e) {
        const auto& a = net.graph.arcs()[e];
        ss.A(a.to, nv + e) = 1.0;
        ss.B(nv + e, e) = 1.0;
        ss.B(a.from, e) = -1.0;
    }
    return ss;
}

OpMatrix build_operator_matrix(const Network& net) {
    OpMatrix M(net.graph.n_vertices(), net.graph.n_arcs());
    for (int e = 0; e < net.graph.n_arcs(); ++e) {
        const auto& a = net.graph.arcs()[e];
        M(a.from, e) = ShiftOp::constant(-1.0);
        M(a.to, e) = ShiftOp::qstar(1, net.r);
    }
    return M;
}

std::vector<int> interleaved_order(int n_vertices, int n_arcs) {
    std::vector<int> order;
    for (int i = 0; i < std::max(n_vertices, n_arcs); ++i) {
        if (i < n_vertices) order.push_back(i);
        if (i < n_arcs) order.push_back(n_vertices + i);
    }
    return order;
}

Eigen::MatrixXd to_interleaved(const Eigen::MatrixXd& K, int n_vertices) {
    std::vector<int> order = interleaved_order(n_vertices, int(K.cols()) - n_vertices);
    Eigen::MatrixXd out(K.rows(), K.cols());
    for (std::size_t p = 0; p < order.size(); ++p) out.col(p) = K.col(order[p]);
    return out;
}

Triple initial_effect(const StateSpace& ss, double r, const Eigen::MatrixXd& X0) {
    if (X0.rows() != ss.nx()) throw Error(ErrorKind::DimensionMismatch, "initial condition has the wrong length");
    return Triple::finite({ss.C * X0, (r * ss.C * ss.A - r * ss.C) * X0});
}

Triple resolvent(const Triple& d, double r) {
    const int m = d.state_dim(), p = d.outputs();
    Triple y{Eigen::MatrixXd(p, m + p), Eigen::MatrixXd::Zero(m + p, m + p), Eigen::MatrixXd::Zero(m + p, d.bundle())};
    // state (ξ[k], y[k-1]) with y[k] = C_d ξ[k] + r y[k-1]
    y.C << d.C, r * Eigen::MatrixXd::Identity(p, p);
    y.A.topLeftCorner(m, m) = d.A;
    y.A.bottomRows(p) = y.C;
    y.X0.topRows(m) = d.X0;
    return y;
}

std::vector<Triple> build_rhs(const Network& net, const StateSpace& ss, const Eigen::MatrixXd& X0) {
    const OpMatrix M = build_operator_matrix(net);
    const Triple qy = apply_q(resolvent(initial_effect(ss, net.r, X0), net.r));
    std::vector<Triple> w;
    for (int e = 0; e < M.cols(); ++e) {
        Triple acc = Triple::zero(1, int(X0.cols()));
        for (int v = 0; v < M.rows(); ++v)
            if (!M(v, e).is_zero()) acc = add(acc, apply_shiftop(scale(-1.0, adjoint(M(v, e))), select_output(qy, v)));
        w.push_back(acc);
    }
    return w;
}

Eigen::MatrixXd rhs_coefficient(const Network& net, const StateSpace& ss) {
    const OpMatrix Mt = adjoint_matrix(build_operator_matrix(net));
    return (Mt.coeff_matrix(0, 0) + net.r * Mt.coeff_matrix(0, 1)) * ss.C * (net.r * ss.A);
}

std::vector<Triple> build_rhs_simplified(const Network& net, const StateSpace& ss, const Eigen::MatrixXd& X0) {
    if (X0.rows() != ss.nx()) throw Error(ErrorKind::DimensionMismatch, "initial condition has the wrong length");
    const Eigen::MatrixXd K2 = rhs_coefficient(net, ss);
    std::vector<Triple> w;
    for (int e = 0; e < K2.rows(); ++e) w.push_back(Triple::geometric(-K2.row(e), net.r, X0));
    return w;
}

LqrSolution solve_lqr(const Network& net, const Tolerances& tol) {
    LqrSolution out;
    out.ss = build_state_space(net);
    out.factor = cholesky_tree(build_operator_matrix(net), tol);
    const Factorisation& F = out.factor;
    if (!diag_invertible(F, tol.inv_tol))
        throw Error(ErrorKind::Singular, "factor diagonal is not invertible; the optimal input is not unique");

    const int nu = out.ss.nu(), nx = out.ss.nx();
    ControlLaw& law = out.law;
    law.K2 = rhs_coefficient(net, out.ss);
    law.K = -extract_dense_gain(F, build_rhs(net, out.ss, Eigen::MatrixXd::Identity(nx, nx)), tol);
    law.K.array() += 0.0;  // no negative zeros in the output

    if (has_sparse_law_form(F.L, tol.inv_tol)) {
        const Eigen::MatrixXd K1p = extract_sparse_law(F.L, net.r, tol.inv_tol);
        // the factor acts on permuted arcs: K1 = P K1' Pᵀ
        Eigen::MatrixXd K1(nu, nu);
        for (int i = 0; i < nu; ++i)
            for (int j = 0; j < nu; ++j) K1(F.P[i], F.P[j]) = K1p(i, j);
        Eigen::FullPivLU<Eigen::MatrixXd> lu(K1);
        if (!lu.isInvertible()) throw Error(ErrorKind::Singular, "K1 is singular");
        const double scale = std::max(1.0, law.K.cwiseAbs().maxCoeff());
        const double gap = (lu.solve(law.K2) - law.K).cwiseAbs().maxCoeff();
        if (gap > 1e-9 * scale)
            throw Error(ErrorKind::VerificationFailed, "sparse and dense laws differ by " + std::to_string(gap));
        law.K1 = K1;
    }
    return out;
}

namespace {

Eigen::MatrixXd thresholded_pinv(const Eigen::MatrixXd& S, int& rank) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(S, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd& s = svd.singularValues();
    const double cut = 1e-10 * (s.size() ? s(0) : 0.0);
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
    rank = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > cut && s(i) > 0.0) {
            inv(i) = 1.0 / s(i);
            ++rank;
        }
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

}  // namespace

RiccatiResult dp_riccati_gain(const StateSpace& ss, double r, int horizon, double tol) {
    if (horizon < 1) throw Error(ErrorKind::PreconditionViolated, "horizon must be positive");
    const Eigen::MatrixXd Abar = r * ss.A, CtC = ss.C.transpose() * ss.C;
    RiccatiResult res;
    res.P = Eigen::MatrixXd::Zero(ss.nx(), ss.nx());
    Eigen::MatrixXd Sp;
    for (res.iterations = 1; res.iterations <= horizon; ++res.iterations) {
        Sp = thresholded_pinv(ss.B.transpose() * res.P * ss.B, res.rank);
        const Eigen::MatrixXd PB = res.P * ss.B;
        Eigen::MatrixXd Pn = CtC + Abar.transpose() * (res.P - PB * Sp * PB.transpose()) * Abar;
        Pn = 0.5 * (Pn + Pn.transpose()).eval();
        res.residual = (Pn - res.P).cwiseAbs().maxCoeff();
        res.P = std::move(Pn);
        if (res.residual <= tol * std::max(1.0, res.P.cwiseAbs().maxCoeff())) break;
    }
    if (res.iterations > horizon) {
        res.iterations = horizon;
        if (res.residual > 100.0 * tol * std::max(1.0, res.P.cwiseAbs().maxCoeff()))
            throw Error(ErrorKind::NoConvergence, "value iteration residual " + std::to_string(res.residual));
    }
    Sp = thresholded_pinv(ss.B.transpose() * res.P * ss.B, res.rank);
    res.G = Sp * ss.B.transpose() * res.P * Abar;
    return res;
}

double closed_loop_cost(const StateSpace& ss, double r, const Eigen::MatrixXd& K, const Eigen::VectorXd& x0, int steps) {
    const Eigen::MatrixXd Acl = r * ss.A - ss.B * K;
    Eigen::VectorXd x = x0;
    double cost = 0.0;
    for (int k = 0; k < steps; ++k) {
        cost += (ss.C * x).squaredNorm();
        x = Acl * x;
    }
    return cost;
}

VerifyReport verify(const Network& net, const Tolerances& tol, unsigned seed) {
    LqrSolution sol = solve_lqr(net, tol);
    RiccatiResult dp = dp_riccati_gain(sol.ss, net.r);
    VerifyReport rep;
    rep.deviation = (sol.law.K - dp.G).cwiseAbs().maxCoeff();
    rep.riccati_iterations = dp.iterations;
    rep.riccati_rank = dp.rank;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::VectorXd x0 = Eigen::VectorXd::NullaryExpr(sol.ss.nx(), [&] { return U(rng); });
        rep.cost_factor += closed_loop_cost(sol.ss, net.r, sol.law.K, x0);
        rep.cost_dp += closed_loop_cost(sol.ss, net.r, dp.G, x0);
    }
    auto nnz = [](const Eigen::MatrixXd& A) { return int((A.array().abs() > 1e-9).count()); };
    if (sol.law.K1) rep.nnz_K1 = nnz(*sol.law.K1);
    rep.nnz_K2 = nnz(sol.law.K2);
    rep.nnz_K = nnz(sol.law.K);
    return rep;
}

}  // namespace shiftchol
