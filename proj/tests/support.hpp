// Shared generators and independent oracles for the test binaries.
#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "shiftchol/graph.hpp"
#include "shiftchol/op_matrix.hpp"
#include "shiftchol/shift_op.hpp"

namespace testsupport {

using namespace shiftchol;
using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline ShiftOp random_shiftop(Rng& rng, int max_deg, int n_terms) {
    ShiftOp x;
    for (int k = 0; k < n_terms; ++k) {
        int i = uniform_int(rng, 0, max_deg);
        int j = uniform_int(rng, 0, max_deg - i);
        x.accumulate({i, j}, uniform(rng, -1.0, 1.0));
    }
    return x;
}

/// R∞ element with partial sums of magnitude in [lo, hi] and random sign (or zero with prob p_zero).
inline ShiftOp random_rinf(Rng& rng, int max_k, double lo = 0.3, double hi = 2.0, bool signed_ = true,
                           double p_zero = 0.0) {
    PartialSums p;
    int K = uniform_int(rng, 0, max_k);
    auto draw = [&] {
        if (p_zero > 0 && uniform(rng, 0, 1) < p_zero) return 0.0;
        double v = uniform(rng, lo, hi);
        return signed_ && uniform(rng, 0, 1) < 0.5 ? -v : v;
    };
    for (int k = 0; k < K; ++k) p.sigma.push_back(draw());
    p.sigma_inf = draw();
    return from_partial_sums(p);
}

/// Direct sequence oracle: q drops the first sample, q* prepends a zero (length preserved).
inline std::vector<double> step_q(const std::vector<double>& s) {
    std::vector<double> r(s.begin() + 1, s.end());
    r.push_back(0.0);
    return r;
}

inline std::vector<double> step_qstar(const std::vector<double>& s) {
    std::vector<double> r{0.0};
    r.insert(r.end(), s.begin(), s.end() - 1);
    return r;
}

/// Apply x by composing single steps; correct on the leading len - lookahead samples.
inline std::vector<double> oracle_apply(const ShiftOp& x, const std::vector<double>& s) {
    std::vector<double> out(s.size(), 0.0);
    for (const auto& [m, c] : x.terms()) {
        std::vector<double> t = s;
        for (int k = 0; k < m.j; ++k) t = step_q(t);
        for (int k = 0; k < m.istar; ++k) t = step_qstar(t);
        for (std::size_t i = 0; i < s.size(); ++i) out[i] += c * t[i];
    }
    return out;
}

/// Random tree on n vertices, each vertex attached to a random earlier one, then relabelled.
inline std::vector<std::pair<int, int>> random_tree_edges(Rng& rng, int n) {
    std::vector<int> label(n);
    std::iota(label.begin(), label.end(), 0);
    std::shuffle(label.begin(), label.end(), rng);
    std::vector<std::pair<int, int>> e;
    for (int v = 1; v < n; ++v) {
        int u = uniform_int(rng, 0, v - 1);
        if (uniform(rng, 0, 1) < 0.5) e.emplace_back(label[u], label[v]);
        else e.emplace_back(label[v], label[u]);
    }
    std::shuffle(e.begin(), e.end(), rng);
    return e;
}

/// Random forest-structured operator matrix: each incidence holds α q^k or (q*)^k α, α ∈ R∞.
inline OpMatrix random_forest_matrix(Rng& rng, int max_edges, UndirectedGraph* graph_out = nullptr) {
    int n = uniform_int(rng, 2, max_edges + 1);
    auto edges = random_tree_edges(rng, n);
    // drop a few edges to get a forest
    int drop = uniform_int(rng, 0, std::min<int>(2, int(edges.size()) - 1));
    edges.resize(edges.size() - drop);
    UndirectedGraph G(n, edges);
    OpMatrix M(n, G.n_edges());
    for (int e = 0; e < G.n_edges(); ++e)
        for (int v : {edges[e].first, edges[e].second}) {
            ShiftOp alpha = random_rinf(rng, 2, 0.4, 1.5);
            int k = uniform_int(rng, 0, 2);
            M(v, e) = uniform(rng, 0, 1) < 0.5 ? mul(alpha, ShiftOp::q(k)) : mul(ShiftOp::qstar(k), alpha);
        }
    if (graph_out) *graph_out = G;
    return M;
}

/// All graphs on n vertices, by edge bitmask over the pairs (i<j).
inline std::vector<UndirectedGraph> all_graphs(int n) {
    std::vector<UndirectedGraph::Edge> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    std::vector<UndirectedGraph> out;
    for (unsigned long mask = 0; mask < (1ul << pairs.size()); ++mask) {
        std::vector<UndirectedGraph::Edge> e;
        for (std::size_t k = 0; k < pairs.size(); ++k)
            if (mask >> k & 1ul) e.push_back(pairs[k]);
        out.emplace_back(n, e);
    }
    return out;
}

inline double max_abs(const Eigen::MatrixXd& A) { return A.size() ? A.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace testsupport
