#include "shiftchol/graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace shiftchol {

UndirectedGraph::UndirectedGraph(int n_vertices, std::vector<Edge> edges)
    : n_(n_vertices), edges_(std::move(edges)), adj_(n_vertices, std::vector<char>(n_vertices, 0)) {
    if (n_ < 0) throw Error(ErrorKind::InvalidGraph, "negative vertex count");
    for (const auto& [u, v] : edges_) {
        if (u < 0 || v < 0 || u >= n_ || v >= n_) throw Error(ErrorKind::InvalidGraph, "edge endpoint out of range");
        if (u == v) throw Error(ErrorKind::InvalidGraph, "self-loop at vertex " + std::to_string(u));
        if (adj_[u][v]) throw Error(ErrorKind::InvalidGraph, "duplicate edge");
        adj_[u][v] = adj_[v][u] = 1;
    }
}

std::vector<int> UndirectedGraph::neighbours(int v) const {
    std::vector<int> out;
    for (int u = 0; u < n_; ++u)
        if (adj_[v][u]) out.push_back(u);
    return out;
}

int UndirectedGraph::degree(int v) const {
    return static_cast<int>(std::count(adj_[v].begin(), adj_[v].end(), char(1)));
}

namespace {

std::vector<UndirectedGraph::Edge> undirected_edges(const std::vector<DirectedGraph::Arc>& arcs) {
    std::vector<UndirectedGraph::Edge> e;
    e.reserve(arcs.size());
    for (const auto& a : arcs) e.emplace_back(a.from, a.to);
    return e;
}

struct DisjointSets {
    std::vector<int> parent;
    explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

}  // namespace

DirectedGraph::DirectedGraph(int n_vertices, std::vector<Arc> arcs)
    : n_(n_vertices), arcs_(std::move(arcs)), und_(n_vertices, undirected_edges(arcs_)) {}

bool is_forest(const UndirectedGraph& G) {
    DisjointSets ds(G.n_vertices());
    for (const auto& [u, v] : G.edges())
        if (!ds.unite(u, v)) return false;
    return true;
}

bool is_connected(const UndirectedGraph& G) {
    if (G.n_vertices() == 0) return true;
    DisjointSets ds(G.n_vertices());
    int components = G.n_vertices();
    for (const auto& [u, v] : G.edges())
        if (ds.unite(u, v)) --components;
    return components == 1;
}

bool is_tree(const UndirectedGraph& G) {
    return G.n_vertices() > 0 && G.n_edges() == G.n_vertices() - 1 && is_connected(G);
}

UndirectedGraph edge_graph(const UndirectedGraph& G) {
    std::vector<UndirectedGraph::Edge> out;
    const auto& E = G.edges();
    for (int a = 0; a < G.n_edges(); ++a)
        for (int b = a + 1; b < G.n_edges(); ++b) {
            int shared = (E[a].first == E[b].first) + (E[a].first == E[b].second) + (E[a].second == E[b].first) +
                         (E[a].second == E[b].second);
            if (shared == 1) out.emplace_back(a, b);
        }
    return UndirectedGraph(G.n_edges(), std::move(out));
}

std::vector<int> mcs_order(const UndirectedGraph& G) {
    const int n = G.n_vertices();
    std::vector<int> weight(n, 0), order;
    std::vector<char> done(n, 0);
    order.reserve(n);
    for (int step = 0; step < n; ++step) {
        int best = -1;
        for (int v = 0; v < n; ++v)
            if (!done[v] && (best < 0 || weight[v] > weight[best])) best = v;
        done[best] = 1;
        order.push_back(best);
        for (int u : G.neighbours(best))
            if (!done[u]) ++weight[u];
    }
    return order;
}

bool is_perfect_elimination_order(const UndirectedGraph& G, const std::vector<int>& elim) {
    const int n = G.n_vertices();
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[elim[i]] = i;
    for (int v : elim) {
        std::vector<int> later;
        for (int u : G.neighbours(v))
            if (pos[u] > pos[v]) later.push_back(u);
        for (std::size_t a = 0; a < later.size(); ++a)
            for (std::size_t b = a + 1; b < later.size(); ++b)
                if (!G.adjacent(later[a], later[b])) return false;
    }
    return true;
}

bool is_chordal(const UndirectedGraph& G) {
    // the reverse of an MCS visit order is a perfect elimination order iff G is chordal
    std::vector<int> elim = mcs_order(G);
    std::reverse(elim.begin(), elim.end());
    return is_perfect_elimination_order(G, elim);
}

bool has_cycle_geq(const UndirectedGraph& G, int k) {
    if (k < 3) throw Error(ErrorKind::PreconditionViolated, "has_cycle_geq needs k >= 3");
    const int n = G.n_vertices();
    if (n > 12) throw Error(ErrorKind::TooLarge, "cycle search limited to 12 vertices");
    // each cycle is found from its smallest vertex s, walking only through vertices > s
    std::vector<char> on_path(n, 0);
    std::function<bool(int, int, int)> dfs = [&](int s, int v, int len) {
        for (int u : G.neighbours(v)) {
            if (u == s && len >= k) return true;
            if (u <= s || on_path[u]) continue;
            on_path[u] = 1;
            bool found = dfs(s, u, len + 1);
            on_path[u] = 0;
            if (found) return true;
        }
        return false;
    };
    for (int s = 0; s < n; ++s) {
        on_path[s] = 1;
        bool found = dfs(s, s, 1);
        on_path[s] = 0;
        if (found) return true;
    }
    return false;
}

UndirectedGraph cycle_graph(int n) {
    std::vector<UndirectedGraph::Edge> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return UndirectedGraph(n, std::move(e));
}

UndirectedGraph path_graph(int n) {
    std::vector<UndirectedGraph::Edge> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return UndirectedGraph(n, std::move(e));
}

OpMatrix build_cycle_matrix(int n) {
    if (n < 3) throw Error(ErrorKind::PreconditionViolated, "cycle needs n >= 3");
    OpMatrix M(n, n);
    for (int i = 0; i < n; ++i) M(i, i) = ShiftOp::constant(-1.0);
    for (int i = 1; i < n; ++i) M(i, i - 1) = ShiftOp::qstar();
    M(0, n - 1) = ShiftOp::qstar();
    return M;
}

namespace {

ShiftOp cycle_schur(int n, double sum_sign) {
    if (n < 3) throw Error(ErrorKind::PreconditionViolated, "cycle needs n >= 3");
    ShiftOp x = ShiftOp::constant((n + 1.0) / n);
    x.accumulate({0, n}, -1.0 / n);
    x.accumulate({n, 0}, -1.0 / n);
    for (int i = 1; i < n; ++i) x.accumulate({i, i}, sum_sign / (i * (i + 1.0)));
    return x;
}

}  // namespace

ShiftOp cycle_schur_closed_form(int n) { return cycle_schur(n, -1.0); }

ShiftOp cycle_schur_opposite_sign(int n) { return cycle_schur(n, +1.0); }

Eigen::MatrixXd cycle_schur_truncated(int n, int T) {
    Eigen::MatrixXd N = to_truncation(gram(build_cycle_matrix(n)), T);
    const int k = (n - 1) * T;
    Eigen::MatrixXd N11 = N.topLeftCorner(k, k);
    return N.bottomRightCorner(T, T) - N.bottomLeftCorner(T, k) * N11.llt().solve(N.topRightCorner(k, T));
}

double cycle_schur_residual(const ShiftOp& x, int n, int T, int lead) {
    Eigen::MatrixXd S = cycle_schur_truncated(n, T);
    Eigen::MatrixXd X = to_truncation(x, T);
    return (S.topLeftCorner(lead, lead) - X.topLeftCorner(lead, lead)).cwiseAbs().maxCoeff();
}

}  // namespace shiftchol
