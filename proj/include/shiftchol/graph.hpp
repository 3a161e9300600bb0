#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "shiftchol/op_matrix.hpp"

namespace shiftchol {

class UndirectedGraph {
public:
    using Edge = std::pair<int, int>;

    UndirectedGraph() = default;
    /// Validates: no self-loops, no duplicate edges, indices in range.
    UndirectedGraph(int n_vertices, std::vector<Edge> edges);

    int n_vertices() const { return n_; }
    int n_edges() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }

    bool incident(int v, int e) const { return edges_[e].first == v || edges_[e].second == v; }
    bool adjacent(int u, int v) const { return adj_[u][v] != 0; }
    std::vector<int> neighbours(int v) const;
    int degree(int v) const;

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<char>> adj_;
};

class DirectedGraph {
public:
    struct Arc {
        int from;
        int to;
    };

    DirectedGraph() = default;
    DirectedGraph(int n_vertices, std::vector<Arc> arcs);

    int n_vertices() const { return n_; }
    int n_arcs() const { return static_cast<int>(arcs_.size()); }
    const std::vector<Arc>& arcs() const { return arcs_; }
    const UndirectedGraph& underlying() const { return und_; }

private:
    int n_ = 0;
    std::vector<Arc> arcs_;
    UndirectedGraph und_;
};

bool is_forest(const UndirectedGraph& G);
bool is_tree(const UndirectedGraph& G);
bool is_connected(const UndirectedGraph& G);

UndirectedGraph edge_graph(const UndirectedGraph& G);

/// Maximum cardinality search visit order, lowest index among ties.
std::vector<int> mcs_order(const UndirectedGraph& G);
/// True iff every vertex's later neighbours in `elim` form a clique.
bool is_perfect_elimination_order(const UndirectedGraph& G, const std::vector<int>& elim);
bool is_chordal(const UndirectedGraph& G);

/// Exhaustive simple-cycle search; at most 12 vertices.
bool has_cycle_geq(const UndirectedGraph& G, int k);

UndirectedGraph cycle_graph(int n);
UndirectedGraph path_graph(int n);

/// -1 on the diagonal, q* on the subdiagonal and in the top-right corner.
OpMatrix build_cycle_matrix(int n);
ShiftOp cycle_schur_closed_form(int n);
/// The closed form with the opposite sign on the Σ (q*)^i q^i term; it does not match the truncation.
ShiftOp cycle_schur_opposite_sign(int n);

/// Schur complement of the first n-1 columns of the truncated Gram of the cycle matrix.
Eigen::MatrixXd cycle_schur_truncated(int n, int T);
/// Max deviation between cycle_schur_truncated and the truncation of `x` on the leading block.
double cycle_schur_residual(const ShiftOp& x, int n, int T, int lead);

}  // namespace shiftchol
