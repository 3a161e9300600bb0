// Reference matrices transcribed by hand for golden tests.
#pragma once

#include <cmath>

#include "shiftchol/lqr.hpp"
#include "shiftchol/op_matrix.hpp"

namespace fixtures {

using shiftchol::OpMatrix;
using shiftchol::ShiftOp;

/// 4 vertices on a path, 3 edges: q* above -1 in each column.
inline OpMatrix path_example() {
    OpMatrix M(4, 3);
    for (int j = 0; j < 3; ++j) {
        M(j, j) = ShiftOp::qstar();
        M(j + 1, j) = ShiftOp::constant(-1.0);
    }
    return M;
}

inline OpMatrix path_example_factor() {
    OpMatrix L(3, 3);
    L(0, 0) = ShiftOp::constant(std::sqrt(2.0));
    L(1, 0) = ShiftOp::q(1, -1.0 / std::sqrt(2.0));
    L(1, 1) = ShiftOp::constant(std::sqrt(1.5));
    L(2, 1) = ShiftOp::q(1, -std::sqrt(2.0 / 3.0));
    L(2, 2) = ShiftOp::constant(2.0 / std::sqrt(3.0));
    return L;
}

/// First reduced matrix of path_example.
inline OpMatrix path_example_reduced1() {
    OpMatrix M(3, 2);
    M(0, 0) = ShiftOp::qstar(1, 1.0 / std::sqrt(2.0));
    M(1, 0) = ShiftOp::constant(-1.0);
    M(1, 1) = ShiftOp::qstar();
    M(2, 1) = ShiftOp::constant(-1.0);
    return M;
}

inline OpMatrix path_example_reduced2() {
    OpMatrix M(2, 1);
    M(0, 0) = ShiftOp::qstar(1, 1.0 / std::sqrt(3.0));
    M(1, 0) = ShiftOp::constant(-1.0);
    return M;
}

/// 5 vertices, 4 links with alternating orientation and discount 1/√2.
inline OpMatrix alternating_line() {
    const double r = 1.0 / std::sqrt(2.0);
    OpMatrix M(5, 4);
    M(0, 0) = ShiftOp::constant(-1.0);
    M(1, 0) = ShiftOp::qstar(1, r);
    M(1, 1) = ShiftOp::constant(-1.0);
    M(2, 1) = ShiftOp::qstar(1, r);
    M(2, 2) = ShiftOp::qstar(1, r);
    M(3, 2) = ShiftOp::constant(-1.0);
    M(3, 3) = ShiftOp::qstar(1, r);
    M(4, 3) = ShiftOp::constant(-1.0);
    return M;
}

/// 3-link line factor at r = 1/√2.
inline OpMatrix line3_factor() {
    OpMatrix L(3, 3);
    L(0, 0) = ShiftOp::constant(std::sqrt(1.5));
    L(1, 0) = ShiftOp::q(1, -1.0 / std::sqrt(3.0));
    L(1, 1) = ShiftOp::constant(std::sqrt(7.0 / 6.0));
    L(2, 1) = ShiftOp::q(1, -std::sqrt(3.0 / 7.0));
    L(2, 2) = ShiftOp::constant(std::sqrt(15.0 / 14.0));
    return L;
}

using Arc = shiftchol::DirectedGraph::Arc;

/// n links in a line, link i carrying from facility i+1 to facility i.
inline shiftchol::Network line_network(int links, double r) {
    std::vector<Arc> arcs;
    for (int i = 0; i < links; ++i) arcs.push_back({i + 1, i});
    return {shiftchol::DirectedGraph(links + 1, arcs), r};
}

inline shiftchol::Network branching_tree(double r) { return {shiftchol::DirectedGraph(5, {{2, 0}, {3, 1}, {3, 2}, {4, 3}}), r}; }
inline shiftchol::Network merging_tree(double r) { return {shiftchol::DirectedGraph(5, {{2, 0}, {1, 3}, {2, 3}, {4, 3}}), r}; }
inline shiftchol::Network alternating_network(double r) { return {shiftchol::DirectedGraph(5, {{0, 1}, {1, 2}, {3, 2}, {4, 3}}), r}; }

/// 21 facilities, 20 links: facility 20 supplies hubs, and each hub supplies a cluster of leaves.
inline shiftchol::Network hub_tree(double r) {
    const int one_based[20][2] = {{4, 1},   {6, 2},   {6, 3},   {6, 4},   {6, 5},   {21, 6},  {9, 7},
                                  {9, 8},   {21, 9},  {12, 10}, {12, 11}, {21, 12}, {15, 13}, {15, 14},
                                  {21, 15}, {18, 16}, {18, 17}, {21, 18}, {20, 19}, {21, 20}};
    std::vector<Arc> arcs;
    for (const auto& a : one_based) arcs.push_back({a[0] - 1, a[1] - 1});
    return {shiftchol::DirectedGraph(21, arcs), r};
}

}  // namespace fixtures
