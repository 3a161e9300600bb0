#pragma once

#include <string>

#include <Eigen/Dense>
#include "json.hpp"

#include "shiftchol/cholesky.hpp"
#include "shiftchol/graph.hpp"
#include "shiftchol/lqr.hpp"
#include "shiftchol/sequence.hpp"
#include "shiftchol/solver.hpp"

namespace shiftchol {

using Json = nlohmann::json;

/// Parses text, raising Schema on malformed input.
Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);
/// Two-space indented, keys sorted.
std::string dump_json(const Json& j);

Json to_json(const ShiftOp& x);
/// Loaded operators prune coefficients with |c| <= zero_tol.
ShiftOp shiftop_from_json(const Json& j, double zero_tol = Tolerances{}.zero_tol);

Json to_json(const Eigen::MatrixXd& A);
Eigen::MatrixXd matrix_from_json(const Json& j);
Json to_json(const SparsityPattern& p);

Json to_json(const OpMatrix& M);
OpMatrix opmatrix_from_json(const Json& j, double zero_tol = Tolerances{}.zero_tol);

Json to_json(const UndirectedGraph& G);
UndirectedGraph undirected_from_json(const Json& j);
Json to_json(const DirectedGraph& G);
DirectedGraph directed_from_json(const Json& j);

Json to_json(const Network& net);
Network network_from_json(const Json& j);

Json to_json(const Factorisation& F);
Factorisation factorisation_from_json(const Json& j);

Json to_json(const ControlLaw& law);
Json to_json(const Triple& T);
Triple triple_from_json(const Json& j);

Json to_json(const VerifyReport& rep);

/// Matrix in M_G given as a graph plus one entry per incidence:
/// {"graph": {...}, "entries": [{"vertex": v, "edge": e, "alpha": ShiftOp, "shift": k, "form": "q" | "qstar"}]}
/// where form "q" gives alpha q^k and "qstar" gives (q*)^k alpha.
OpMatrix generator_from_json(const Json& j, double zero_tol = Tolerances{}.zero_tol);
/// Either an OpMatrix document or a generator spec.
OpMatrix factor_input_from_json(const Json& j, double zero_tol = Tolerances{}.zero_tol);

}  // namespace shiftchol
