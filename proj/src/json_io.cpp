#include "shiftchol/json_io.hpp"

#include <fstream>
#include <sstream>

namespace shiftchol {

namespace {

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorKind::Schema, what); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) schema(std::string("expected an object with key '") + key + "'");
    auto it = j.find(key);
    if (it == j.end()) schema(std::string("missing key '") + key + "'");
    return *it;
}

int as_int(const Json& j, const char* what) {
    if (!j.is_number_integer()) schema(std::string(what) + " must be an integer");
    return j.get<int>();
}

double as_double(const Json& j, const char* what) {
    if (!j.is_number()) schema(std::string(what) + " must be a number");
    return j.get<double>();
}

const Json& as_array(const Json& j, const char* what) {
    if (!j.is_array()) schema(std::string(what) + " must be an array");
    return j;
}

/// Library errors raised while building from parsed input are reported as schema errors.
template <class F>
auto rethrow_as_schema(F f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Schema || e.kind() == ErrorKind::NotAForest) throw;
        schema(e.what());
    }
}

}  // namespace

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        schema(std::string("invalid JSON: ") + e.what());
    }
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) schema("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str());
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json to_json(const ShiftOp& x) {
    Json terms = Json::array();
    for (const auto& [m, c] : x.terms()) terms.push_back({{"istar", m.istar}, {"j", m.j}, {"c", c}});
    return {{"terms", terms}};
}

ShiftOp shiftop_from_json(const Json& j, double zero_tol) {
    ShiftOp x(zero_tol);
    for (const Json& t : as_array(field(j, "terms"), "terms")) {
        int i = as_int(field(t, "istar"), "istar"), k = as_int(field(t, "j"), "j");
        if (i < 0 || k < 0) schema("monomial powers must be non-negative");
        x.accumulate({i, k}, as_double(field(t, "c"), "c"));
    }
    return x;
}

Json to_json(const Eigen::MatrixXd& A) {
    Json rows = Json::array();
    for (int i = 0; i < A.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < A.cols(); ++j) row.push_back(A(i, j));
        rows.push_back(row);
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const Json& j) {
    as_array(j, "matrix");
    if (j.empty()) return Eigen::MatrixXd(0, 0);
    const std::size_t cols = as_array(j[0], "matrix row").size();
    Eigen::MatrixXd A(j.size(), cols);
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (as_array(j[i], "matrix row").size() != cols) schema("matrix rows differ in length");
        for (std::size_t k = 0; k < cols; ++k) A(i, k) = as_double(j[i][k], "matrix entry");
    }
    return A;
}

Json to_json(const SparsityPattern& p) {
    Json rows = Json::array();
    for (int i = 0; i < p.rows; ++i) {
        Json row = Json::array();
        for (int j = 0; j < p.cols; ++j) row.push_back(p(i, j) ? 1 : 0);
        rows.push_back(row);
    }
    return rows;
}

Json to_json(const OpMatrix& M) {
    Json entries = Json::array();
    for (int i = 0; i < M.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < M.cols(); ++j) row.push_back(to_json(M(i, j)));
        entries.push_back(row);
    }
    return {{"rows", M.rows()}, {"cols", M.cols()}, {"entries", entries}};
}

OpMatrix opmatrix_from_json(const Json& j, double zero_tol) {
    const int r = as_int(field(j, "rows"), "rows"), c = as_int(field(j, "cols"), "cols");
    if (r < 0 || c < 0) schema("negative matrix dimensions");
    const Json& e = as_array(field(j, "entries"), "entries");
    if (int(e.size()) != r) schema("entries has the wrong number of rows");
    OpMatrix M(r, c);
    for (int i = 0; i < r; ++i) {
        if (int(as_array(e[i], "entries row").size()) != c) schema("entries row has the wrong length");
        for (int k = 0; k < c; ++k) M(i, k) = shiftop_from_json(e[i][k], zero_tol);
    }
    return M;
}

Json to_json(const UndirectedGraph& G) {
    Json edges = Json::array();
    for (const auto& [u, v] : G.edges()) edges.push_back({u, v});
    return {{"vertices", G.n_vertices()}, {"edges", edges}};
}

UndirectedGraph undirected_from_json(const Json& j) {
    const int n = as_int(field(j, "vertices"), "vertices");
    std::vector<UndirectedGraph::Edge> edges;
    for (const Json& e : as_array(field(j, "edges"), "edges")) {
        if (!e.is_array() || e.size() != 2) schema("an edge must be a pair [u, v]");
        edges.emplace_back(as_int(e[0], "edge endpoint"), as_int(e[1], "edge endpoint"));
    }
    return rethrow_as_schema([&] { return UndirectedGraph(n, edges); });
}

Json to_json(const DirectedGraph& G) {
    Json arcs = Json::array();
    for (const auto& a : G.arcs()) arcs.push_back({{"from", a.from}, {"to", a.to}});
    return {{"vertices", G.n_vertices()}, {"arcs", arcs}};
}

DirectedGraph directed_from_json(const Json& j) {
    const int n = as_int(field(j, "vertices"), "vertices");
    std::vector<DirectedGraph::Arc> arcs;
    for (const Json& a : as_array(field(j, "arcs"), "arcs"))
        arcs.push_back({as_int(field(a, "from"), "from"), as_int(field(a, "to"), "to")});
    return rethrow_as_schema([&] { return DirectedGraph(n, arcs); });
}

Json to_json(const Network& net) {
    Json j = to_json(net.graph);
    j["discount"] = net.r;
    return j;
}

Network network_from_json(const Json& j) {
    DirectedGraph g = directed_from_json(j);
    const double r = as_double(field(j, "discount"), "discount");
    return rethrow_as_schema([&] { return Network(std::move(g), r); });
}

Json to_json(const Factorisation& F) {
    return {{"L", to_json(F.L)},
            {"P", F.P.image()},
            {"checks", {{"identity_resid", F.identity_resid}, {"fill_in_free", F.fill_in_free}}}};
}

Factorisation factorisation_from_json(const Json& j) {
    Factorisation F;
    F.L = opmatrix_from_json(field(j, "L"));
    std::vector<int> image;
    for (const Json& v : as_array(field(j, "P"), "P")) image.push_back(as_int(v, "P entry"));
    F.P = rethrow_as_schema([&] { return Permutation(image); });
    if (F.P.size() != F.L.cols()) schema("P and L disagree in size");
    if (j.contains("checks")) {
        const Json& c = j["checks"];
        F.identity_resid = as_double(field(c, "identity_resid"), "identity_resid");
        if (!field(c, "fill_in_free").is_boolean()) schema("fill_in_free must be a boolean");
        F.fill_in_free = c["fill_in_free"].get<bool>();
    }
    return F;
}

Json to_json(const ControlLaw& law) {
    Json j{{"K2", to_json(law.K2)}, {"K", to_json(law.K)}};
    j["K1"] = law.K1 ? to_json(*law.K1) : Json(nullptr);
    j["pattern"] = {{"K1", law.K1 ? to_json(real_pattern(*law.K1)) : Json(nullptr)},
                    {"K2", to_json(real_pattern(law.K2))},
                    {"K", to_json(real_pattern(law.K))}};
    return j;
}

Json to_json(const Triple& T) { return {{"C", to_json(T.C)}, {"A", to_json(T.A)}, {"x0", to_json(T.X0)}}; }

Triple triple_from_json(const Json& j) {
    Triple T{matrix_from_json(field(j, "C")), matrix_from_json(field(j, "A")), matrix_from_json(field(j, "x0"))};
    // empty arrays lose their inner dimension
    if (T.A.size() == 0) {
        T.A.resize(0, 0);
        if (T.C.size() == 0) T.C.resize(T.C.rows(), 0);
        if (T.X0.size() == 0) T.X0.resize(0, T.X0.cols());
    }
    if (T.C.cols() != T.A.rows() || T.A.rows() != T.A.cols() || T.X0.rows() != T.A.rows())
        schema("triple dimensions are inconsistent");
    return T;
}

Json to_json(const VerifyReport& rep) {
    return {{"deviation", rep.deviation},
            {"cost_factorised", rep.cost_factor},
            {"cost_riccati", rep.cost_dp},
            {"riccati_iterations", rep.riccati_iterations},
            {"riccati_rank", rep.riccati_rank},
            {"nnz", {{"K1", rep.nnz_K1 < 0 ? Json(nullptr) : Json(rep.nnz_K1)}, {"K2", rep.nnz_K2}, {"K", rep.nnz_K}}}};
}

OpMatrix generator_from_json(const Json& j, double zero_tol) {
    UndirectedGraph G = undirected_from_json(field(j, "graph"));
    OpMatrix M(G.n_vertices(), G.n_edges());
    for (const Json& e : as_array(field(j, "entries"), "entries")) {
        const int v = as_int(field(e, "vertex"), "vertex"), k = as_int(field(e, "edge"), "edge");
        if (k < 0 || k >= G.n_edges() || v < 0 || v >= G.n_vertices() || !G.incident(v, k))
            schema("entry (" + std::to_string(v) + ", " + std::to_string(k) + ") is not an incidence of the graph");
        ShiftOp alpha = shiftop_from_json(field(e, "alpha"), zero_tol);
        if (!is_rinf(alpha)) schema("alpha must be a pointwise scaling (terms with istar == j only)");
        const int shift = as_int(field(e, "shift"), "shift");
        if (shift < 0) schema("shift must be non-negative");
        const Json& form = field(e, "form");
        ShiftOp q_pow(zero_tol), qstar_pow(zero_tol);
        q_pow.accumulate({0, shift}, 1.0);
        qstar_pow.accumulate({shift, 0}, 1.0);
        if (form == "q") M(v, k) = mul(alpha, q_pow);
        else if (form == "qstar") M(v, k) = mul(qstar_pow, alpha);
        else schema("form must be \"q\" or \"qstar\"");
    }
    return M;
}

OpMatrix factor_input_from_json(const Json& j, double zero_tol) {
    if (j.is_object() && j.contains("graph")) return generator_from_json(j, zero_tol);
    return opmatrix_from_json(j, zero_tol);
}

}  // namespace shiftchol
