#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "shiftchol/json_io.hpp"

using namespace shiftchol;

namespace {

enum Exit { kOk = 0, kStructural = 2, kInput = 3, kNumerical = 4 };

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::Schema:
        case ErrorKind::InvalidGraph:
        case ErrorKind::DimensionMismatch: return kInput;
        case ErrorKind::NoLeafEdge:
        case ErrorKind::NotAForest:
        case ErrorKind::MalformedColumn:
        case ErrorKind::PreconditionViolated:
        case ErrorKind::NotLemma3Shape:
        case ErrorKind::TooLarge:
        case ErrorKind::WindowTooShort:
        case ErrorKind::NotInRInf: return kStructural;
        case ErrorKind::Singular:
        case ErrorKind::NotPSD:
        case ErrorKind::NoConvergence:
        case ErrorKind::VerificationFailed: return kNumerical;
    }
    return kNumerical;
}

struct Options {
    std::string input, output;
    bool check = false, oracle = false, pattern = false, csv = false;
    int n = 0;
    Tolerances tol;
};

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::Schema, "cannot write " + path);
    out << text;
}

std::string star_grid(const Eigen::MatrixXd& A, bool csv) {
    SparsityPattern p = real_pattern(A);
    std::string s;
    for (int i = 0; i < p.rows; ++i) {
        for (int j = 0; j < p.cols; ++j) {
            if (j) s += csv ? "," : " ";
            s += csv ? (p(i, j) ? "1" : "0") : (p(i, j) ? "★" : "0");
        }
        s += "\n";
    }
    return s;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

int cmd_factor(const Options& o) {
    OpMatrix M = factor_input_from_json(read_json_file(o.input), o.tol.zero_tol);
    Factorisation F = cholesky_tree(M, o.tol);
    emit(dump_json(to_json(F)), o.output);
    if (!o.check) return kOk;

    OpMatrix G = gram(permute_cols(M, F.P));
    double scale = 1.0;
    for (int i = 0; i < G.rows(); ++i)
        for (int j = 0; j < G.cols(); ++j) scale = std::max(scale, G(i, j).max_abs());
    const double resid = max_abs_diff(G, matmul(F.L, adjoint_matrix(F.L)));
    const bool fill_free = dominates(sparsity(G), sparsity(F.L));
    std::ostream& log = o.output.empty() ? std::cerr : std::cout;
    log << "identity residual: " << fmt(resid) << "\nfill-in free: " << (fill_free ? "true" : "false") << "\n";
    return resid <= 1e-8 * scale && fill_free ? kOk : kNumerical;
}

std::vector<std::string> state_labels(const StateSpace& ss) {
    std::vector<std::string> labels;
    for (int v = 0; v < ss.n_vertices; ++v) labels.push_back("v" + std::to_string(v));
    for (int e = 0; e < ss.nu(); ++e) labels.push_back("a" + std::to_string(e));
    return labels;
}

int cmd_lqr(const Options& o) {
    Network net = network_from_json(read_json_file(o.input));
    LqrSolution sol = solve_lqr(net, o.tol);
    Json j = to_json(sol.law);
    j["state_order"] = state_labels(sol.ss);
    j["factor"] = to_json(sol.factor);
    if (o.oracle) j["oracle"] = to_json(verify(net, o.tol));

    if (o.pattern || o.csv) {
        const int nv = sol.ss.n_vertices;
        std::string text;
        if (sol.law.K1) text += "K1 (" + std::to_string(sol.law.K1->rows()) + "x" + std::to_string(sol.law.K1->cols()) +
                                "):\n" + star_grid(*sol.law.K1, o.csv);
        else text += "K1: not available (factor has (q*)^k q^k terms); dense K shown\nK:\n" +
                     star_grid(to_interleaved(sol.law.K, nv), o.csv);
        text += "K2 (" + std::to_string(sol.law.K2.rows()) + "x" + std::to_string(sol.law.K2.cols()) +
                ", columns v0 a0 v1 a1 ...):\n" + star_grid(to_interleaved(sol.law.K2, nv), o.csv);
        if (o.oracle) text += "oracle deviation: " + fmt(j["oracle"]["deviation"].get<double>()) + "\n";
        std::cout << text;
        if (!o.output.empty()) emit(dump_json(j), o.output);
        return kOk;
    }
    emit(dump_json(j), o.output);
    return kOk;
}

int cmd_chordal(const Options& o) {
    UndirectedGraph G = undirected_from_json(read_json_file(o.input));
    const bool tree = is_tree(G), cyc = has_cycle_geq(G, 4), chordal = is_chordal(edge_graph(G));
    std::cout << "is_tree: " << (tree ? "true" : "false") << "\n"
              << "cycle ≥ 4: " << (cyc ? "true" : "false") << "\n"
              << "edge graph chordal: " << (chordal ? "true" : "false") << "\n"
              << "cycle ≥ 4 iff edge graph not chordal: " << (cyc == !chordal ? "holds" : "violated") << "\n";
    return kOk;
}

int cmd_cycle_demo(const Options& o) {
    const int n = o.n, T = 96, lead = 64;
    ShiftOp x = cycle_schur_closed_form(n);
    std::cout << "cycle n = " << n << "\nSchur complement: " << to_string(x) << "\ncoefficients:\n";
    for (const auto& [m, c] : x.terms())
        std::cout << "  (q*)^" << m.istar << " q^" << m.j << ": " << fmt(c) << "\n";
    std::cout << "in R∞: " << (is_rinf(x) ? "true" : "false") << "\n"
              << "truncation residual (T = " << T << ", leading " << lead << "): " << fmt(cycle_schur_residual(x, n, T, lead))
              << "\n"
              << "residual with the opposite sign on the (q*)^i q^i sum: "
              << fmt(cycle_schur_residual(cycle_schur_opposite_sign(n), n, T, lead)) << "\n";
    return kOk;
}

int cmd_spectral_demo(const Options& o) {
    Network net(DirectedGraph(5, {{0, 1}, {1, 2}, {3, 2}, {4, 3}}), 1.0 / std::sqrt(2.0));
    OpMatrix M = build_operator_matrix(net);
    PermutationReport rep = enumerate_permutation_cholesky(M, o.tol);
    std::cout << "limit matrix N:\n";
    for (int i = 0; i < rep.limit.rows(); ++i) {
        for (int j = 0; j < rep.limit.cols(); ++j) std::cout << (j ? " " : "  ") << fmt(rep.limit(i, j));
        std::cout << "\n";
    }
    std::cout << rep.compatible << " / " << rep.total << " permutations sparsity-compatible\n";
    for (const auto& r : rep.records) {
        if (!r.compatible) continue;
        std::cout << "  P = [";
        for (int i = 0; i < r.P.size(); ++i) std::cout << (i ? " " : "") << r.P[i];
        std::cout << "]: ";
        if (r.factored) std::cout << "max diagonal (q*)^k q^k coefficient " << fmt(r.qq_coeff) << "\n";
        else std::cout << r.note << "\n";
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cholesky factorisation of shift-operator matrices and sparse network LQR laws"};
    app.require_subcommand(1);
    Options o;
    auto add_tol = [&](CLI::App* c) {
        c->add_option("--zero-tol", o.tol.zero_tol, "coefficient pruning threshold")->capture_default_str();
        c->add_option("--psd-tol", o.tol.psd_tol, "negative partial sums above -psd_tol count as zero")
            ->capture_default_str();
        c->add_option("--inv-tol", o.tol.inv_tol, "invertibility threshold")->capture_default_str();
    };

    auto* factor = app.add_subcommand("factor", "factor an operator matrix (OpMatrix JSON or generator spec)");
    factor->add_option("--input", o.input)->required()->check(CLI::ExistingFile);
    factor->add_option("--output", o.output);
    factor->add_flag("--check", o.check, "re-verify the identity and fill-in freeness");
    add_tol(factor);

    auto* lqr = app.add_subcommand("lqr", "sparse LQR law for a tree network");
    lqr->add_option("--input", o.input)->required()->check(CLI::ExistingFile);
    lqr->add_option("--output", o.output);
    lqr->add_flag("--oracle", o.oracle, "compare with value iteration");
    lqr->add_flag("--pattern", o.pattern, "print star/zero grids");
    lqr->add_flag("--csv", o.csv, "print 0/1 grids");
    add_tol(lqr);

    auto* chordal = app.add_subcommand("chordal", "edge-graph chordality versus long cycles");
    chordal->add_option("--input", o.input)->required()->check(CLI::ExistingFile);

    auto* cycle = app.add_subcommand("cycle-demo", "Schur complement of a cycle matrix");
    cycle->add_option("--n", o.n, "cycle length")->required()->check(CLI::Range(3, 8));

    auto* spectral = app.add_subcommand("spectral-demo", "permutation survey on the alternating line");
    add_tol(spectral);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInput;
    }

    try {
        if (*factor) return cmd_factor(o);
        if (*lqr) return cmd_lqr(o);
        if (*chordal) return cmd_chordal(o);
        if (*cycle) return cmd_cycle_demo(o);
        return cmd_spectral_demo(o);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    }
}
