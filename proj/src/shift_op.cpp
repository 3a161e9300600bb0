#include "shiftchol/shift_op.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace shiftchol {

const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::WindowTooShort: return "WindowTooShort";
        case ErrorKind::NotInRInf: return "NotInRInf";
        case ErrorKind::NotPSD: return "NotPSD";
        case ErrorKind::Singular: return "Singular";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::TooLarge: return "TooLarge";
        case ErrorKind::NoLeafEdge: return "NoLeafEdge";
        case ErrorKind::MalformedColumn: return "MalformedColumn";
        case ErrorKind::PreconditionViolated: return "PreconditionViolated";
        case ErrorKind::NotLemma3Shape: return "NotLemma3Shape";
        case ErrorKind::NotAForest: return "NotAForest";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::VerificationFailed: return "VerificationFailed";
        case ErrorKind::InvalidGraph: return "InvalidGraph";
        case ErrorKind::Schema: return "Schema";
    }
    return "Unknown";
}

Monomial monomial_product(Monomial a, Monomial b) {
    // q^a.j (q*)^b.istar collapses to whichever power survives q q* = 1
    return {a.istar + std::max(0, b.istar - a.j), b.j + std::max(0, a.j - b.istar)};
}

ShiftOp ShiftOp::monomial(int istar, int j, double c) {
    if (istar < 0 || j < 0) throw Error(ErrorKind::PreconditionViolated, "negative monomial power");
    ShiftOp x;
    x.accumulate({istar, j}, c);
    return x;
}

double ShiftOp::coeff(int istar, int j) const {
    auto it = terms_.find({istar, j});
    return it == terms_.end() ? 0.0 : it->second;
}

int ShiftOp::degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.istar + m.j);
    return d;
}

int ShiftOp::lookahead() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.j - m.istar);
    return d;
}

double ShiftOp::max_abs() const {
    double v = 0.0;
    for (const auto& [m, c] : terms_) v = std::max(v, std::abs(c));
    return v;
}

void ShiftOp::accumulate(Monomial m, double c) {
    auto [it, inserted] = terms_.try_emplace(m, 0.0);
    it->second += c;
    if (std::abs(it->second) <= zero_tol_) terms_.erase(it);
}

ShiftOp& ShiftOp::operator+=(const ShiftOp& o) {
    for (const auto& [m, c] : o.terms_) accumulate(m, c);
    return *this;
}

ShiftOp& ShiftOp::operator-=(const ShiftOp& o) {
    for (const auto& [m, c] : o.terms_) accumulate(m, -c);
    return *this;
}

ShiftOp& ShiftOp::operator*=(double c) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        it->second *= c;
        if (std::abs(it->second) <= zero_tol_) it = terms_.erase(it);
        else ++it;
    }
    return *this;
}

ShiftOp add(const ShiftOp& x, const ShiftOp& y) {
    ShiftOp r = x;
    r += y;
    return r;
}

ShiftOp sub(const ShiftOp& x, const ShiftOp& y) {
    ShiftOp r = x;
    r -= y;
    return r;
}

ShiftOp scale(double c, const ShiftOp& x) {
    ShiftOp r = x;
    r *= c;
    return r;
}

ShiftOp mul(const ShiftOp& x, const ShiftOp& y) {
    // accumulate unpruned so that intermediate cancellations are exact
    std::map<Monomial, double> acc;
    for (const auto& [a, ca] : x.terms())
        for (const auto& [b, cb] : y.terms()) acc[monomial_product(a, b)] += ca * cb;
    ShiftOp r(x.zero_tol());
    for (const auto& [m, c] : acc) r.accumulate(m, c);
    return r;
}

ShiftOp adjoint(const ShiftOp& x) {
    ShiftOp r(x.zero_tol());
    for (const auto& [m, c] : x.terms()) r.accumulate({m.j, m.istar}, c);
    return r;
}

double max_abs_diff(const ShiftOp& x, const ShiftOp& y) {
    double d = 0.0;
    for (const auto& [m, c] : x.terms()) d = std::max(d, std::abs(c - y.coeff(m.istar, m.j)));
    for (const auto& [m, c] : y.terms())
        if (!x.terms().count(m)) d = std::max(d, std::abs(c));
    return d;
}

std::vector<double> apply(const ShiftOp& x, std::span<const double> s) {
    const int T = static_cast<int>(s.size());
    if (T <= x.degree())
        throw Error(ErrorKind::WindowTooShort, "window of length " + std::to_string(T) +
                                                   " does not exceed degree " + std::to_string(x.degree()));
    const int valid = T - x.lookahead();
    std::vector<double> out(valid, 0.0);
    for (const auto& [m, c] : x.terms())
        for (int t = m.istar; t < valid; ++t) out[t] += c * s[t - m.istar + m.j];
    return out;
}

bool is_rinf(const ShiftOp& x) {
    for (const auto& [m, c] : x.terms())
        if (m.istar != m.j) return false;
    return true;
}

PartialSums to_partial_sums(const ShiftOp& x) {
    if (!is_rinf(x)) throw Error(ErrorKind::NotInRInf, "operator has an off-diagonal monomial: " + to_string(x));
    PartialSums p;
    int K = x.is_zero() ? 0 : x.terms().rbegin()->first.j;
    p.sigma.reserve(K);
    double acc = 0.0;
    for (int k = 0; k < K; ++k) {
        acc += x.coeff(k, k);
        p.sigma.push_back(acc);
    }
    p.sigma_inf = acc + x.coeff(K, K);
    return p;
}

ShiftOp from_partial_sums(const PartialSums& p, double zero_tol) {
    ShiftOp x(zero_tol);
    double prev = 0.0;
    for (std::size_t k = 0; k < p.sigma.size(); ++k) {
        x.accumulate({int(k), int(k)}, p.sigma[k] - prev);
        prev = p.sigma[k];
    }
    int K = static_cast<int>(p.sigma.size());
    x.accumulate({K, K}, p.sigma_inf - prev);
    return x;
}

namespace {

template <class F>
ShiftOp map_partial_sums(const ShiftOp& x, F f) {
    PartialSums p = to_partial_sums(x);
    for (double& s : p.sigma) s = f(s);
    p.sigma_inf = f(p.sigma_inf);
    return from_partial_sums(p, x.zero_tol());
}

double min_abs_sigma(const PartialSums& p) {
    double m = std::abs(p.sigma_inf);
    for (double s : p.sigma) m = std::min(m, std::abs(s));
    return m;
}

}  // namespace

ShiftOp pinv_rinf(const ShiftOp& x) {
    const double tol = x.zero_tol();
    return map_partial_sums(x, [tol](double s) { return std::abs(s) > tol ? 1.0 / s : 0.0; });
}

bool is_psd_rinf(const ShiftOp& x, double psd_tol) {
    if (!is_rinf(x)) return false;
    PartialSums p = to_partial_sums(x);
    if (p.sigma_inf < -psd_tol) return false;
    return std::all_of(p.sigma.begin(), p.sigma.end(), [&](double s) { return s >= -psd_tol; });
}

ShiftOp sqrt_rinf(const ShiftOp& x, double psd_tol) {
    const double zero = x.zero_tol();
    return map_partial_sums(x, [&](double s) {
        // same zero convention as pinv_rinf, so sqrt and pinv agree on the support
        if (std::abs(s) <= zero) return 0.0;
        if (s < -psd_tol)
            throw Error(ErrorKind::NotPSD, "partial sum " + std::to_string(s) + " below -psd_tol");
        return std::sqrt(std::max(s, 0.0));
    });
}

bool is_invertible_rinf(const ShiftOp& x, double inv_tol) {
    return is_rinf(x) && min_abs_sigma(to_partial_sums(x)) > inv_tol;
}

ShiftOp inv_rinf(const ShiftOp& x, double inv_tol) {
    PartialSums p = to_partial_sums(x);
    if (min_abs_sigma(p) <= inv_tol) throw Error(ErrorKind::Singular, "partial sum at or below inv_tol: " + to_string(x));
    return map_partial_sums(x, [](double s) { return 1.0 / s; });
}

Eigen::MatrixXd to_truncation(const ShiftOp& x, int T) {
    if (T <= x.degree())
        throw Error(ErrorKind::WindowTooShort, "truncation size must exceed the operator degree");
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(T, T);
    for (int i = 0; i + 1 < T; ++i) S(i, i + 1) = 1.0;
    const int d = x.degree();
    std::vector<Eigen::MatrixXd> pw{Eigen::MatrixXd::Identity(T, T)};
    for (int k = 1; k <= d; ++k) pw.push_back(pw.back() * S);
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(T, T);
    for (const auto& [m, c] : x.terms()) out += c * pw[m.istar].transpose() * pw[m.j];
    return out;
}

std::string to_string(const ShiftOp& x) {
    if (x.is_zero()) return "0";
    std::string out;
    char buf[64];
    bool first = true;
    for (const auto& [m, c] : x.terms()) {
        double a = c;
        if (first) {
            if (a < 0) out += "-";
        } else {
            out += a < 0 ? " - " : " + ";
        }
        a = std::abs(a);
        std::string mono;
        if (m.istar == 1) mono += "q*";
        else if (m.istar > 1) mono += "(q*)^" + std::to_string(m.istar);
        if (m.j == 1) mono += "q";
        else if (m.j > 1) mono += "q^" + std::to_string(m.j);
        if (mono.empty() || a != 1.0) {
            std::snprintf(buf, sizeof buf, "%.10g", a);
            out += buf;
            if (!mono.empty()) out += " ";
        }
        out += mono;
        first = false;
    }
    return out;
}

}  // namespace shiftchol
