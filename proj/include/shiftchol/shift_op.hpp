#pragma once

#include <compare>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "shiftchol/error.hpp"

namespace shiftchol {

/// (q*)^istar q^j
struct Monomial {
    int istar = 0;
    int j = 0;
    auto operator<=>(const Monomial&) const = default;
};

/// Normal form of (q*)^a.istar q^a.j (q*)^b.istar q^b.j, using q q* = 1.
Monomial monomial_product(Monomial a, Monomial b);

/// Pointwise action of an element of R∞: (d s)[t] = sigma[t], or sigma_inf for t >= sigma.size().
struct PartialSums {
    std::vector<double> sigma;
    double sigma_inf = 0.0;

    double at(std::size_t t) const { return t < sigma.size() ? sigma[t] : sigma_inf; }
};

class ShiftOp {
public:
    using Terms = std::map<Monomial, double>;

    ShiftOp() = default;
    explicit ShiftOp(double zero_tol) : zero_tol_(zero_tol) {}

    static ShiftOp identity() { return constant(1.0); }
    static ShiftOp constant(double c) { return monomial(0, 0, c); }
    static ShiftOp q(int k = 1, double c = 1.0) { return monomial(0, k, c); }
    static ShiftOp qstar(int k = 1, double c = 1.0) { return monomial(k, 0, c); }
    static ShiftOp monomial(int istar, int j, double c = 1.0);

    const Terms& terms() const { return terms_; }
    double zero_tol() const { return zero_tol_; }
    double coeff(int istar, int j) const;
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    /// Largest istar + j over stored monomials (0 for the zero operator).
    int degree() const;
    /// Largest j - istar over stored monomials, floored at 0: how far the op looks ahead.
    int lookahead() const;
    /// Largest |coefficient|.
    double max_abs() const;

    /// Add c to the coefficient of m, pruning if the result is small.
    void accumulate(Monomial m, double c);

    ShiftOp& operator+=(const ShiftOp& o);
    ShiftOp& operator-=(const ShiftOp& o);
    ShiftOp& operator*=(double c);

    friend bool operator==(const ShiftOp& a, const ShiftOp& b) { return a.terms_ == b.terms_; }

private:
    Terms terms_;
    double zero_tol_ = Tolerances{}.zero_tol;
};

ShiftOp add(const ShiftOp& x, const ShiftOp& y);
ShiftOp sub(const ShiftOp& x, const ShiftOp& y);
ShiftOp scale(double c, const ShiftOp& x);
ShiftOp mul(const ShiftOp& x, const ShiftOp& y);
ShiftOp adjoint(const ShiftOp& x);

inline ShiftOp operator+(const ShiftOp& x, const ShiftOp& y) { return add(x, y); }
inline ShiftOp operator-(const ShiftOp& x, const ShiftOp& y) { return sub(x, y); }
inline ShiftOp operator-(const ShiftOp& x) { return scale(-1.0, x); }
inline ShiftOp operator*(const ShiftOp& x, const ShiftOp& y) { return mul(x, y); }
inline ShiftOp operator*(double c, const ShiftOp& x) { return scale(c, x); }

/// Largest coefficientwise difference.
double max_abs_diff(const ShiftOp& x, const ShiftOp& y);

/// Apply x to a finite window s[0..T). Returns the valid prefix, of length T - lookahead(x).
std::vector<double> apply(const ShiftOp& x, std::span<const double> s);

bool is_rinf(const ShiftOp& x);
PartialSums to_partial_sums(const ShiftOp& x);
ShiftOp from_partial_sums(const PartialSums& p, double zero_tol = Tolerances{}.zero_tol);

ShiftOp pinv_rinf(const ShiftOp& x);
bool is_psd_rinf(const ShiftOp& x, double psd_tol = Tolerances{}.psd_tol);
ShiftOp sqrt_rinf(const ShiftOp& x, double psd_tol = Tolerances{}.psd_tol);
bool is_invertible_rinf(const ShiftOp& x, double inv_tol = Tolerances{}.inv_tol);
ShiftOp inv_rinf(const ShiftOp& x, double inv_tol = Tolerances{}.inv_tol);

/// q -> T×T superdiagonal shift S, q* -> Sᵀ. Only the leading T - degree block is exact.
Eigen::MatrixXd to_truncation(const ShiftOp& x, int T);

/// Human readable, e.g. "1.5 - 0.5 q*q + 2 q^2".
std::string to_string(const ShiftOp& x);

}  // namespace shiftchol
