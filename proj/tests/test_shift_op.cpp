#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"

using namespace shiftchol;
using namespace testsupport;

namespace {

ShiftOp op(std::initializer_list<std::tuple<int, int, double>> terms) {
    ShiftOp x;
    for (auto [i, j, c] : terms) x.accumulate({i, j}, c);
    return x;
}

std::vector<double> ramp(int n) {
    std::vector<double> s(n);
    std::iota(s.begin(), s.end(), 1.0);
    return s;
}

}  // namespace

TEST_CASE("monomial products follow q q* = 1") {
    CHECK(monomial_product({0, 1}, {1, 0}) == Monomial{0, 0});
    CHECK(monomial_product({1, 0}, {0, 1}) == Monomial{1, 1});
    CHECK(monomial_product({0, 2}, {3, 0}) == Monomial{1, 0});

    // q^2 (q*)^3 acting on 1,2,3,... equals q* acting on it
    std::vector<double> s = ramp(20), t = s;
    for (int k = 0; k < 3; ++k) t = step_qstar(t);
    for (int k = 0; k < 2; ++k) t = step_q(t);
    auto direct = oracle_apply(ShiftOp::qstar(), s);
    for (int i = 0; i < 18; ++i) CHECK(t[i] == doctest::Approx(direct[i]));
}

TEST_CASE("addition prunes cancellations") {
    ShiftOp x = op({{0, 1, 1.0}, {1, 0, 2.0}});
    CHECK(x + ShiftOp() == x);
    CHECK((ShiftOp::q() + scale(-1.0, ShiftOp::q())).is_zero());
    ShiftOp y = x + op({{1, 1, 1.0}});
    CHECK(y.size() == 3);
    CHECK(y.coeff(0, 1) == 1.0);
    CHECK(y.coeff(1, 0) == 2.0);
    CHECK(y.coeff(1, 1) == 1.0);
    CHECK((x - x).is_zero());
}

TEST_CASE("multiplication is non-commutative") {
    ShiftOp x = ShiftOp::q() + ShiftOp::qstar(1, 2.0);
    ShiftOp y = op({{1, 1, 1.0}, {0, 1, 1.0}});
    ShiftOp expected = op({{0, 1, 1.0}, {0, 2, 1.0}, {1, 1, 2.0}, {2, 1, 2.0}});
    CHECK(max_abs_diff(x * y, expected) == 0.0);
    CHECK(x * ShiftOp::identity() == x);
    CHECK(ShiftOp::q() * ShiftOp::qstar() == ShiftOp::identity());
    CHECK(ShiftOp::qstar() * ShiftOp::q() == op({{1, 1, 1.0}}));

    ShiftOp p = op({{1, 1, 1.0}});
    CHECK(p * p == p);
    Eigen::MatrixXd Pt = to_truncation(p, 16);
    CHECK(max_abs((Pt * Pt - Pt).topLeftCorner(12, 12)) == 0.0);
}

TEST_CASE("adjoint swaps the powers") {
    ShiftOp x = ShiftOp::q() + op({{2, 1, 1.0}});
    CHECK(adjoint(x) == ShiftOp::qstar() + op({{1, 2, 1.0}}));
    CHECK(adjoint(ShiftOp::identity()) == ShiftOp::identity());
    CHECK(adjoint(op({{1, 1, 1.0}})) == op({{1, 1, 1.0}}));
}

TEST_CASE("window application") {
    std::vector<double> y{5, 6, 7, 8};
    auto r = shiftchol::apply(op({{1, 1, 1.0}}), y);
    CHECK(r == std::vector<double>{0, 6, 7, 8});
    CHECK(shiftchol::apply(ShiftOp::identity(), y) == y);
    std::vector<double> s = ramp(5);
    CHECK(shiftchol::apply(op({{2, 1, 1.0}}), s) == std::vector<double>{0, 0, 2, 3, 4});
    Eigen::VectorXd ts = to_truncation(op({{2, 1, 1.0}}), 5) * Eigen::Map<Eigen::VectorXd>(s.data(), 5);
    for (int i = 0; i < 4; ++i) CHECK(ts(i) == doctest::Approx(shiftchol::apply(op({{2, 1, 1.0}}), s)[i]));
    // lookahead shortens the valid window
    CHECK(shiftchol::apply(ShiftOp::q(2), s).size() == 3);
    CHECK_THROWS_AS(shiftchol::apply(op({{2, 3, 1.0}}), s), Error);
}

TEST_CASE("partial sums round trip") {
    PartialSums p = to_partial_sums(op({{1, 1, 1.0}}));
    CHECK(p.sigma == std::vector<double>{0.0});
    CHECK(p.sigma_inf == 1.0);
    p = to_partial_sums(op({{0, 0, 2.0}, {1, 1, -1.0}}));
    CHECK(p.sigma == std::vector<double>{2.0});
    CHECK(p.sigma_inf == 1.0);
    CHECK(from_partial_sums(PartialSums{{2.0}, 1.0}) == op({{0, 0, 2.0}, {1, 1, -1.0}}));
    CHECK_THROWS_AS(to_partial_sums(ShiftOp::q()), Error);
    CHECK(to_partial_sums(ShiftOp()).sigma_inf == 0.0);
}

TEST_CASE("pseudoinverse") {
    CHECK(pinv_rinf(ShiftOp::identity()) == ShiftOp::identity());
    ShiftOp p = op({{1, 1, 1.0}});
    CHECK(pinv_rinf(p) == p);
    ShiftOp y = op({{0, 0, 2.0}, {1, 1, -1.0}});
    ShiftOp yp = pinv_rinf(y);
    CHECK(max_abs_diff(yp, op({{0, 0, 0.5}, {1, 1, 0.5}})) < 1e-15);
    Eigen::MatrixXd Y = to_truncation(y, 64), Yp = to_truncation(yp, 64);
    CHECK(max_abs((Y * Yp * Y - Y).topLeftCorner(60, 60)) < 1e-12);
    CHECK(max_abs((Yp * Y * Yp - Yp).topLeftCorner(60, 60)) < 1e-12);
    CHECK_THROWS_AS(pinv_rinf(ShiftOp::q()), Error);
}

TEST_CASE("square root") {
    CHECK(sqrt_rinf(ShiftOp::identity()) == ShiftOp::identity());
    CHECK(max_abs_diff(sqrt_rinf(ShiftOp::constant(4.0 / 3.0)), ShiftOp::constant(2.0 / std::sqrt(3.0))) < 1e-15);
    ShiftOp r = sqrt_rinf(op({{0, 0, 4.0}, {1, 1, -3.0}}));
    CHECK(max_abs_diff(r, op({{0, 0, 2.0}, {1, 1, -1.0}})) < 1e-15);
    CHECK(max_abs_diff(r * r, op({{0, 0, 4.0}, {1, 1, -3.0}})) < 1e-14);
    CHECK_THROWS_AS(sqrt_rinf(ShiftOp::constant(-1.0)), Error);
    // clamp inside psd_tol
    CHECK(sqrt_rinf(ShiftOp::constant(-1e-10)).is_zero());
    CHECK_FALSE(is_psd_rinf(op({{0, 0, 1.0}, {1, 1, -2.0}})));
}

TEST_CASE("inverse") {
    CHECK(inv_rinf(ShiftOp::identity()) == ShiftOp::identity());
    CHECK(inv_rinf(ShiftOp::constant(2.0)) == ShiftOp::constant(0.5));
    ShiftOp d = ShiftOp::constant(std::sqrt(1.5));
    CHECK(max_abs_diff(inv_rinf(d), ShiftOp::constant(std::sqrt(2.0 / 3.0))) < 1e-15);
    CHECK(max_abs_diff(d * inv_rinf(d), ShiftOp::identity()) < 1e-15);
    CHECK_THROWS_AS(inv_rinf(op({{1, 1, 1.0}})), Error);
}

TEST_CASE("truncation matrices") {
    Eigen::MatrixXd S(3, 3);
    S << 0, 1, 0, 0, 0, 1, 0, 0, 0;
    CHECK(to_truncation(ShiftOp::q(), 3) == S);
    CHECK(to_truncation(ShiftOp::identity(), 5) == Eigen::MatrixXd::Identity(5, 5));
    // q q* normalises to the identity, whose truncation is exact everywhere;
    // the product of truncations differs only in the boundary entry
    Eigen::MatrixXd SSt = S * S.transpose();
    CHECK(SSt.diagonal() == Eigen::Vector3d(1, 1, 0));
    CHECK(max_abs((to_truncation(ShiftOp::q() * ShiftOp::qstar(), 3) - SSt).topLeftCorner(2, 2)) == 0.0);
}

TEST_CASE("ring axioms on random operators") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        ShiftOp x = random_shiftop(rng, 4, 5), y = random_shiftop(rng, 4, 5), z = random_shiftop(rng, 4, 5);
        CHECK(max_abs_diff((x * y) * z, x * (y * z)) < 1e-12);
        CHECK(max_abs_diff(adjoint(x * y), adjoint(y) * adjoint(x)) < 1e-12);
        CHECK(max_abs_diff(x * (y + z), x * y + x * z) < 1e-12);
        CHECK(max_abs_diff((x + y) * z, x * z + y * z) < 1e-12);
        CHECK(adjoint(adjoint(x)) == x);
    }
}

TEST_CASE("window application agrees with the truncation oracle") {
    Rng rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        ShiftOp x = random_shiftop(rng, 3, 3);
        int n_ops = uniform_int(rng, 1, 6);
        for (int k = 0; k < n_ops; ++k) {
            ShiftOp g = random_shiftop(rng, 3, 3);
            switch (uniform_int(rng, 0, 3)) {
                case 0: x = x + g; break;
                case 1: x = x * g; break;
                case 2: x = adjoint(x); break;
                default: x = scale(uniform(rng, -2, 2), x) - g;
            }
        }
        if (x.degree() >= 32) continue;
        std::vector<double> s(64);
        for (double& v : s) v = uniform(rng, -1, 1);
        auto out = shiftchol::apply(x, s);
        Eigen::VectorXd t = to_truncation(x, 64) * Eigen::Map<Eigen::VectorXd>(s.data(), 64);
        auto direct = oracle_apply(x, s);
        for (int i = 0; i < 32; ++i) {
            CHECK(std::abs(out[i] - t(i)) < 1e-10);
            CHECK(std::abs(out[i] - direct[i]) < 1e-10);
        }
    }
}

TEST_CASE("R∞ is closed under the ring operations and the partial-sum maps") {
    Rng rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        ShiftOp y = random_rinf(rng, 4), z = random_rinf(rng, 4);
        CHECK(is_rinf(y + z));
        CHECK(is_rinf(y * z));
        CHECK(is_rinf(adjoint(y)));
        CHECK(is_rinf(pinv_rinf(y)));
        CHECK(is_rinf(inv_rinf(y)));
        CHECK(is_rinf(sqrt_rinf(y * y)));
        // multiplication is pointwise on partial sums
        PartialSums py = to_partial_sums(y), pz = to_partial_sums(z), pyz = to_partial_sums(y * z);
        for (std::size_t k = 0; k < 8; ++k) CHECK(pyz.at(k) == doctest::Approx(py.at(k) * pz.at(k)).epsilon(1e-12));
        CHECK(max_abs_diff(y * z, z * y) < 1e-12);
    }
}

TEST_CASE("Moore-Penrose axioms and square roots on random elements") {
    Rng rng(14);
    for (int trial = 0; trial < 100; ++trial) {
        ShiftOp y = random_rinf(rng, 5, 0.2, 3.0, true, 0.3);
        ShiftOp yp = pinv_rinf(y);
        CHECK(max_abs_diff(y * yp * y, y) <= 1e-10);
        CHECK(max_abs_diff(yp * y * yp, yp) <= 1e-10);
        CHECK(max_abs_diff(y * yp, yp * y) <= 1e-10);

        ShiftOp p = random_rinf(rng, 5, 0.0, 3.0, false, 0.2);
        ShiftOp r = sqrt_rinf(p);
        CHECK(is_psd_rinf(r));
        CHECK(max_abs_diff(r * r, p) <= 1e-10);
    }
}
