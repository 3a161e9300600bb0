#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "support.hpp"

using namespace shiftchol;
using namespace testsupport;

TEST_CASE("gram of a single column") {
    OpMatrix M = fixtures::path_example().block(0, 0, 4, 1);
    OpMatrix G = gram(M);
    REQUIRE(G.rows() == 1);
    CHECK(G(0, 0) == ShiftOp::constant(2.0));
}

TEST_CASE("gram of the cycle matrix") {
    OpMatrix G = gram(build_cycle_matrix(3));
    for (int i = 0; i < 3; ++i) CHECK(G(i, i) == ShiftOp::constant(2.0));
    CHECK(G(0, 1) == ShiftOp::q(1, -1.0));
    CHECK(G(1, 0) == ShiftOp::qstar(1, -1.0));
    CHECK(G(0, 2) == ShiftOp::qstar(1, -1.0));
    CHECK(G(2, 0) == ShiftOp::q(1, -1.0));
    CHECK(adjoint_matrix(G) == G);
}

TEST_CASE("identity and permutations") {
    OpMatrix M = fixtures::path_example();
    CHECK(matmul(M, OpMatrix::identity(3)) == M);
    CHECK(permute_cols(M, Permutation::identity(3)) == M);
    Permutation s = Permutation::swap(3, 0, 2);
    CHECK(permute_cols(permute_cols(M, s), s) == M);
    CHECK_THROWS_AS(permute_cols(M, Permutation::identity(4)), Error);
    CHECK_THROWS_AS(matmul(M, M), Error);

    // rotating the columns of the cycle matrix leaves its Gram invariant up to the same rotation
    OpMatrix G = gram(build_cycle_matrix(5));
    Permutation rot({1, 2, 3, 4, 0});
    CHECK(permute_rows(permute_cols(G, rot), rot) == G);
}

TEST_CASE("gram transforms covariantly under column permutations") {
    Rng rng(21);
    for (int trial = 0; trial < 30; ++trial) {
        OpMatrix M = random_forest_matrix(rng, 6);
        std::vector<int> im(M.cols());
        std::iota(im.begin(), im.end(), 0);
        std::shuffle(im.begin(), im.end(), rng);
        Permutation P(im);
        CHECK(max_abs_diff(gram(permute_cols(M, P)), permute_rows(permute_cols(gram(M), P), P)) < 1e-12);
    }
}

TEST_CASE("permutation group laws") {
    Permutation a({2, 0, 1, 3}), b({1, 3, 0, 2});
    CHECK(compose(a, a.inverse()).is_identity());
    CHECK(compose(compose(a, b), b.inverse()) == a);
    CHECK(Permutation({1, 0}).lifted() == Permutation({0, 2, 1}));
    CHECK_THROWS_AS(Permutation({0, 0}), Error);
    // permute_cols realises the matrix product convention of compose
    OpMatrix M = OpMatrix::from_real(Eigen::MatrixXd::Random(2, 4));
    CHECK(permute_cols(permute_cols(M, a), b) == permute_cols(M, compose(a, b)));
}

TEST_CASE("membership in the graph-structured class") {
    UndirectedGraph path = path_graph(4);
    CHECK(is_in_MG(fixtures::path_example(), path));
    OpMatrix bad = fixtures::path_example();
    bad(3, 0) = ShiftOp::identity();
    CHECK_FALSE(is_in_MG(bad, path));
    OpMatrix mixed = fixtures::path_example();
    mixed(0, 0) = ShiftOp::q() + ShiftOp::qstar();
    CHECK_FALSE(is_in_MG(mixed, path));

    CHECK(is_in_MG(fixtures::alternating_line(), path_graph(5)));
    for (int n = 3; n <= 6; ++n) CHECK(is_in_MG(build_cycle_matrix(n), cycle_graph(n)));
    CHECK_THROWS_AS(is_in_MG(fixtures::path_example(), path_graph(3)), Error);
}

TEST_CASE("coefficient sums") {
    const double s = 1.0 / std::sqrt(2.0);
    Eigen::MatrixXd N(4, 4);
    N << 1.5, -s, 0, 0, -s, 1.5, 0.5, 0, 0, 0.5, 1.5, -s, 0, 0, -s, 1.5;
    CHECK(max_abs(coefficient_sum(gram(fixtures::alternating_line())) - N) < 1e-12);
    CHECK(coefficient_sum(OpMatrix::identity(3)) == Eigen::MatrixXd::Identity(3, 3));
    Eigen::MatrixXd T(3, 3);
    T << 2, -1, 0, -1, 2, -1, 0, -1, 2;
    CHECK(max_abs(coefficient_sum(gram(fixtures::path_example())) - T) < 1e-15);
}

TEST_CASE("coefficient sum is multiplicative") {
    Rng rng(22);
    for (int trial = 0; trial < 100; ++trial) {
        OpMatrix A(3, 4), B(4, 2);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 4; ++j) A(i, j) = random_shiftop(rng, 3, 3);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 2; ++j) B(i, j) = random_shiftop(rng, 3, 3);
        CHECK(max_abs(coefficient_sum(matmul(A, B)) - coefficient_sum(A) * coefficient_sum(B)) < 1e-12);
    }
}

TEST_CASE("sparsity patterns") {
    SparsityPattern p = sparsity(fixtures::path_example_factor());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(p(i, j) == (j == i || j == i - 1));
    CHECK(dominates(p, p));
    CHECK(dominates(sparsity(gram(fixtures::path_example())), p));
    CHECK_FALSE(dominates(sparsity(OpMatrix::identity(3)), p));
}

TEST_CASE("adjoint reverses products") {
    Rng rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        OpMatrix A(2, 3), B(3, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 3; ++j) {
                A(i, j) = random_shiftop(rng, 3, 2);
                B(j, i) = random_shiftop(rng, 3, 2);
            }
        CHECK(max_abs_diff(adjoint_matrix(matmul(A, B)), matmul(adjoint_matrix(B), adjoint_matrix(A))) < 1e-12);
        CHECK(adjoint_matrix(adjoint_matrix(A)) == A);
    }
}

TEST_CASE("grams of forest-structured matrices are positive semidefinite") {
    Rng rng(24);
    for (int trial = 0; trial < 10; ++trial) {
        OpMatrix M = random_forest_matrix(rng, 6);
        OpMatrix G = gram(M);
        CHECK(max_abs_diff(adjoint_matrix(G), G) < 1e-12);
        Eigen::MatrixXd Gt = leading_blocks(to_truncation(G, 64), G.rows(), G.cols(), 64, 32);
        Eigen::MatrixXd sym = 0.5 * (Gt + Gt.transpose());
        CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(sym).eigenvalues().minCoeff() >= -1e-8);
    }
}
