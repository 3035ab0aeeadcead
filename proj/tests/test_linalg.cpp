#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "wfem/linalg.hpp"

using namespace wfem;

TEST_CASE("dense solve: agreement with exact rational elimination") {
    std::mt19937 rng(314159u);
    std::uniform_int_distribution<int> entry(-9, 9);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 3 + trial % 4;
        std::vector<std::vector<oracle::Rat>> A(n, std::vector<oracle::Rat>(n));
        std::vector<oracle::Rat> b(n);
        DenseMatrix Af(n, n);
        std::vector<xreal> bf(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                A[i][j] = oracle::Rat(entry(rng), 1 + (i + j) % 3);
                Af(i, j) = static_cast<xreal>(A[i][j].to_double());
            }
            A[i][i] += oracle::Rat(12);  // keep the sample comfortably nonsingular
            Af(i, i) += 12;
            b[i] = oracle::Rat(entry(rng));
            bf[i] = static_cast<xreal>(b[i].to_double());
        }
        std::vector<oracle::Rat> exact = oracle::rat_solve(A, b);
        std::vector<xreal> got = dense_solve(Af, bf);
        for (int i = 0; i < n; ++i)
            CHECK(std::fabs(static_cast<double>(got[i]) - exact[i].to_double()) <= 1e-12);
    }
}

TEST_CASE("dense solve: singular and malformed inputs rejected") {
    DenseMatrix s(2, 2);
    s(0, 0) = 1; s(0, 1) = 2;
    s(1, 0) = 2; s(1, 1) = 4;
    CHECK_THROWS_AS(dense_solve(s, {1.0L, 1.0L}), std::runtime_error);

    DenseMatrix z(2, 2);
    CHECK_THROWS_AS(dense_solve(z, {1.0L, 1.0L}), std::runtime_error);

    DenseMatrix ok(2, 2);
    ok(0, 0) = 1; ok(1, 1) = 1;
    CHECK_THROWS_AS(dense_solve(ok, {1.0L}), std::invalid_argument);
}

TEST_CASE("matrix rank") {
    DenseMatrix id(4, 4);
    for (int i = 0; i < 4; ++i) id(i, i) = 1;
    CHECK(matrix_rank(id) == 4);

    DenseMatrix zero(3, 5);
    CHECK(matrix_rank(zero) == 0);

    // Third row is the sum of the first two.
    DenseMatrix dep(3, 3);
    dep(0, 0) = 1; dep(0, 1) = 2; dep(0, 2) = -1;
    dep(1, 0) = 0; dep(1, 1) = 3; dep(1, 2) = 4;
    dep(2, 0) = 1; dep(2, 1) = 5; dep(2, 2) = 3;
    CHECK(matrix_rank(dep) == 2);

    DenseMatrix wide(2, 3);
    wide(0, 0) = 1; wide(0, 2) = 2;
    wide(1, 1) = -3;
    CHECK(matrix_rank(wide) == 2);
}

TEST_CASE("band matrix: storage, symmetric access, matvec") {
    BandMatrix A(5, 2);
    A.at(0, 0) = 4;
    A.at(1, 0) = -1;
    A.at(2, 0) = 0.5;
    A.at(3, 3) = 2;
    CHECK(A.get(0, 0) == 4.0L);
    CHECK(A.get(0, 1) == -1.0L);   // mirrored
    CHECK(A.get(1, 0) == -1.0L);
    CHECK(A.get(0, 2) == 0.5L);
    CHECK(A.get(0, 3) == 0.0L);    // outside the band
    CHECK(A.get(4, 0) == 0.0L);

    // Matvec against a dense recomputation.
    std::mt19937 rng(99u);
    std::uniform_real_distribution<double> unit(-1, 1);
    BandMatrix B(7, 3);
    for (int i = 0; i < 7; ++i)
        for (int j = std::max(0, i - 3); j <= i; ++j) B.at(i, j) = unit(rng);
    std::vector<xreal> x(7);
    for (auto& v : x) v = unit(rng);
    std::vector<xreal> y = band_matvec(B, x);
    for (int i = 0; i < 7; ++i) {
        xreal acc = 0;
        for (int j = 0; j < 7; ++j) acc += B.get(i, j) * x[j];
        CHECK(std::fabs(static_cast<double>(y[i] - acc)) < 1e-15);
    }
}

TEST_CASE("banded cholesky: matches dense solve on SPD data") {
    std::mt19937 rng(4242u);
    std::uniform_real_distribution<double> unit(-1, 1);
    int n = 12, bw = 3;
    BandMatrix A(n, bw);
    for (int i = 0; i < n; ++i) {
        double rowsum = 0;
        for (int j = std::max(0, i - bw); j < i; ++j) {
            A.at(i, j) = unit(rng);
            rowsum += std::fabs(static_cast<double>(A.get(i, j)));
        }
        A.at(i, i) = rowsum + 1.0 + std::fabs(unit(rng));  // diagonally dominant, SPD
    }
    for (int i = 0; i < n; ++i) {
        double rowsum = 0;
        for (int j = 0; j < n; ++j)
            if (j != i) rowsum += std::fabs(static_cast<double>(A.get(i, j)));
        if (!(static_cast<double>(A.get(i, i)) > rowsum)) A.at(i, i) = rowsum + 1;
    }
    std::vector<xreal> b(n);
    for (auto& v : b) v = unit(rng);

    DenseMatrix Ad(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) Ad(i, j) = A.get(i, j);
    std::vector<xreal> dense = dense_solve(Ad, b);

    BandMatrix L = A;
    cholesky_band(L);
    std::vector<xreal> banded = solve_cholesky(L, b);
    for (int i = 0; i < n; ++i)
        CHECK(std::fabs(static_cast<double>(banded[i] - dense[i])) < 1e-12);

    // Residual of the banded solution.
    std::vector<xreal> r = band_matvec(A, banded);
    for (int i = 0; i < n; ++i)
        CHECK(std::fabs(static_cast<double>(r[i] - b[i])) < 1e-12);
}

TEST_CASE("banded cholesky: indefinite matrix rejected") {
    BandMatrix A(3, 1);
    A.at(0, 0) = 1;
    A.at(1, 1) = -2;
    A.at(2, 2) = 1;
    CHECK_THROWS_AS(cholesky_band(A), std::runtime_error);

    // Positive diagonal but indefinite: [[1, 2], [2, 1]].
    BandMatrix B(2, 1);
    B.at(0, 0) = 1;
    B.at(1, 0) = 2;
    B.at(1, 1) = 1;
    CHECK_THROWS_AS(cholesky_band(B), std::runtime_error);
}
