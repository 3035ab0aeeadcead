#pragma once
// Small dense solves and a symmetric banded Cholesky. Everything runs in
// extended precision: the finest-mesh nodal errors measured by the test
// harness sit near 1e-12, which double-precision factorization noise would
// contaminate.

#include <vector>

namespace wfem {

using xreal = long double;

struct DenseMatrix {
    int rows = 0, cols = 0;
    std::vector<xreal> a;  // row-major

    DenseMatrix() = default;
    DenseMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}
    xreal& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    xreal operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

// Partial-pivot LU solve; throws std::runtime_error on a numerically
// singular pivot.
std::vector<xreal> dense_solve(DenseMatrix A, std::vector<xreal> b);

// Numerical rank by full-pivot elimination with a threshold relative to the
// largest initial pivot.
int matrix_rank(DenseMatrix A, double rel_tol = 1e-10);

// Symmetric matrix with half-bandwidth bw, lower storage: entry (i, j) with
// 0 <= i-j <= bw lives at store[i*(bw+1) + (i-j)].
struct BandMatrix {
    int n = 0, bw = 0;
    std::vector<xreal> store;

    BandMatrix() = default;
    BandMatrix(int n_, int bw_)
        : n(n_), bw(bw_), store(static_cast<size_t>(n_) * (bw_ + 1), 0) {}
    xreal& at(int i, int j);        // requires j <= i <= j + bw
    xreal get(int i, int j) const;  // symmetric accessor, 0 outside the band
};

// y = A x for the symmetric band matrix.
std::vector<xreal> band_matvec(const BandMatrix& A, const std::vector<xreal>& x);

// In-place banded Cholesky A = L L^T; throws std::runtime_error if a pivot
// fails to be positive (matrix not SPD).
void cholesky_band(BandMatrix& A);

// Solve L L^T x = b with the factored band.
std::vector<xreal> solve_cholesky(const BandMatrix& L, std::vector<xreal> b);

}  // namespace wfem
