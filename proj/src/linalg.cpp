#include "wfem/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wfem {

std::vector<xreal> dense_solve(DenseMatrix A, std::vector<xreal> b) {
    const int n = A.rows;
    if (A.cols != n || static_cast<int>(b.size()) != n)
        throw std::invalid_argument("dense_solve: shape mismatch");
    xreal scale = 0;
    for (const xreal& v : A.a) scale = std::max(scale, std::fabs(v));
    if (scale == 0) throw std::runtime_error("dense_solve: zero matrix");
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int i = col + 1; i < n; ++i)
            if (std::fabs(A(i, col)) > std::fabs(A(piv, col))) piv = i;
        if (std::fabs(A(piv, col)) < 1e-15L * scale)
            throw std::runtime_error("dense_solve: numerically singular matrix");
        if (piv != col) {
            for (int j = col; j < n; ++j) std::swap(A(piv, j), A(col, j));
            std::swap(b[piv], b[col]);
        }
        for (int i = col + 1; i < n; ++i) {
            xreal m = A(i, col) / A(col, col);
            if (m == 0) continue;
            for (int j = col; j < n; ++j) A(i, j) -= m * A(col, j);
            b[i] -= m * b[col];
        }
    }
    std::vector<xreal> x(n, 0);
    for (int i = n - 1; i >= 0; --i) {
        xreal s = b[i];
        for (int j = i + 1; j < n; ++j) s -= A(i, j) * x[j];
        x[i] = s / A(i, i);
    }
    return x;
}

int matrix_rank(DenseMatrix A, double rel_tol) {
    const int n = A.rows, m = A.cols;
    xreal scale = 0;
    for (const xreal& v : A.a) scale = std::max(scale, std::fabs(v));
    if (scale == 0) return 0;
    const xreal tol = static_cast<xreal>(rel_tol) * scale;
    int rank = 0;
    for (int step = 0; step < std::min(n, m); ++step) {
        int pi = -1, pj = -1;
        xreal best = 0;
        for (int i = rank; i < n; ++i)
            for (int j = rank; j < m; ++j)
                if (std::fabs(A(i, j)) > best) { best = std::fabs(A(i, j)); pi = i; pj = j; }
        if (best <= tol) break;
        if (pi != rank)
            for (int j = 0; j < m; ++j) std::swap(A(pi, j), A(rank, j));
        if (pj != rank)
            for (int i = 0; i < n; ++i) std::swap(A(i, pj), A(i, rank));
        for (int i = rank + 1; i < n; ++i) {
            xreal f = A(i, rank) / A(rank, rank);
            for (int j = rank; j < m; ++j) A(i, j) -= f * A(rank, j);
        }
        ++rank;
    }
    return rank;
}

xreal& BandMatrix::at(int i, int j) {
    return store[static_cast<size_t>(i) * (bw + 1) + (i - j)];
}

xreal BandMatrix::get(int i, int j) const {
    if (i < j) std::swap(i, j);
    if (i - j > bw) return 0;
    return store[static_cast<size_t>(i) * (bw + 1) + (i - j)];
}

std::vector<xreal> band_matvec(const BandMatrix& A, const std::vector<xreal>& x) {
    std::vector<xreal> y(A.n, 0);
    for (int i = 0; i < A.n; ++i) {
        xreal s = 0;
        int j0 = std::max(0, i - A.bw), j1 = std::min(A.n - 1, i + A.bw);
        for (int j = j0; j <= j1; ++j) s += A.get(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

void cholesky_band(BandMatrix& A) {
    for (int j = 0; j < A.n; ++j) {
        xreal d = A.at(j, j);
        for (int t = std::max(0, j - A.bw); t < j; ++t) {
            xreal l = A.at(j, t);
            d -= l * l;
        }
        if (!(d > 0)) throw std::runtime_error("cholesky_band: matrix is not positive definite");
        d = std::sqrt(d);
        A.at(j, j) = d;
        for (int i = j + 1; i <= std::min(A.n - 1, j + A.bw); ++i) {
            xreal s = A.at(i, j);
            for (int t = std::max(0, i - A.bw); t < j; ++t)
                s -= A.at(i, t) * A.at(j, t);
            A.at(i, j) = s / d;
        }
    }
}

std::vector<xreal> solve_cholesky(const BandMatrix& L, std::vector<xreal> b) {
    const int n = L.n;
    for (int i = 0; i < n; ++i) {
        xreal s = b[i];
        for (int j = std::max(0, i - L.bw); j < i; ++j) s -= L.get(i, j) * b[j];
        b[i] = s / L.get(i, i);
    }
    for (int i = n - 1; i >= 0; --i) {
        xreal s = b[i];
        for (int j = i + 1; j <= std::min(n - 1, i + L.bw); ++j) s -= L.get(j, i) * b[j];
        b[i] = s / L.get(i, i);
    }
    return b;
}

}  // namespace wfem
