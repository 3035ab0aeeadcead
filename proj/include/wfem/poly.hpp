#pragma once
// Polynomial spaces on a single element. Working representation is the
// L2-orthonormal Legendre basis phi_n(x) = sqrt((2n+1)/h) P_n(t(x)) so the
// element mass matrix is the identity; the global-monomial basis is kept as
// a secondary representation for moment-matrix cross checks.

#include <functional>
#include <vector>

namespace wfem {

enum class BasisKind { orthonormal, monomial };

// Evaluate Legendre P_0..P_n at t into out (n+1 slots).
void legendre_all(int n, double t, double* out);

struct ElementBasis {
    int degree = 0;
    double xl = 0, xr = 1;

    double h() const { return xr - xl; }
    double ref(double x) const { return (2 * x - xl - xr) / (xr - xl); }
    double scale(int n) const;        // sqrt((2n+1)/h)
    double eval(int n, double x) const;
    double eval_deriv(int n, double x) const;
    double end_left(int n) const;     // phi_n(xl) = (-1)^n scale(n)
    double end_right(int n) const;    // phi_n(xr) = scale(n)
};

struct ElementPolynomial {
    ElementBasis basis;
    std::vector<double> coeffs;       // size degree+1

    // Rejects x outside the closed element (endpoint traces permitted).
    double eval(double x) const;
};

ElementPolynomial zero_poly(const ElementBasis& basis);
ElementPolynomial diff_poly(const ElementPolynomial& p);
// Antiderivative with prescribed value at the left endpoint; degree rises by one.
ElementPolynomial antiderivative(const ElementPolynomial& p, double value_left);

// L2-orthogonal projection of f onto P_degree of the given basis (n_q-point Gauss).
ElementPolynomial project_onto_basis(const std::function<double(double)>& f,
                                     const ElementBasis& basis, int n_q);

// Gram matrix of P_l on (xl, xr): identity for the orthonormal kind, the
// moment matrix (x^s, x^t) for global monomials.
std::vector<std::vector<double>> mass_matrix(int l, double xl, double xr, BasisKind kind);

}  // namespace wfem
