#pragma once
// Weak functions, the constrained global space, and the discrete weak
// derivative: the unique p in P_r with
//   (p, q)_I = -(v0, q')_I + v^R q(xr) - v^L q(xl)   for all q in P_r.

#include <vector>

#include "wfem/mesh.hpp"
#include "wfem/poly.hpp"

namespace wfem {

// One element's weak function {v0, v^L, v^R}; the endpoint values are
// independent data, not traces of the interior.
struct LocalWeakFunction {
    ElementPolynomial interior;
    double left_value = 0;
    double right_value = 0;
};

// Global weak function of degree k: one shared value per node (jumps vanish
// structurally) and zero at the left boundary node.
struct GlobalWeakFunction {
    Mesh1D mesh;
    int k = 0;
    int r = 1;  // weak-derivative degree carried by the space, defaults to k+1
    std::vector<std::vector<double>> interior_coeffs;  // per element, size k+1
    std::vector<double> node_values;                   // size N, [0] == 0

    LocalWeakFunction local(int element) const;
};

// Unknown layout of the assembled system: element i contributes its k+1
// interior coefficients, then the shared value at its right node. The left
// boundary value is structurally zero and owns no unknown.
struct DofMap {
    int k = 0;
    int r = 1;
    int n_elements = 0;

    int dim() const { return (k + 2) * n_elements; }
    int interior_index(int element, int j) const { return element * (k + 2) + j; }
    int node_index(int node) const { return (node - 1) * (k + 2) + k + 1; }  // node >= 1
};

// Discrete weak derivative of v as an element polynomial of degree <= r.
// Requires r >= k+1 (k = interior degree) and a nondegenerate element.
ElementPolynomial weak_derivative(const LocalWeakFunction& v, int r);

// The moment-matrix form M d = A V0 + B [v^L, v^R] of the defining equation,
// in either basis; M is the identity for the orthonormal kind.
struct WeakDerivativeMatrices {
    std::vector<std::vector<double>> M;  // (r+1) x (r+1)
    std::vector<std::vector<double>> A;  // (r+1) x (k+1)
    std::vector<std::vector<double>> B;  // (r+1) x 2
};
WeakDerivativeMatrices weak_derivative_matrices(double xl, double xr, int k, int r,
                                                BasisKind kind);

// [v]_x = v_right^L - v_left^R across the shared node; elements must be adjacent.
double jump(const LocalWeakFunction& v_left, const LocalWeakFunction& v_right);

// Broken norm and inner product over per-element pieces (orthonormal coefficients).
double broken_norm(const std::vector<ElementPolynomial>& pieces);
double discrete_inner(const std::vector<ElementPolynomial>& u,
                      const std::vector<ElementPolynomial>& v);

}  // namespace wfem
