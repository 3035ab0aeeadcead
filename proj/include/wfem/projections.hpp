#pragma once
// Projection operators used by the error analysis and its tests:
//   project_Ph  - element-wise L2 projection onto P_l,
//   project_Qh  - weak-function projection {P_h^k u, u(x_i), u(x_{i+1})},
//   project_pih - continuous degree-(k+1) projection with piece' = P_h^k w'
//                 and exact node values.

#include "wfem/mesh.hpp"
#include "wfem/poly.hpp"
#include "wfem/problem.hpp"
#include "wfem/weak_space.hpp"

namespace wfem {

struct ProjectionResult {
    std::vector<ElementPolynomial> pieces;
    std::vector<double> node_values;  // filled by project_pih (endpoint-exact)
};

ProjectionResult project_Ph(const ScalarFn& u, int l, const Mesh1D& mesh, int n_q);

// Requires u(a) = 0 so the result lies in the constrained space.
GlobalWeakFunction project_Qh(const ScalarFn& u, int k, const Mesh1D& mesh, int n_q);

// w' must be supplied in closed form; no numerical differentiation happens here.
ProjectionResult project_pih(const ScalarFn& w, const ScalarFn& w_prime, int k,
                             const Mesh1D& mesh, int n_q);

}  // namespace wfem
