#include "wfem/projections.hpp"

#include <cmath>
#include <stdexcept>

namespace wfem {

ProjectionResult project_Ph(const ScalarFn& u, int l, const Mesh1D& mesh, int n_q) {
    if (l < 0) throw std::invalid_argument("project_Ph: negative degree");
    ProjectionResult out;
    out.pieces.reserve(mesh.n_elements());
    for (int i = 0; i < mesh.n_elements(); ++i) {
        ElementBasis basis{l, mesh.xl(i), mesh.xr(i)};
        out.pieces.push_back(project_onto_basis(u, basis, n_q));
    }
    out.node_values.resize(mesh.nodes.size());
    for (size_t j = 0; j < mesh.nodes.size(); ++j) out.node_values[j] = u(mesh.nodes[j]);
    return out;
}

GlobalWeakFunction project_Qh(const ScalarFn& u, int k, const Mesh1D& mesh, int n_q) {
    if (k < 0) throw std::invalid_argument("project_Qh: negative degree");
    if (std::fabs(u(mesh.a())) > 1e-10)
        throw std::invalid_argument("project_Qh: u must vanish at the left endpoint");
    GlobalWeakFunction v;
    v.mesh = mesh;
    v.k = k;
    v.r = k + 1;
    v.interior_coeffs.reserve(mesh.n_elements());
    for (int i = 0; i < mesh.n_elements(); ++i) {
        ElementBasis basis{k, mesh.xl(i), mesh.xr(i)};
        v.interior_coeffs.push_back(project_onto_basis(u, basis, n_q).coeffs);
    }
    v.node_values.resize(mesh.nodes.size());
    v.node_values[0] = 0.0;
    for (size_t j = 1; j < mesh.nodes.size(); ++j) v.node_values[j] = u(mesh.nodes[j]);
    return v;
}

ProjectionResult project_pih(const ScalarFn& w, const ScalarFn& w_prime, int k,
                             const Mesh1D& mesh, int n_q) {
    if (k < 0) throw std::invalid_argument("project_pih: negative degree");
    ProjectionResult out;
    out.pieces.reserve(mesh.n_elements());
    for (int i = 0; i < mesh.n_elements(); ++i) {
        ElementBasis basis{k, mesh.xl(i), mesh.xr(i)};
        ElementPolynomial dproj = project_onto_basis(w_prime, basis, n_q);
        // Anchoring at the left node keeps the piecewise function continuous:
        // the projected slope integrates to the exact increment.
        out.pieces.push_back(antiderivative(dproj, w(mesh.xl(i))));
    }
    out.node_values.resize(mesh.nodes.size());
    for (size_t j = 0; j < mesh.nodes.size(); ++j) out.node_values[j] = w(mesh.nodes[j]);
    return out;
}

}  // namespace wfem
