#pragma once
// Discretization and solves. Two strategies produce the same solution:
//   solve_global - assemble the symmetric banded system over all unknowns
//                  and factor it (Cholesky, half-bandwidth k+2);
//   solve_sweep  - element-by-element substructuring sweep: starting from
//                  the last element, march a particular solution and the
//                  flux-free homogeneous mode leftward through local
//                  (k+2)x(k+2) solves, then superpose so the left boundary
//                  value vanishes. The left node value is computed, checked,
//                  and reported, never assigned. The integrated-equation
//                  closure relation on the last element is evaluated by
//                  nested quadrature and reported as a diagnostic.

#include <optional>
#include <string>
#include <vector>

#include "wfem/linalg.hpp"
#include "wfem/mesh.hpp"
#include "wfem/problem.hpp"
#include "wfem/weak_space.hpp"

namespace wfem {

struct AssembledSystem {
    DofMap dof_map;
    Mesh1D mesh;
    BandMatrix matrix;  // symmetric positive definite
    std::vector<xreal> rhs;
    int bandwidth = 0;  // half-bandwidth, k+2
};

struct SweepDiagnostics {
    // Left node value after superposition; the Dirichlet condition must
    // emerge at roundoff scale rather than being imposed.
    double left_boundary_residual = 0;
    double shoot_coeff = 0;    // superposition coefficient fixed by u(a) = 0
    double closure_coeff = 0;  // coefficient the closure relation alone would pick
    double closure_residual = 0;  // closure relation residual of the returned solution
    bool closure_degenerate = false;  // closure insensitive to the free mode
};

struct Solution {
    GlobalWeakFunction u_h;
    std::string method;        // "global" or "sweep"
    double residual_norm = 0;  // relative algebraic residual of the assembled system
    std::optional<SweepDiagnostics> sweep;
};

int default_quad_order(int k);  // k + 4

// r defaults to k+1; larger r is accepted for experimentation, r <= k is not.
AssembledSystem assemble_global(const Problem& p, const Mesh1D& mesh, int k, int n_q,
                                int r = -1);
Solution solve_global(const AssembledSystem& sys);
Solution solve_sweep(const Problem& p, const Mesh1D& mesh, int k, int n_q, int r = -1);

struct StabilityReport {
    double lhs = 0;           // ||u_h0|| + ||d_w u_h||_h
    double f_norm = 0;        // L2 norm of the source
    double bound_factor = 0;  // 2((b-a)+1)^2 / a_min
    double rhs = 0;           // bound_factor * f_norm
    bool holds = false;
};
StabilityReport stability_check(const Solution& sol, const Problem& p, int n_q);

// Closure-relation pieces on the trailing interval (xl, b), evaluated with
// nested Gauss rules (inner rule on the truncated interval per outer node):
//   closure_rhs      = int_xl^b (1/a2) ftilde,   ftilde(x) = int_x^b f,
//   closure residual = [u(b) - u(xl) + int_xl^b (1/a2) utilde] - closure_rhs,
//   utilde(x) = int_x^b a0 u_h0.
double closure_rhs(const Problem& p, double xl, int n_q);
double closure_residual_of(const Problem& p, const Solution& sol, int n_q);

}  // namespace wfem
