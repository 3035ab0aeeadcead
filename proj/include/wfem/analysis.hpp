#pragma once
// Error norms and refinement studies.

#include <string>
#include <vector>

#include "wfem/problem.hpp"
#include "wfem/solver.hpp"

namespace wfem {

struct ErrorTriple {
    double h1_broken = 0;  // ||d_w u_h - u'||_h
    // L2 distance between the interior solution and the element-wise L2
    // projection of the exact solution, ||Q_h^0 u - u_h^0||: the quantity a
    // refinement study tracks in the L2 column (it decays one order faster
    // than the plain L2 error and is what the recorded reference histories
    // contain).
    double l2 = 0;
    double nodal_max = 0;  // max_i |u_h^i - u(x_i)|
};

struct LevelResult {
    int n_elements = 0;
    double h = 0;
    ErrorTriple err;
    // NaN on the first level and when the fine error sits at the roundoff
    // floor (< 1e-13).
    double rate_h1 = 0, rate_l2 = 0, rate_nodal = 0;
    double method_discrepancy = 0;  // NaN unless both methods ran
};

struct ConvergenceReport {
    std::string problem_key;
    int k = 0, r = 1, n_q = 0;
    std::string method;
    std::vector<LevelResult> levels;
};

ErrorTriple errors(const Solution& sol, const ManufacturedSolution& m, int n_q);

// ln(e_coarse/e_fine)/ln 2; NaN marker when either error is nonpositive.
double rate(double e_coarse, double e_fine);

// method is "global", "sweep", or "both" (both solves errors from the global
// path and records the per-level max DOF discrepancy). r defaults to k+1.
ConvergenceReport convergence_study(const std::string& problem_key, int k,
                                    const std::vector<int>& levels,
                                    const std::string& method, int n_q, int r = -1);

std::string to_csv(const ConvergenceReport& report);
std::string to_markdown(const ConvergenceReport& report);
std::string to_json_string(const ConvergenceReport& report);

}  // namespace wfem
