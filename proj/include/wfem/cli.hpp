#pragma once
// Front-end plumbing shared by the command-line binary and its tests.

#include <iosfwd>
#include <string>
#include <vector>

namespace wfem {

struct RunConfig {
    std::string command;  // "solve" | "convergence"
    std::string problem;  // registry key, or "inline" with the expressions below
    std::string a2_expr, a1_expr, a0_expr, f_expr;
    double interval_a = 0, interval_b = 1;
    double a_min = 1;
    int k = 0;
    int r_override = -1;  // default r = k+1; must exceed k when set
    int mesh_n = 8;
    std::vector<double> mesh_nodes;  // explicit nodes take precedence
    std::vector<int> levels;         // element counts for convergence
    std::string method = "global";   // global | sweep | both
    int n_q = -1;                    // default k+4
    std::string format = "markdown";  // csv | markdown | json
    std::string out_path;             // empty writes to `out`
};

// Returns the process exit status: 0 success, 2 validation error, 3 runtime
// failure. Artifacts go to out_path when set, otherwise to `out`; messages
// to `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace wfem
