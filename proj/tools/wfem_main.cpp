#include <iostream>
#include <vector>

#include "CLI11.hpp"
#include "wfem/cli.hpp"
#include "wfem/problem.hpp"

int main(int argc, char** argv) {
    CLI::App app{"one-dimensional weak Galerkin solver"};
    app.require_subcommand(0, 1);
    app.set_config("--config", "", "flat key=value configuration file; flags override it");

    wfem::RunConfig cfg;
    std::vector<double> interval;

    app.add_option("--problem", cfg.problem,
                   "registry key (see --list-problems) or 'inline' with --a2/--a0/--f");
    app.add_option("--k", cfg.k, "interior polynomial degree, 0..6");
    app.add_option("--r", cfg.r_override, "weak-derivative degree override, must exceed k");
    app.add_option("--mesh-n", cfg.mesh_n, "uniform element count for solve");
    app.add_option("--mesh-nodes", cfg.mesh_nodes, "explicit mesh nodes, overrides --mesh-n");
    app.add_option("--levels", cfg.levels, "element counts for a convergence study");
    app.add_option("--method", cfg.method, "global | sweep | both");
    app.add_option("--quad-order", cfg.n_q, "Gauss points per element (default k+4)");
    app.add_option("--format", cfg.format, "csv | markdown | json");
    app.add_option("--out", cfg.out_path, "write the artifact to this path instead of stdout");
    app.add_option("--a2", cfg.a2_expr, "inline diffusion coefficient expression");
    app.add_option("--a1", cfg.a1_expr, "inline convection coefficient expression");
    app.add_option("--a0", cfg.a0_expr, "inline reaction coefficient expression");
    app.add_option("--f", cfg.f_expr, "inline source expression");
    app.add_option("--interval", interval, "inline problem interval: a b")->expected(2);
    app.add_option("--amin", cfg.a_min, "declared lower bound of the diffusion coefficient");

    bool list_problems = false;
    app.add_flag("--list-problems", list_problems, "print the registry keys and exit");

    CLI::App* solve = app.add_subcommand("solve", "solve one mesh and emit the solution");
    CLI::App* conv =
        app.add_subcommand("convergence", "run a refinement study over --levels");
    solve->fallthrough();
    conv->fallthrough();

    CLI11_PARSE(app, argc, argv);

    if (list_problems) {
        for (const std::string& key : wfem::registry_keys()) std::cout << key << '\n';
        return 0;
    }
    if (!solve->parsed() && !conv->parsed()) {
        std::cerr << "invalid configuration: expected a subcommand, solve or convergence\n";
        return 2;
    }
    if (interval.size() == 2) {
        cfg.interval_a = interval[0];
        cfg.interval_b = interval[1];
    }
    cfg.command = solve->parsed() ? "solve" : "convergence";
    return wfem::run(cfg, std::cout, std::cerr);
}
