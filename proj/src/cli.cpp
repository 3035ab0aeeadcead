#include "wfem/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "wfem/analysis.hpp"
#include "wfem/coeff_expr.hpp"
#include "wfem/solver.hpp"

namespace wfem {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15e", v);
    return buf;
}

ScalarFn numeric_derivative(const ScalarFn& fn) {
    return [fn](double x) {
        double d = 1e-5 * (1.0 + std::fabs(x));
        return (fn(x + d) - fn(x - d)) / (2.0 * d);
    };
}

// Resolve the configured problem; inline coefficient specs go through the
// expression grammar, and a nonzero convection term through the
// integrating-factor transform.
Problem resolve_problem(const RunConfig& cfg, const ManufacturedSolution** exact, int n_q) {
    *exact = nullptr;
    if (cfg.problem != "inline") {
        const RegistryEntry& entry = registry(cfg.problem);
        *exact = &entry.exact;
        return entry.problem;
    }
    if (cfg.a2_expr.empty() || cfg.f_expr.empty())
        throw std::invalid_argument("inline problem requires --a2 and --f");
    if (!(cfg.interval_b > cfg.interval_a))
        throw std::invalid_argument("inline problem requires interval a < b");
    if (!(cfg.a_min > 0)) throw std::invalid_argument("inline problem requires a_min > 0");

    GeneralProblem g;
    g.a = cfg.interval_a;
    g.b = cfg.interval_b;
    g.a2 = parse_coefficient(cfg.a2_expr);
    g.a2_prime = numeric_derivative(g.a2);
    g.a1 = cfg.a1_expr.empty() ? ScalarFn([](double) { return 0.0; })
                               : parse_coefficient(cfg.a1_expr);
    g.a0 = cfg.a0_expr.empty() ? ScalarFn([](double) { return 0.0; })
                               : parse_coefficient(cfg.a0_expr);
    g.f = parse_coefficient(cfg.f_expr);
    g.a_min = cfg.a_min;

    for (int s = 0; s <= 64; ++s) {
        double x = g.a + (g.b - g.a) * s / 64.0;
        if (!(g.a2(x) >= g.a_min - 1e-9 * std::max(1.0, g.a_min)))
            throw std::invalid_argument("inline problem: a2 drops below the declared a_min");
    }

    bool has_a1 = !cfg.a1_expr.empty();
    if (has_a1) return to_self_adjoint(g, n_q);
    Problem p;
    p.a = g.a;
    p.b = g.b;
    p.a2 = g.a2;
    p.a2_prime = g.a2_prime;
    p.a0 = g.a0;
    p.f = g.f;
    p.a_min = g.a_min;
    return p;
}

Mesh1D resolve_mesh(const RunConfig& cfg, const Problem& p) {
    if (!cfg.mesh_nodes.empty()) {
        Mesh1D mesh = make_mesh(cfg.mesh_nodes);
        if (std::fabs(mesh.a() - p.a) > 1e-12 || std::fabs(mesh.b() - p.b) > 1e-12)
            throw std::invalid_argument("mesh nodes must span the problem interval");
        return mesh;
    }
    if (cfg.mesh_n < 1) throw std::invalid_argument("mesh must have at least one element");
    return uniform_mesh(p.a, p.b, cfg.mesh_n);
}

double solve_discrepancy(const Solution& a, const Solution& b) {
    double d = 0;
    for (size_t i = 0; i < a.u_h.interior_coeffs.size(); ++i)
        for (size_t j = 0; j < a.u_h.interior_coeffs[i].size(); ++j)
            d = std::max(d, std::fabs(a.u_h.interior_coeffs[i][j] - b.u_h.interior_coeffs[i][j]));
    for (size_t i = 0; i < a.u_h.node_values.size(); ++i)
        d = std::max(d, std::fabs(a.u_h.node_values[i] - b.u_h.node_values[i]));
    return d;
}

struct SolveArtifacts {
    Solution primary;
    StabilityReport stability;
    bool has_discrepancy = false;
    double discrepancy = 0;
    bool has_errors = false;
    ErrorTriple err;
};

void emit_solve_json(const RunConfig& cfg, const SolveArtifacts& art, int r, int n_q,
                     std::ostream& os) {
    nlohmann::json j;
    j["command"] = "solve";
    j["problem"] = cfg.problem;
    j["k"] = cfg.k;
    j["r"] = r;
    j["n_q"] = n_q;
    j["method"] = cfg.method;
    j["mesh"] = art.primary.u_h.mesh.nodes;
    j["node_values"] = art.primary.u_h.node_values;
    j["interior_coeffs"] = art.primary.u_h.interior_coeffs;
    j["residual_norm"] = art.primary.residual_norm;
    j["stability"] = {{"lhs", art.stability.lhs},
                      {"f_norm", art.stability.f_norm},
                      {"bound_factor", art.stability.bound_factor},
                      {"rhs", art.stability.rhs},
                      {"holds", art.stability.holds}};
    if (art.primary.sweep) {
        const SweepDiagnostics& d = *art.primary.sweep;
        j["sweep"] = {{"left_boundary_residual", d.left_boundary_residual},
                      {"shoot_coeff", d.shoot_coeff},
                      {"closure_coeff", d.closure_coeff},
                      {"closure_residual", d.closure_residual},
                      {"closure_degenerate", d.closure_degenerate}};
    }
    if (art.has_discrepancy) j["method_discrepancy"] = art.discrepancy;
    if (art.has_errors)
        j["errors"] = {{"e_H1", art.err.h1_broken},
                       {"e_L2", art.err.l2},
                       {"e_node", art.err.nodal_max}};
    os << j.dump(2) << '\n';
}

void emit_solve_text(const RunConfig& cfg, const SolveArtifacts& art, int r, int n_q, bool csv,
                     std::ostream& os) {
    const GlobalWeakFunction& u = art.primary.u_h;
    if (csv) {
        os << "node,x,u_h\n";
        for (size_t i = 0; i < u.mesh.nodes.size(); ++i)
            os << i << ',' << fmt(u.mesh.nodes[i]) << ',' << fmt(u.node_values[i]) << '\n';
        os << "\nelement,j,coeff\n";
        for (size_t i = 0; i < u.interior_coeffs.size(); ++i)
            for (size_t j = 0; j < u.interior_coeffs[i].size(); ++j)
                os << i << ',' << j << ',' << fmt(u.interior_coeffs[i][j]) << '\n';
        os << "\nkey,value\n";
    } else {
        os << "problem " << cfg.problem << "  k=" << cfg.k << " r=" << r << " n_q=" << n_q
           << " method=" << cfg.method << "  elements=" << u.mesh.n_elements() << "\n\n";
        os << "| node | x | u_h |\n|---|---|---|\n";
        for (size_t i = 0; i < u.mesh.nodes.size(); ++i)
            os << "| " << i << " | " << fmt(u.mesh.nodes[i]) << " | " << fmt(u.node_values[i])
               << " |\n";
        os << "\n| element | coefficients |\n|---|---|\n";
        for (size_t i = 0; i < u.interior_coeffs.size(); ++i) {
            os << "| " << i << " |";
            for (double c : u.interior_coeffs[i]) os << ' ' << fmt(c);
            os << " |\n";
        }
        os << '\n';
    }
    auto kv = [&](const char* key, const std::string& value) {
        if (csv)
            os << key << ',' << value << '\n';
        else
            os << key << ": " << value << '\n';
    };
    kv("residual_norm", fmt(art.primary.residual_norm));
    kv("stability_lhs", fmt(art.stability.lhs));
    kv("stability_f_norm", fmt(art.stability.f_norm));
    kv("stability_bound_factor", fmt(art.stability.bound_factor));
    kv("stability_rhs", fmt(art.stability.rhs));
    kv("stability_holds", art.stability.holds ? "true" : "false");
    if (art.primary.sweep) {
        const SweepDiagnostics& d = *art.primary.sweep;
        kv("sweep_left_boundary_residual", fmt(d.left_boundary_residual));
        kv("sweep_shoot_coeff", fmt(d.shoot_coeff));
        kv("sweep_closure_coeff", fmt(d.closure_coeff));
        kv("sweep_closure_residual", fmt(d.closure_residual));
        kv("sweep_closure_degenerate", d.closure_degenerate ? "true" : "false");
    }
    if (art.has_discrepancy) kv("method_discrepancy", fmt(art.discrepancy));
    if (art.has_errors) {
        kv("e_H1", fmt(art.err.h1_broken));
        kv("e_L2", fmt(art.err.l2));
        kv("e_node", fmt(art.err.nodal_max));
    }
}

void validate_common(const RunConfig& cfg) {
    if (cfg.command != "solve" && cfg.command != "convergence")
        throw std::invalid_argument("command must be solve or convergence");
    if (cfg.k < 0 || cfg.k > 6) throw std::invalid_argument("k must lie in 0..6");
    if (cfg.r_override >= 0 && cfg.r_override <= cfg.k)
        throw std::invalid_argument("r override must exceed k");
    if (cfg.method != "global" && cfg.method != "sweep" && cfg.method != "both")
        throw std::invalid_argument("method must be global, sweep, or both");
    if (cfg.format != "csv" && cfg.format != "markdown" && cfg.format != "json")
        throw std::invalid_argument("format must be csv, markdown, or json");
    if (cfg.problem.empty()) throw std::invalid_argument("a problem must be named");
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::string artifact;
    try {
        validate_common(cfg);
        int n_q = cfg.n_q >= 0 ? cfg.n_q : default_quad_order(cfg.k);
        int r = cfg.r_override >= 0 ? cfg.r_override : cfg.k + 1;
        std::ostringstream body;

        if (cfg.command == "convergence") {
            if (cfg.problem == "inline")
                throw std::invalid_argument(
                    "convergence requires a registry problem with a known solution");
            ConvergenceReport rep =
                convergence_study(cfg.problem, cfg.k, cfg.levels, cfg.method, n_q, r);
            if (cfg.format == "csv")
                body << to_csv(rep);
            else if (cfg.format == "json")
                body << to_json_string(rep);
            else
                body << to_markdown(rep);
        } else {
            const ManufacturedSolution* exact = nullptr;
            Problem p = resolve_problem(cfg, &exact, n_q);
            Mesh1D mesh = resolve_mesh(cfg, p);

            SolveArtifacts art;
            if (cfg.method == "sweep") {
                art.primary = solve_sweep(p, mesh, cfg.k, n_q, r);
            } else {
                art.primary = solve_global(assemble_global(p, mesh, cfg.k, n_q, r));
                if (cfg.method == "both") {
                    Solution alt = solve_sweep(p, mesh, cfg.k, n_q, r);
                    art.discrepancy = solve_discrepancy(art.primary, alt);
                    art.has_discrepancy = true;
                    art.primary.sweep = alt.sweep;  // carry the sweep diagnostics
                }
            }
            art.stability = stability_check(art.primary, p, n_q);
            if (exact) {
                art.err = errors(art.primary, *exact, n_q);
                art.has_errors = true;
            }
            if (cfg.format == "json")
                emit_solve_json(cfg, art, r, n_q, body);
            else
                emit_solve_text(cfg, art, r, n_q, cfg.format == "csv", body);
        }
        artifact = body.str();
    } catch (const std::invalid_argument& e) {
        err << "invalid configuration: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "runtime error: " << e.what() << '\n';
        return 3;
    }

    if (cfg.out_path.empty()) {
        out << artifact;
        return 0;
    }
    std::ofstream file(cfg.out_path, std::ios::binary);
    if (!file) {
        err << "runtime error: cannot open output path '" << cfg.out_path << "'\n";
        return 3;
    }
    file << artifact;
    file.close();
    if (!file) {
        err << "runtime error: failed writing output path '" << cfg.out_path << "'\n";
        return 3;
    }
    return 0;
}

}  // namespace wfem
