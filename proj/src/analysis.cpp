#include "wfem/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "wfem/projections.hpp"
#include "wfem/quadrature.hpp"

namespace wfem {

namespace {
const double kNaN = std::numeric_limits<double>::quiet_NaN();
}

ErrorTriple errors(const Solution& sol, const ManufacturedSolution& m, int n_q) {
    const GlobalWeakFunction& u = sol.u_h;
    const int nel = u.mesh.n_elements();
    const int nq = n_q + 2;  // norms are measured above the scheme's own order
    const QuadRule& q = gauss_rule(nq);

    ErrorTriple e;
    xreal h1 = 0, l2 = 0;
    for (int i = 0; i < nel; ++i) {
        LocalWeakFunction v = u.local(i);
        ElementPolynomial d = weak_derivative(v, u.r);
        double mid = 0.5 * (u.mesh.xl(i) + u.mesh.xr(i)), half = 0.5 * u.mesh.h_of(i);
        for (int iq = 0; iq < nq; ++iq) {
            double x = mid + half * q.points[iq];
            double diff = d.eval(x) - m.u_prime(x);
            h1 += static_cast<xreal>(half * q.weights[iq]) * diff * diff;
        }
        // Orthonormal coefficients make the projection distance a plain
        // coefficient-vector distance.
        ElementPolynomial proj = project_onto_basis(m.u, v.interior.basis, nq);
        for (int j = 0; j <= u.k; ++j) {
            xreal dc = static_cast<xreal>(proj.coeffs[j]) - v.interior.coeffs[j];
            l2 += dc * dc;
        }
    }
    e.h1_broken = static_cast<double>(sqrtl(h1));
    e.l2 = static_cast<double>(sqrtl(l2));
    e.nodal_max = 0;
    for (size_t i = 0; i < u.mesh.nodes.size(); ++i)
        e.nodal_max = std::max(e.nodal_max, std::fabs(u.node_values[i] - m.u(u.mesh.nodes[i])));
    return e;
}

double rate(double e_coarse, double e_fine) {
    if (!(e_coarse > 0) || !(e_fine > 0)) return kNaN;
    return std::log(e_coarse / e_fine) / std::log(2.0);
}

namespace {

double rate_or_floor(double e_coarse, double e_fine) {
    if (e_fine < 1e-13) return kNaN;  // roundoff floor, no meaningful rate
    return rate(e_coarse, e_fine);
}

double max_dof_discrepancy(const Solution& a, const Solution& b) {
    double d = 0;
    for (size_t i = 0; i < a.u_h.interior_coeffs.size(); ++i)
        for (size_t j = 0; j < a.u_h.interior_coeffs[i].size(); ++j)
            d = std::max(d, std::fabs(a.u_h.interior_coeffs[i][j] - b.u_h.interior_coeffs[i][j]));
    for (size_t i = 0; i < a.u_h.node_values.size(); ++i)
        d = std::max(d, std::fabs(a.u_h.node_values[i] - b.u_h.node_values[i]));
    return d;
}

}  // namespace

ConvergenceReport convergence_study(const std::string& problem_key, int k,
                                    const std::vector<int>& levels, const std::string& method,
                                    int n_q, int r) {
    if (levels.empty()) throw std::invalid_argument("convergence_study: empty level list");
    if (method != "global" && method != "sweep" && method != "both")
        throw std::invalid_argument("convergence_study: method must be global, sweep, or both");
    const RegistryEntry& entry = registry(problem_key);
    if (n_q < 0) n_q = default_quad_order(k);
    if (r < 0) r = k + 1;

    ConvergenceReport rep;
    rep.problem_key = problem_key;
    rep.k = k;
    rep.r = r;
    rep.n_q = n_q;
    rep.method = method;

    for (size_t lev = 0; lev < levels.size(); ++lev) {
        int n = levels[lev];
        if (n < 1) throw std::invalid_argument("convergence_study: level must be >= 1 elements");
        Mesh1D mesh = uniform_mesh(entry.problem.a, entry.problem.b, n);

        Solution sol;
        double discrepancy = kNaN;
        if (method == "sweep") {
            sol = solve_sweep(entry.problem, mesh, k, n_q, r);
        } else {
            sol = solve_global(assemble_global(entry.problem, mesh, k, n_q, r));
            if (method == "both")
                discrepancy =
                    max_dof_discrepancy(sol, solve_sweep(entry.problem, mesh, k, n_q, r));
        }

        LevelResult res;
        res.n_elements = n;
        res.h = mesh.h();
        res.err = errors(sol, entry.exact, n_q);
        res.method_discrepancy = discrepancy;
        if (lev == 0) {
            res.rate_h1 = res.rate_l2 = res.rate_nodal = kNaN;
        } else {
            const ErrorTriple& prev = rep.levels.back().err;
            res.rate_h1 = rate_or_floor(prev.h1_broken, res.err.h1_broken);
            res.rate_l2 = rate_or_floor(prev.l2, res.err.l2);
            res.rate_nodal = rate_or_floor(prev.nodal_max, res.err.nodal_max);
        }
        rep.levels.push_back(res);
    }
    return rep;
}

namespace {

std::string fmt_sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.5e", v);
    return buf;
}

std::string fmt_rate(double v, const char* undefined) {
    if (std::isnan(v)) return undefined;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

}  // namespace

std::string to_csv(const ConvergenceReport& report) {
    std::ostringstream os;
    os << "h,e_H1,rate,e_L2,rate,e_node,rate\n";
    for (const LevelResult& l : report.levels) {
        os << fmt_sci(l.h) << ',' << fmt_sci(l.err.h1_broken) << ',' << fmt_rate(l.rate_h1, "")
           << ',' << fmt_sci(l.err.l2) << ',' << fmt_rate(l.rate_l2, "") << ','
           << fmt_sci(l.err.nodal_max) << ',' << fmt_rate(l.rate_nodal, "") << '\n';
    }
    return os.str();
}

std::string to_markdown(const ConvergenceReport& report) {
    const char* headers[7] = {"h", "e_H1", "rate", "e_L2", "rate", "e_node", "rate"};
    std::vector<std::vector<std::string>> rows;
    bool first = true;
    for (const LevelResult& l : report.levels) {
        // No coarser level on the first row; later undefined rates mean the
        // fine error sits at the roundoff floor and get the saturation mark.
        const char* undefined = first ? "-" : "—";
        std::vector<std::string> row(7);
        row[0] = "1/" + std::to_string(l.n_elements);
        row[1] = fmt_sci(l.err.h1_broken);
        row[2] = fmt_rate(l.rate_h1, undefined);
        row[3] = fmt_sci(l.err.l2);
        row[4] = fmt_rate(l.rate_l2, undefined);
        row[5] = fmt_sci(l.err.nodal_max);
        row[6] = fmt_rate(l.rate_nodal, undefined);
        rows.push_back(std::move(row));
        first = false;
    }
    // Column widths in display columns, not bytes: the saturation mark is a
    // three-byte sequence occupying one column.
    auto disp = [](const std::string& s) {
        size_t n = s.size();
        for (size_t p = s.find("—"); p != std::string::npos; p = s.find("—", p + 3))
            n -= 2;
        return n;
    };
    size_t width[7];
    for (int c = 0; c < 7; ++c) {
        width[c] = std::string(headers[c]).size();
        for (const auto& row : rows) width[c] = std::max(width[c], disp(row[c]));
    }
    auto pad = [&](const std::string& s, size_t w) { return s + std::string(w - disp(s), ' '); };
    std::ostringstream os;
    os << '|';
    for (int c = 0; c < 7; ++c) os << ' ' << pad(headers[c], width[c]) << " |";
    os << "\n|";
    for (int c = 0; c < 7; ++c) os << std::string(width[c] + 2, '-') << '|';
    os << '\n';
    for (const auto& row : rows) {
        os << '|';
        for (int c = 0; c < 7; ++c) os << ' ' << pad(row[c], width[c]) << " |";
        os << '\n';
    }
    return os.str();
}

std::string to_json_string(const ConvergenceReport& report) {
    nlohmann::json j;
    j["problem"] = report.problem_key;
    j["k"] = report.k;
    j["r"] = report.r;
    j["n_q"] = report.n_q;
    j["method"] = report.method;
    j["levels"] = nlohmann::json::array();
    for (const LevelResult& l : report.levels) {
        nlohmann::json row;
        row["n_elements"] = l.n_elements;
        row["h"] = l.h;
        row["e_H1"] = l.err.h1_broken;
        row["rate_H1"] = l.rate_h1;
        row["e_L2"] = l.err.l2;
        row["rate_L2"] = l.rate_l2;
        row["e_node"] = l.err.nodal_max;
        row["rate_node"] = l.rate_nodal;
        row["method_discrepancy"] = l.method_discrepancy;
        j["levels"].push_back(row);
    }
    return j.dump(2) + "\n";
}

}  // namespace wfem
