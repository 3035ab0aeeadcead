#include "wfem/problem.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>

#include "wfem/quadrature.hpp"

namespace wfem {

ScalarFn manufactured_source(const ScalarFn& a2, const ScalarFn& a2_prime,
                             const ScalarFn& a0, const ManufacturedSolution& m) {
    return [=](double x) {
        return -(a2_prime(x) * m.u_prime(x) + a2(x) * m.u_double_prime(x)) +
               a0(x) * m.u(x);
    };
}

namespace {

// Prefix integrals of a1/a2 over a fixed panel grid, plus a partial-panel
// Gauss continuation to the query point.
struct RhoTable {
    double a = 0, b = 1;
    int n_q = 4;
    ScalarFn ratio;                     // a1/a2
    std::vector<long double> prefix;    // integral from a to each panel start
    double panel = 0;

    double log_integral(double x) const {
        if (x <= a) return 0.0;
        int j = static_cast<int>((x - a) / panel);
        int last = static_cast<int>(prefix.size()) - 1;
        if (j > last) j = last;
        double xj = a + j * panel;
        long double s = prefix[j];
        if (x > xj) s += integrate(ratio, xj, std::min(x, b), n_q);
        return static_cast<double>(s);
    }
    double rho(double x) const { return std::exp(-log_integral(x)); }
};

std::shared_ptr<RhoTable> build_rho(const GeneralProblem& g, int n_q) {
    auto table = std::make_shared<RhoTable>();
    table->a = g.a;
    table->b = g.b;
    table->n_q = n_q;
    const ScalarFn a1 = g.a1, a2 = g.a2;
    table->ratio = [a1, a2](double x) { return a1(x) / a2(x); };
    const int panels = 2048;
    table->panel = (g.b - g.a) / panels;
    table->prefix.assign(panels + 1, 0.0L);
    for (int j = 0; j < panels; ++j) {
        double xl = g.a + j * table->panel;
        double xr = g.a + (j + 1) * table->panel;
        table->prefix[j + 1] = table->prefix[j] + integrate(table->ratio, xl, xr, n_q);
    }
    return table;
}

}  // namespace

Problem to_self_adjoint(const GeneralProblem& g, int n_q) {
    auto rho = build_rho(g, n_q);
    double min_rho = rho->rho(g.a);
    for (size_t j = 0; j < rho->prefix.size(); ++j) {
        double x = g.a + static_cast<double>(j) * rho->panel;
        min_rho = std::min(min_rho, rho->rho(std::min(x, g.b)));
    }
    if (!(min_rho > 0)) throw std::runtime_error("to_self_adjoint: integrating factor collapsed");
    Problem p;
    p.a = g.a;
    p.b = g.b;
    p.a_min = g.a_min * min_rho;
    const ScalarFn a2 = g.a2, a2p = g.a2_prime, a0 = g.a0, f = g.f, ratio = rho->ratio;
    p.a2 = [rho, a2](double x) { return rho->rho(x) * a2(x); };
    // (rho a2)' = rho' a2 + rho a2' = rho (a2' - a1).
    p.a2_prime = [rho, a2p, ratio, a2](double x) {
        return rho->rho(x) * (a2p(x) - ratio(x) * a2(x));
    };
    p.a0 = [rho, a0](double x) { return rho->rho(x) * a0(x); };
    p.f = [rho, f](double x) { return rho->rho(x) * f(x); };
    return p;
}

namespace {

std::map<std::string, RegistryEntry> build_registry() {
    std::map<std::string, RegistryEntry> reg;

    // Variable-coefficient sine problem on (0,1): u = 2(1-x) sin(pi x),
    // a2 = 1+x^2, a0 = sin(pi x).
    {
        ManufacturedSolution m;
        m.u = [](double x) { return 2.0 * (1.0 - x) * std::sin(M_PI * x); };
        m.u_prime = [](double x) {
            return -2.0 * std::sin(M_PI * x) + 2.0 * M_PI * (1.0 - x) * std::cos(M_PI * x);
        };
        m.u_double_prime = [](double x) {
            return -4.0 * M_PI * std::cos(M_PI * x) -
                   2.0 * M_PI * M_PI * (1.0 - x) * std::sin(M_PI * x);
        };
        Problem p;
        p.a = 0.0;
        p.b = 1.0;
        p.a2 = [](double x) { return 1.0 + x * x; };
        p.a2_prime = [](double x) { return 2.0 * x; };
        p.a0 = [](double x) { return std::sin(M_PI * x); };
        p.a_min = 1.0;
        p.f = manufactured_source(p.a2, p.a2_prime, p.a0, m);
        reg.emplace("paper-5.6", RegistryEntry{"paper-5.6", p, m});

        Problem p0 = p;
        p0.a0 = [](double) { return 0.0; };
        p0.f = manufactured_source(p0.a2, p0.a2_prime, p0.a0, m);
        reg.emplace("paper-5.6-a0zero", RegistryEntry{"paper-5.6-a0zero", p0, m});
    }

    // Quadratic Poisson problem: u = 2x - x^2, -u'' = 2.
    {
        ManufacturedSolution m;
        m.u = [](double x) { return 2.0 * x - x * x; };
        m.u_prime = [](double x) { return 2.0 - 2.0 * x; };
        m.u_double_prime = [](double) { return -2.0; };
        Problem p;
        p.a = 0.0;
        p.b = 1.0;
        p.a2 = [](double) { return 1.0; };
        p.a2_prime = [](double) { return 0.0; };
        p.a0 = [](double) { return 0.0; };
        p.f = [](double) { return 2.0; };
        p.a_min = 1.0;
        reg.emplace("poisson-quadratic", RegistryEntry{"poisson-quadratic", p, m});
    }

    // Registration sanity: homogeneous boundary data must hold exactly.
    for (const auto& [key, entry] : reg) {
        if (std::fabs(entry.exact.u(entry.problem.a)) > 1e-12 ||
            std::fabs(entry.exact.u_prime(entry.problem.b)) > 1e-12)
            throw std::logic_error("registry: boundary data violated for " + key);
    }
    return reg;
}

}  // namespace

const RegistryEntry& registry(const std::string& key) {
    static const std::map<std::string, RegistryEntry> reg = build_registry();
    auto it = reg.find(key);
    if (it == reg.end()) throw std::invalid_argument("registry: unknown problem key '" + key + "'");
    return it->second;
}

std::vector<std::string> registry_keys() {
    static const std::vector<std::string> keys = {"paper-5.6", "paper-5.6-a0zero",
                                                  "poisson-quadratic"};
    return keys;
}

}  // namespace wfem
