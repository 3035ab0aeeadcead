#pragma once
// Boundary value problems, manufactured solutions, and the reduction of the
// convection form to self-adjoint form via the integrating factor
// rho(x) = exp(-int_a^x a1/a2).

#include <functional>
#include <string>
#include <vector>

namespace wfem {

using ScalarFn = std::function<double(double)>;

// -(a2 u')' + a0 u = f on (a, b), u(a) = 0, u'(b) = 0,
// with a2 >= a_min > 0 and a0 >= 0.
struct Problem {
    double a = 0, b = 1;
    ScalarFn a2, a2_prime, a0, f;
    double a_min = 0;  // certified lower bound of a2, supplied not estimated
};

struct ManufacturedSolution {
    ScalarFn u, u_prime, u_double_prime;
};

// -(a2 u')' + a1 u' + a0 u = f.
struct GeneralProblem {
    double a = 0, b = 1;
    ScalarFn a2, a2_prime, a1, a0, f;
    double a_min = 0;
};

// f = -(a2' u' + a2 u'') + a0 u for a chosen exact solution.
ScalarFn manufactured_source(const ScalarFn& a2, const ScalarFn& a2_prime,
                             const ScalarFn& a0, const ManufacturedSolution& m);

// Multiply through by rho: coefficients become rho*a2, rho*a0, source rho*f;
// the solution and boundary conditions are unchanged. a_min is rescaled by
// min rho. rho is evaluated from cumulative composite Gauss quadrature on a
// fixed cache grid with a partial-panel continuation to the query point.
Problem to_self_adjoint(const GeneralProblem& g, int n_q);

struct RegistryEntry {
    std::string key;
    Problem problem;
    ManufacturedSolution exact;
};

// Built-in verification problems; throws std::invalid_argument for unknown keys.
const RegistryEntry& registry(const std::string& key);
std::vector<std::string> registry_keys();

}  // namespace wfem
