#pragma once
// Gauss-Legendre quadrature on [-1,1] and affine-mapped element integrals.

#include <functional>
#include <vector>

namespace wfem {

// Rule on the reference interval [-1,1]: n points integrate polynomials of
// degree <= 2n-1 exactly; weights are positive and sum to 2.
struct QuadRule {
    int order = 0;
    std::vector<double> points;   // strictly increasing
    std::vector<double> weights;
};

// Cached Gauss-Legendre rule with n points, 1 <= n <= 64.
const QuadRule& gauss_rule(int n);

// \int_{xl}^{xr} f(x) dx with the n-point rule mapped by
// x = xl + (xr-xl)(t+1)/2. Throws if f returns a non-finite value.
double integrate(const std::function<double(double)>& f, double xl, double xr, int n);

}  // namespace wfem
