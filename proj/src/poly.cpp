#include "wfem/poly.hpp"

#include <cmath>
#include <stdexcept>

#include "wfem/quadrature.hpp"

namespace wfem {

void legendre_all(int n, double t, double* out) {
    out[0] = 1.0;
    if (n == 0) return;
    out[1] = t;
    for (int m = 1; m < n; ++m)
        out[m + 1] = ((2 * m + 1) * t * out[m] - m * out[m - 1]) / (m + 1);
}

double ElementBasis::scale(int n) const { return std::sqrt((2 * n + 1) / h()); }

double ElementBasis::eval(int n, double x) const {
    if (n == 0) return scale(0);
    double t = ref(x);
    double pm1 = 1.0, pm = t;
    for (int m = 1; m < n; ++m) {
        double pnext = ((2 * m + 1) * t * pm - m * pm1) / (m + 1);
        pm1 = pm;
        pm = pnext;
    }
    return scale(n) * pm;
}

double ElementBasis::eval_deriv(int n, double x) const {
    if (n == 0) return 0.0;
    // P_n' from the lower-order values: P_n'(t) = sum over m<n, m+n odd of (2m+1) P_m(t).
    double t = ref(x);
    std::vector<double> p(n);
    legendre_all(n - 1, t, p.data());
    double dp = 0.0;
    for (int m = n - 1; m >= 0; m -= 2) dp += (2 * m + 1) * p[m];
    return scale(n) * dp * 2.0 / h();
}

double ElementBasis::end_left(int n) const { return (n % 2 == 0 ? 1.0 : -1.0) * scale(n); }
double ElementBasis::end_right(int n) const { return scale(n); }

double ElementPolynomial::eval(double x) const {
    const double slack = 1e-12 * basis.h();
    if (x < basis.xl - slack || x > basis.xr + slack)
        throw std::invalid_argument("ElementPolynomial::eval: point outside the element");
    double t = basis.ref(x);
    if (t < -1.0) t = -1.0;
    if (t > 1.0) t = 1.0;
    std::vector<double> p(basis.degree + 1);
    legendre_all(basis.degree, t, p.data());
    double v = 0.0;
    for (int n = 0; n <= basis.degree; ++n) v += coeffs[n] * basis.scale(n) * p[n];
    return v;
}

ElementPolynomial zero_poly(const ElementBasis& basis) {
    return ElementPolynomial{basis, std::vector<double>(basis.degree + 1, 0.0)};
}

ElementPolynomial diff_poly(const ElementPolynomial& p) {
    const int l = p.basis.degree;
    ElementBasis db{l > 0 ? l - 1 : 0, p.basis.xl, p.basis.xr};
    ElementPolynomial d = zero_poly(db);
    if (l == 0) return d;
    // (phi_n)' = (2/h) sqrt((2m+1)(2n+1)) phi_m over m < n with m+n odd.
    for (int m = 0; m < l; ++m) {
        double s = 0.0;
        for (int n = m + 1; n <= l; n += 2)
            s += p.coeffs[n] * std::sqrt(static_cast<double>((2 * m + 1) * (2 * n + 1)));
        d.coeffs[m] = s * 2.0 / p.basis.h();
    }
    return d;
}

ElementPolynomial antiderivative(const ElementPolynomial& p, double value_left) {
    const int l = p.basis.degree;
    ElementBasis ib{l + 1, p.basis.xl, p.basis.xr};
    // int P_n dt = (P_{n+1} - P_{n-1})/(2n+1) for n >= 1, int P_0 dt = P_1.
    std::vector<double> leg(l + 2, 0.0);  // Legendre coefficients of the antiderivative
    const double half = p.basis.h() / 2.0;
    for (int n = 0; n <= l; ++n) {
        double cn = p.coeffs[n] * p.basis.scale(n) * half;
        if (n == 0) {
            leg[1] += cn;
        } else {
            leg[n + 1] += cn / (2 * n + 1);
            leg[n - 1] -= cn / (2 * n + 1);
        }
    }
    ElementPolynomial result = zero_poly(ib);
    for (int n = 0; n <= l + 1; ++n) result.coeffs[n] = leg[n] / ib.scale(n);
    // Shift so the left endpoint value matches.
    double at_left = 0.0;
    for (int n = 0; n <= l + 1; ++n) at_left += result.coeffs[n] * ib.end_left(n);
    result.coeffs[0] += (value_left - at_left) / ib.scale(0);
    return result;
}

ElementPolynomial project_onto_basis(const std::function<double(double)>& f,
                                     const ElementBasis& basis, int n_q) {
    const QuadRule& rule = gauss_rule(n_q);
    ElementPolynomial p = zero_poly(basis);
    const double mid = 0.5 * (basis.xl + basis.xr);
    const double half = 0.5 * basis.h();
    std::vector<long double> acc(basis.degree + 1, 0.0L);
    std::vector<double> leg(basis.degree + 1);
    for (int q = 0; q < rule.order; ++q) {
        double t = rule.points[q];
        double x = mid + half * t;
        double v = f(x);
        legendre_all(basis.degree, t, leg.data());
        for (int n = 0; n <= basis.degree; ++n)
            acc[n] += rule.weights[q] * static_cast<long double>(v) * leg[n];
    }
    for (int n = 0; n <= basis.degree; ++n)
        p.coeffs[n] = static_cast<double>(acc[n] * half) * basis.scale(n);
    return p;
}

std::vector<std::vector<double>> mass_matrix(int l, double xl, double xr, BasisKind kind) {
    if (xr <= xl) throw std::invalid_argument("mass_matrix: degenerate element");
    std::vector<std::vector<double>> m(l + 1, std::vector<double>(l + 1, 0.0));
    if (kind == BasisKind::orthonormal) {
        for (int i = 0; i <= l; ++i) m[i][i] = 1.0;
        return m;
    }
    for (int s = 0; s <= l; ++s)
        for (int t = 0; t <= l; ++t) {
            int p = s + t + 1;
            m[s][t] = (std::pow(xr, p) - std::pow(xl, p)) / p;
        }
    return m;
}

}  // namespace wfem
