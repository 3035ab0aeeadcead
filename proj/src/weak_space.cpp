#include "wfem/weak_space.hpp"

#include <cmath>
#include <stdexcept>

#include "wfem/quadrature.hpp"

namespace wfem {

LocalWeakFunction GlobalWeakFunction::local(int element) const {
    ElementBasis basis{k, mesh.xl(element), mesh.xr(element)};
    return LocalWeakFunction{ElementPolynomial{basis, interior_coeffs[element]},
                             node_values[element], node_values[element + 1]};
}

ElementPolynomial weak_derivative(const LocalWeakFunction& v, int r) {
    const ElementBasis& vb = v.interior.basis;
    const int k = vb.degree;
    if (r < k + 1) throw std::invalid_argument("weak_derivative: requires r >= k+1");
    if (!(vb.xr > vb.xl)) throw std::invalid_argument("weak_derivative: degenerate element");
    ElementBasis db{r, vb.xl, vb.xr};
    ElementPolynomial d = zero_poly(db);
    const double h = vb.h();
    for (int m = 0; m <= r; ++m) {
        // In the orthonormal basis the mass matrix is the identity, so the
        // m-th coefficient is the defining functional applied to phi_m:
        //   d_m = -(v0, phi_m') + v^R phi_m(xr) - v^L phi_m(xl),
        // and (phi_j, phi_m') = (2/h) sqrt((2j+1)(2m+1)) for j < m, j+m odd.
        double s = 0.0;
        for (int j = (m % 2 == 0 ? 1 : 0); j < m && j <= k; j += 2)
            s -= v.interior.coeffs[j] * (2.0 / h) *
                 std::sqrt(static_cast<double>((2 * j + 1) * (2 * m + 1)));
        s += v.right_value * db.end_right(m) - v.left_value * db.end_left(m);
        d.coeffs[m] = s;
    }
    return d;
}

WeakDerivativeMatrices weak_derivative_matrices(double xl, double xr, int k, int r,
                                                BasisKind kind) {
    if (r < k + 1)
        throw std::invalid_argument("weak_derivative_matrices: requires r >= k+1");
    if (!(xr > xl))
        throw std::invalid_argument("weak_derivative_matrices: degenerate element");
    WeakDerivativeMatrices out;
    out.M = mass_matrix(r, xl, xr, kind);
    out.A.assign(r + 1, std::vector<double>(k + 1, 0.0));
    out.B.assign(r + 1, std::vector<double>(2, 0.0));
    if (kind == BasisKind::monomial) {
        // a_{st} = -((x^s)', x^t) = -s (xr^{s+t} - xl^{s+t})/(s+t), rows s = 0..r.
        for (int s = 1; s <= r; ++s)
            for (int t = 0; t <= k; ++t)
                out.A[s][t] = -s * (std::pow(xr, s + t) - std::pow(xl, s + t)) / (s + t);
        for (int s = 0; s <= r; ++s) {
            out.B[s][0] = -std::pow(xl, s);
            out.B[s][1] = std::pow(xr, s);
        }
        return out;
    }
    ElementBasis basis{r, xl, xr};
    const double h = xr - xl;
    for (int m = 0; m <= r; ++m) {
        for (int j = (m % 2 == 0 ? 1 : 0); j < m && j <= k; j += 2)
            out.A[m][j] = -(2.0 / h) * std::sqrt(static_cast<double>((2 * j + 1) * (2 * m + 1)));
        out.B[m][0] = -basis.end_left(m);
        out.B[m][1] = basis.end_right(m);
    }
    return out;
}

double jump(const LocalWeakFunction& v_left, const LocalWeakFunction& v_right) {
    const double xs = v_left.interior.basis.xr;
    const double tol = 1e-12 * (1.0 + std::fabs(xs));
    if (std::fabs(v_right.interior.basis.xl - xs) > tol)
        throw std::invalid_argument("jump: elements are not adjacent");
    return v_right.left_value - v_left.right_value;
}

double broken_norm(const std::vector<ElementPolynomial>& pieces) {
    long double s = 0.0L;
    for (const auto& p : pieces)
        for (double c : p.coeffs) s += static_cast<long double>(c) * c;
    return static_cast<double>(std::sqrt(s));
}

double discrete_inner(const std::vector<ElementPolynomial>& u,
                      const std::vector<ElementPolynomial>& v) {
    if (u.size() != v.size())
        throw std::invalid_argument("discrete_inner: mismatched element counts");
    long double s = 0.0L;
    for (size_t i = 0; i < u.size(); ++i) {
        size_t n = std::min(u[i].coeffs.size(), v[i].coeffs.size());
        for (size_t j = 0; j < n; ++j)
            s += static_cast<long double>(u[i].coeffs[j]) * v[i].coeffs[j];
    }
    return static_cast<double>(s);
}

}  // namespace wfem
