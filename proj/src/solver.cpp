#include "wfem/solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "wfem/quadrature.hpp"

namespace wfem {

int default_quad_order(int k) { return k + 4; }

namespace {

// Values of the orthonormal basis functions 0..n at x.
void basis_all(const ElementBasis& eb, int n, double x, std::vector<double>& out) {
    out.resize(n + 1);
    legendre_all(n, eb.ref(x), out.data());
    for (int m = 0; m <= n; ++m) out[m] *= eb.scale(m);
}

// Element matrices in the layout (c_0..c_k, v^L, v^R):
//   D maps local dofs to weak-derivative coefficients,
//   K = D^T W D + a0 mass on the interior block,
//   F holds the source moments (interior slots only).
struct LocalSystem {
    ElementBasis trial;  // degree k
    ElementBasis deriv;  // degree r
    DenseMatrix D;       // (r+1) x (k+3)
    DenseMatrix K;       // (k+3) x (k+3), symmetric
    std::vector<xreal> F;
};

LocalSystem build_local(const Problem& p, double xl, double xr, int k, int r, int n_q) {
    LocalSystem ls;
    ls.trial = ElementBasis{k, xl, xr};
    ls.deriv = ElementBasis{r, xl, xr};

    WeakDerivativeMatrices wd = weak_derivative_matrices(xl, xr, k, r, BasisKind::orthonormal);
    ls.D = DenseMatrix(r + 1, k + 3);
    for (int m = 0; m <= r; ++m) {
        for (int j = 0; j <= k; ++j) ls.D(m, j) = wd.A[m][j];
        ls.D(m, k + 1) = wd.B[m][0];
        ls.D(m, k + 2) = wd.B[m][1];
    }

    const QuadRule& q = gauss_rule(n_q);
    const double mid = 0.5 * (xl + xr), half = 0.5 * (xr - xl);

    DenseMatrix W(r + 1, r + 1);
    std::vector<double> pm;
    for (int iq = 0; iq < n_q; ++iq) {
        double x = mid + half * q.points[iq];
        double w = half * q.weights[iq];
        double wa2 = w * p.a2(x);
        basis_all(ls.deriv, r, x, pm);
        for (int mrow = 0; mrow <= r; ++mrow)
            for (int n = mrow; n <= r; ++n)
                W(mrow, n) += static_cast<xreal>(wa2) * pm[mrow] * pm[n];
    }
    for (int mrow = 0; mrow <= r; ++mrow)
        for (int n = 0; n < mrow; ++n) W(mrow, n) = W(n, mrow);

    // K = D^T W D via T = W D, upper triangle then mirrored so the assembled
    // band sees an exactly symmetric element matrix.
    DenseMatrix T(r + 1, k + 3);
    for (int m = 0; m <= r; ++m)
        for (int t = 0; t < k + 3; ++t) {
            xreal acc = 0;
            for (int n = 0; n <= r; ++n) acc += W(m, n) * ls.D(n, t);
            T(m, t) = acc;
        }
    ls.K = DenseMatrix(k + 3, k + 3);
    for (int s = 0; s < k + 3; ++s)
        for (int t = s; t < k + 3; ++t) {
            xreal acc = 0;
            for (int m = 0; m <= r; ++m) acc += ls.D(m, s) * T(m, t);
            ls.K(s, t) = acc;
        }

    ls.F.assign(k + 3, 0);
    std::vector<double> pj;
    for (int iq = 0; iq < n_q; ++iq) {
        double x = mid + half * q.points[iq];
        double w = half * q.weights[iq];
        double wa0 = w * p.a0(x);
        double wf = w * p.f(x);
        basis_all(ls.trial, k, x, pj);
        for (int j = 0; j <= k; ++j) {
            for (int j2 = j; j2 <= k; ++j2)
                ls.K(j, j2) += static_cast<xreal>(wa0) * pj[j] * pj[j2];
            ls.F[j] += static_cast<xreal>(wf) * pj[j];
        }
    }
    for (int s = 0; s < k + 3; ++s)
        for (int t = 0; t < s; ++t) ls.K(s, t) = ls.K(t, s);
    return ls;
}

void validate_orders(int k, int r, int n_q) {
    if (k < 0) throw std::invalid_argument("solver: interior degree k must be >= 0");
    if (r <= k)
        throw std::invalid_argument("solver: weak-derivative degree r must be at least k+1");
    if (n_q < 1) throw std::invalid_argument("solver: quadrature order must be positive");
}

xreal row_dot(const DenseMatrix& K, int row, const std::vector<xreal>& d) {
    xreal acc = 0;
    for (int t = 0; t < K.cols; ++t) acc += K(row, t) * d[t];
    return acc;
}

// Left side of the integrated closure relation for one element configuration:
//   u(b) - u(xl) + int_xl^b (1/a2) utilde,  utilde(x) = int_x^b a0 u0.
double closure_value(const Problem& p, const LocalWeakFunction& v, int n_q) {
    double xl = v.interior.basis.xl;
    const QuadRule& q = gauss_rule(n_q);
    const double mid = 0.5 * (xl + p.b), half = 0.5 * (p.b - xl);
    xreal acc = 0;
    for (int iq = 0; iq < n_q; ++iq) {
        double x = mid + half * q.points[iq];
        double inner = integrate([&](double s) { return p.a0(s) * v.interior.eval(s); },
                                 x, p.b, n_q);
        acc += static_cast<xreal>(half * q.weights[iq]) * inner / p.a2(x);
    }
    return v.right_value - v.left_value + static_cast<double>(acc);
}

}  // namespace

AssembledSystem assemble_global(const Problem& p, const Mesh1D& mesh, int k, int n_q, int r) {
    if (r < 0) r = k + 1;
    validate_orders(k, r, n_q);
    const int nel = mesh.n_elements();
    DofMap dof{k, r, nel};

    AssembledSystem sys;
    sys.dof_map = dof;
    sys.mesh = mesh;
    sys.bandwidth = k + 2;
    sys.matrix = BandMatrix(dof.dim(), sys.bandwidth);
    sys.rhs.assign(dof.dim(), 0);

    std::vector<int> loc(k + 3);
    for (int i = 0; i < nel; ++i) {
        LocalSystem ls = build_local(p, mesh.xl(i), mesh.xr(i), k, r, n_q);
        for (int j = 0; j <= k; ++j) loc[j] = dof.interior_index(i, j);
        loc[k + 1] = (i == 0) ? -1 : dof.node_index(i);  // left boundary value is fixed
        loc[k + 2] = dof.node_index(i + 1);
        for (int s = 0; s < k + 3; ++s) {
            if (loc[s] < 0) continue;
            for (int t = 0; t < k + 3; ++t)
                if (loc[t] >= 0 && loc[s] >= loc[t]) sys.matrix.at(loc[s], loc[t]) += ls.K(s, t);
            sys.rhs[loc[s]] += ls.F[s];
        }
    }
    return sys;
}

namespace {

GlobalWeakFunction unpack(const Mesh1D& mesh, const DofMap& dof, const std::vector<xreal>& x) {
    GlobalWeakFunction u;
    u.mesh = mesh;
    u.k = dof.k;
    u.r = dof.r;
    u.interior_coeffs.assign(dof.n_elements, std::vector<double>(dof.k + 1, 0.0));
    for (int i = 0; i < dof.n_elements; ++i)
        for (int j = 0; j <= dof.k; ++j)
            u.interior_coeffs[i][j] = static_cast<double>(x[dof.interior_index(i, j)]);
    u.node_values.assign(dof.n_elements + 1, 0.0);
    for (int node = 1; node <= dof.n_elements; ++node)
        u.node_values[node] = static_cast<double>(x[dof.node_index(node)]);
    return u;
}

double relative_residual(const AssembledSystem& sys, const std::vector<xreal>& x) {
    std::vector<xreal> ax = band_matvec(sys.matrix, x);
    xreal rn = 0, bn = 0;
    for (size_t i = 0; i < ax.size(); ++i) {
        xreal d = ax[i] - sys.rhs[i];
        rn += d * d;
        bn += sys.rhs[i] * sys.rhs[i];
    }
    xreal denom = std::max<xreal>(1e-300L, sqrtl(bn));
    return static_cast<double>(sqrtl(rn) / denom);
}

}  // namespace

Solution solve_global(const AssembledSystem& sys) {
    BandMatrix fac = sys.matrix;
    cholesky_band(fac);
    std::vector<xreal> x = solve_cholesky(fac, sys.rhs);

    Solution sol;
    sol.u_h = unpack(sys.mesh, sys.dof_map, x);
    sol.method = "global";
    sol.residual_norm = relative_residual(sys, x);
    return sol;
}

Solution solve_sweep(const Problem& p, const Mesh1D& mesh, int k, int n_q, int r) {
    if (r < 0) r = k + 1;
    validate_orders(k, r, n_q);
    const int nel = mesh.n_elements();
    const int m = k + 2;  // marching unknowns per element: interiors plus v^L

    std::vector<LocalSystem> loc;
    loc.reserve(nel);
    for (int i = 0; i < nel; ++i)
        loc.push_back(build_local(p, mesh.xl(i), mesh.xr(i), k, r, n_q));

    // Local step matrix: interior test rows and the right-node test row
    // against the interior coefficients and the left value.
    auto step_matrix = [&](const LocalSystem& ls) {
        DenseMatrix S(m, m);
        for (int s = 0; s < m; ++s) {
            int row = (s <= k) ? s : k + 2;
            for (int t = 0; t < m; ++t) {
                int col = (t <= k) ? t : k + 1;
                S(s, t) = ls.K(row, col);
            }
        }
        return S;
    };

    // Backward march: with the last element's right value prescribed, each
    // local solve determines the element's interior and left value; the node
    // test at the shared node then hands a flux transfer to the neighbor.
    auto march = [&](bool with_source, xreal v_last) {
        std::vector<std::vector<xreal>> dofs(nel);
        xreal v_right = v_last;
        xreal g = 0;  // right-node test transfer; zero at the free end
        for (int i = nel - 1; i >= 0; --i) {
            const LocalSystem& ls = loc[i];
            std::vector<xreal> b(m, 0);
            for (int s = 0; s <= k; ++s)
                b[s] = (with_source ? ls.F[s] : 0) - ls.K(s, k + 2) * v_right;
            b[k + 1] = g - ls.K(k + 2, k + 2) * v_right;
            std::vector<xreal> y = dense_solve(step_matrix(ls), b);

            std::vector<xreal>& d = dofs[i];
            d.assign(k + 3, 0);
            for (int j = 0; j <= k; ++j) d[j] = y[j];
            d[k + 1] = y[k + 1];
            d[k + 2] = v_right;

            g = -row_dot(ls.K, k + 1, d);
            v_right = y[k + 1];
        }
        return dofs;
    };

    std::vector<std::vector<xreal>> dp = march(true, 0);   // particular, u(b)-node 0
    std::vector<std::vector<xreal>> dz = march(false, 1);  // source-free mode, u(b)-node 1

    xreal z_scale = 0;
    for (const auto& d : dz)
        for (xreal v : d) z_scale = std::max(z_scale, fabsl(v));
    xreal p_left = dp[0][k + 1], z_left = dz[0][k + 1];
    if (!(fabsl(z_left) > 1e-14L * z_scale))
        throw std::runtime_error("solve_sweep: source-free mode vanishes at the left boundary");
    xreal shoot = -p_left / z_left;

    std::vector<xreal> x(static_cast<size_t>(DofMap{k, r, nel}.dim()), 0);
    DofMap dof{k, r, nel};
    for (int i = 0; i < nel; ++i) {
        for (int j = 0; j <= k; ++j)
            x[dof.interior_index(i, j)] = dp[i][j] + shoot * dz[i][j];
        x[dof.node_index(i + 1)] = dp[i][k + 2] + shoot * dz[i][k + 2];
    }

    Solution sol;
    sol.u_h = unpack(mesh, dof, x);
    sol.method = "sweep";

    SweepDiagnostics diag;
    diag.shoot_coeff = static_cast<double>(shoot);
    diag.left_boundary_residual = static_cast<double>(p_left + shoot * z_left);

    // Closure relation on the last element, evaluated for both marched
    // configurations; affine in the superposition coefficient.
    auto local_of = [&](const std::vector<xreal>& d, int i) {
        LocalWeakFunction v;
        v.interior.basis = loc[i].trial;
        v.interior.coeffs.resize(k + 1);
        for (int j = 0; j <= k; ++j) v.interior.coeffs[j] = static_cast<double>(d[j]);
        v.left_value = static_cast<double>(d[k + 1]);
        v.right_value = static_cast<double>(d[k + 2]);
        return v;
    };
    double crhs = closure_rhs(p, mesh.xl(nel - 1), n_q);
    double clo_p = closure_value(p, local_of(dp[nel - 1], nel - 1), n_q);
    double clo_z = closure_value(p, local_of(dz[nel - 1], nel - 1), n_q);
    double clo_scale = std::max({1.0, std::fabs(clo_p), std::fabs(crhs)});
    if (std::fabs(clo_z) <= 1e-12 * clo_scale) {
        diag.closure_degenerate = true;
        diag.closure_coeff = std::numeric_limits<double>::quiet_NaN();
    } else {
        diag.closure_coeff = (crhs - clo_p) / clo_z;
    }
    diag.closure_residual =
        clo_p + static_cast<double>(shoot) * clo_z - crhs;
    sol.sweep = diag;

    // The marched solution must satisfy the assembled equations verbatim.
    AssembledSystem sys = assemble_global(p, mesh, k, n_q, r);
    sol.residual_norm = relative_residual(sys, x);
    return sol;
}

StabilityReport stability_check(const Solution& sol, const Problem& p, int n_q) {
    const GlobalWeakFunction& u = sol.u_h;
    const int nel = u.mesh.n_elements();
    std::vector<ElementPolynomial> interiors, derivs;
    interiors.reserve(nel);
    derivs.reserve(nel);
    for (int i = 0; i < nel; ++i) {
        LocalWeakFunction v = u.local(i);
        derivs.push_back(weak_derivative(v, u.r));
        interiors.push_back(std::move(v.interior));
    }

    StabilityReport rep;
    rep.lhs = broken_norm(interiors) + broken_norm(derivs);
    xreal fsq = 0;
    const QuadRule& q = gauss_rule(n_q);
    for (int i = 0; i < nel; ++i) {
        double mid = 0.5 * (u.mesh.xl(i) + u.mesh.xr(i)), half = 0.5 * u.mesh.h_of(i);
        for (int iq = 0; iq < n_q; ++iq) {
            double fx = p.f(mid + half * q.points[iq]);
            fsq += static_cast<xreal>(half * q.weights[iq]) * fx * fx;
        }
    }
    rep.f_norm = static_cast<double>(sqrtl(fsq));
    double len = p.b - p.a;
    rep.bound_factor = 2.0 * (len + 1.0) * (len + 1.0) / p.a_min;
    rep.rhs = rep.bound_factor * rep.f_norm;
    rep.holds = rep.lhs <= rep.rhs * (1.0 + 1e-12);
    return rep;
}

double closure_rhs(const Problem& p, double xl, int n_q) {
    const QuadRule& q = gauss_rule(n_q);
    const double mid = 0.5 * (xl + p.b), half = 0.5 * (p.b - xl);
    xreal acc = 0;
    for (int iq = 0; iq < n_q; ++iq) {
        double x = mid + half * q.points[iq];
        double inner = integrate(p.f, x, p.b, n_q);
        acc += static_cast<xreal>(half * q.weights[iq]) * inner / p.a2(x);
    }
    return static_cast<double>(acc);
}

double closure_residual_of(const Problem& p, const Solution& sol, int n_q) {
    const int nel = sol.u_h.mesh.n_elements();
    LocalWeakFunction last = sol.u_h.local(nel - 1);
    return closure_value(p, last, n_q) - closure_rhs(p, sol.u_h.mesh.xl(nel - 1), n_q);
}

}  // namespace wfem
