#include "wfem/quadrature.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace wfem {

namespace {

constexpr int kMaxOrder = 64;

// P_n(t) and P_n'(t) by the three-term recurrence, extended precision.
void legendre_pair(int n, long double t, long double& p, long double& dp) {
    long double p0 = 1.0L, p1 = t;
    if (n == 0) { p = p0; dp = 0.0L; return; }
    for (int m = 1; m < n; ++m) {
        long double p2 = ((2 * m + 1) * t * p1 - m * p0) / (m + 1);
        p0 = p1;
        p1 = p2;
    }
    p = p1;
    dp = n * (t * p1 - p0) / (t * t - 1.0L);
}

QuadRule compute_rule(int n) {
    QuadRule rule;
    rule.order = n;
    rule.points.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev-type initial guess for the i-th root in decreasing order.
        long double t = std::cos(M_PI * (i + 0.75L) / (n + 0.5L));
        long double p, dp;
        for (int it = 0; it < 100; ++it) {
            legendre_pair(n, t, p, dp);
            long double dt = p / dp;
            t -= dt;
            if (std::fabs(dt) < 1e-19L) break;
        }
        legendre_pair(n, t, p, dp);
        long double w = 2.0L / ((1.0L - t * t) * dp * dp);
        rule.points[n - 1 - i] = static_cast<double>(t);
        rule.points[i] = static_cast<double>(-t);
        rule.weights[n - 1 - i] = static_cast<double>(w);
        rule.weights[i] = static_cast<double>(w);
    }
    if (n % 2 == 1) {
        rule.points[n / 2] = 0.0;
        long double p, dp;
        legendre_pair(n, 0.0L, p, dp);
        rule.weights[n / 2] = static_cast<double>(2.0L / (dp * dp));
    }
    return rule;
}

}  // namespace

const QuadRule& gauss_rule(int n) {
    if (n < 1 || n > kMaxOrder)
        throw std::invalid_argument("gauss_rule: order must be in [1, 64]");
    static QuadRule cache[kMaxOrder + 1];
    static std::once_flag flags[kMaxOrder + 1];
    std::call_once(flags[n], [n] { cache[n] = compute_rule(n); });
    return cache[n];
}

double integrate(const std::function<double(double)>& f, double xl, double xr, int n) {
    const QuadRule& rule = gauss_rule(n);
    const long double mid = 0.5L * (static_cast<long double>(xl) + xr);
    const long double half = 0.5L * (static_cast<long double>(xr) - xl);
    long double sum = 0.0L;
    for (int q = 0; q < rule.order; ++q) {
        double x = static_cast<double>(mid + half * rule.points[q]);
        double v = f(x);
        if (!std::isfinite(v))
            throw std::runtime_error("integrate: integrand returned a non-finite value");
        sum += rule.weights[q] * static_cast<long double>(v);
    }
    return static_cast<double>(sum * half);
}

}  // namespace wfem
