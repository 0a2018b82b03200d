#include "ricefield/quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

namespace ricefield {

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol) {
    using boost::math::quadrature::gauss_kronrod;
    double err = 0.0;
    double v = gauss_kronrod<double, 15>::integrate(f, a, b, 15, 1e-13, &err);
    if (!std::isfinite(v) || err > abs_tol + 1e-10 * std::abs(v))
        throw QuadratureError("integral on [a,b] did not converge");
    return v;
}

double integrate_semi_infinite(const std::function<double(double)>& f,
                               double abs_tol) {
    // adaptive Gauss-Kronrod over the mapped half line; unlike exp_sinh
    // it copes with merely piecewise-smooth integrands (tabulated
    // densities interpolate with kinks)
    using boost::math::quadrature::gauss_kronrod;
    double err = 0.0;
    double v = gauss_kronrod<double, 31>::integrate(
        f, 0.0, std::numeric_limits<double>::infinity(), 15, abs_tol, &err);
    // abs_tol is the refinement target; the hard failure gate is looser,
    // because piecewise-smooth integrands legitimately stall near 1e-7
    // while divergent ones report O(1) or NaN
    if (!std::isfinite(v) ||
        err > std::max(1e-6 * std::max(1.0, std::abs(v)), abs_tol))
        throw QuadratureError("semi-infinite integral did not converge");
    return v;
}

std::vector<QuadNode> gauss_legendre(int n, double a, double b) {
    std::vector<QuadNode> nodes(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        // Newton on P_n from the Chebyshev initial guess
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // the Chebyshev guesses run from +1 toward -1; store reversed so
        // the returned abscissae increase
        nodes[static_cast<std::size_t>(n - 1 - i)] =
            {0.5 * (b - a) * x + 0.5 * (a + b), 0.5 * (b - a) * w};
    }
    return nodes;
}

} // namespace ricefield
