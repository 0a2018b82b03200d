#ifndef RICEFIELD_QUADRATURE_HPP
#define RICEFIELD_QUADRATURE_HPP

#include <functional>
#include <stdexcept>
#include <vector>

namespace ricefield {

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Adaptive integral over [a, b]. Throws QuadratureError if the error
/// estimate does not reach abs_tol.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-12);

/// Integral over [0, inf) for integrands decaying at least polynomially.
double integrate_semi_infinite(const std::function<double(double)>& f,
                               double abs_tol = 1e-12);

struct QuadNode {
    double x, w;
};

/// Gauss-Legendre nodes and weights on [a, b].
std::vector<QuadNode> gauss_legendre(int n, double a = -1.0, double b = 1.0);

} // namespace ricefield

#endif
