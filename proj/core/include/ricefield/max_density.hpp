#ifndef RICEFIELD_MAX_DENSITY_HPP
#define RICEFIELD_MAX_DENSITY_HPP

#include "ricefield/domain.hpp"
#include "ricefield/rice.hpp"
#include "ricefield/spectral.hpp"

#include <cstdint>

namespace ricefield {

/// Constants of the unit-disc density bound for a stationary isotropic
/// 2-d model with radial moments J3, J5:
///   a(u) = 2 pi J3 u,   c = sqrt(pi J5 / 4),
///   b = pi J3 / sqrt(3pi/4 J5 - (pi J3)^2),
///   alpha^2 = 2 pi J5 - 4 pi^2 J3^2.
struct DiscBoundConstants {
    double J3 = 0.0, J5 = 0.0;
    double b = 0.0, c = 0.0, alpha = 0.0;
    double var_diag = 0.0; // 3pi/4 J5 - (pi J3)^2

    DiscBoundConstants(double J3_, double J5_);
    static DiscBoundConstants from_model(const SpectralModel& model);
    double a(double u) const;
};

/// Boundary term of the disc bound (closed form).
double disc_I2(const DiscBoundConstants& consts, double u);

/// Interior term of the disc bound, as the exact one-dimensional
/// reduction of the conditional-Hessian expectation:
///   I1 = sqrt(2 pi)/(8 pi J3) phi(u) int_0^inf
///        [(alpha^2 + a^2 - 4 c^2 x^2) Phi((a - 2 c x)/alpha)
///         + (2 a alpha - alpha (a - 2 c x)) phi((a - 2 c x)/alpha)]
///        x phi(x) dx.
double disc_I1(const DiscBoundConstants& consts, double u, int n_quad = 128);

/// Independent route to I1: Monte Carlo over the three-normal
/// expectation form (the arbiter for the quadrature reduction).
RiceEstimate disc_I1_mc(const DiscBoundConstants& consts, double u, long n_mc,
                        std::uint64_t seed);

/// Upper bound for the density of the disc maximum: I1 + I2.
double density_bound_disc(const DiscBoundConstants& consts, double u);

/// Universal density bound for the maximum of a unit-variance,
/// nonnegative-mean Gaussian process: exp(-u^2/2) / int_u^inf exp(-v^2/2) dv.
double ylvisaker_bound(double u);

/// Large-u equivalent of the density of the maximum:
/// u^d (2pi)^{-(d+1)/2} exp(-u^2/2) measure(I) sqrt(det Lambda).
double tail_asymptotic(const SpectralModel& model, const Domain& domain, double u);
double tail_asymptotic(const SpectralMoments& moments, const Domain& domain, double u);

} // namespace ricefield

#endif
