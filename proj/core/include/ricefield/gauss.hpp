#ifndef RICEFIELD_GAUSS_HPP
#define RICEFIELD_GAUSS_HPP

#include <cmath>

namespace ricefield {

inline constexpr double sqrt_2pi = 2.5066282746310002;

/// Standard normal density.
inline double normal_pdf(double x) { return std::exp(-0.5 * x * x) / sqrt_2pi; }

/// Standard normal distribution function.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/// Upper tail P(N > x), accurate far into the tail.
inline double normal_sf(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

/// Gaussian hazard ratio phi(u) / (1 - Phi(u)).
/// Stable for |u| up to ~35; beyond that erfc underflows in doubles.
inline double normal_hazard(double u) {
    return normal_pdf(u) / normal_sf(u);
}

} // namespace ricefield

#endif
