#include "ricefield/max_density.hpp"

#include "ricefield/gauss.hpp"
#include "ricefield/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace ricefield {

namespace {
constexpr double pi = std::numbers::pi;
}

DiscBoundConstants::DiscBoundConstants(double J3_, double J5_) : J3(J3_), J5(J5_) {
    if (J3 <= 0 || J5 <= 0) throw std::domain_error("J3, J5 must be positive");
    double pj3 = pi * J3;
    var_diag = 0.75 * pi * J5 - pj3 * pj3;
    double alpha2 = 2 * pi * J5 - 4 * pj3 * pj3;
    if (var_diag <= 0 || alpha2 <= 0)
        throw std::domain_error("model violates the disc-bound nondegeneracy conditions");
    b = pj3 / std::sqrt(var_diag);
    c = std::sqrt(0.25 * pi * J5);
    alpha = std::sqrt(alpha2);
}

DiscBoundConstants DiscBoundConstants::from_model(const SpectralModel& model) {
    SpectralMoments m = compute_spectral_moments(model);
    return DiscBoundConstants(m.J[3], m.J[5]);
}

double DiscBoundConstants::a(double u) const { return 2 * pi * J3 * u; }

double disc_I2(const DiscBoundConstants& k, double u) {
    double pj3 = pi * k.J3;
    double s = std::sqrt(k.var_diag);
    return std::sqrt(2.0 / k.J3) * normal_pdf(u) *
           (s * normal_pdf(k.b * u) + pj3 * u * normal_cdf(k.b * u));
}

double disc_I1(const DiscBoundConstants& k, double u, int n_quad) {
    if (n_quad < 64) throw std::invalid_argument("n_quad must be >= 64");
    double a = k.a(u), c = k.c, al = k.alpha;
    // integrand decays like x phi(x); beyond x = 10 it is below 1e-16 of peak
    auto nodes = gauss_legendre(n_quad, 0.0, 10.0);
    double acc = 0.0;
    for (const auto& nd : nodes) {
        double x = nd.x;
        double arg = (a - 2 * c * x) / al;
        double g = (al * al + a * a - 4 * c * c * x * x) * normal_cdf(arg) +
                   (2 * a * al - al * (a - 2 * c * x)) * normal_pdf(arg);
        acc += nd.w * g * x * normal_pdf(x);
    }
    return sqrt_2pi / (8 * pi * k.J3) * normal_pdf(u) * acc;
}

RiceEstimate disc_I1_mc(const DiscBoundConstants& k, double u, long n_mc,
                        std::uint64_t seed) {
    double a = k.a(u), al = k.alpha;
    double c2x4 = 4 * k.c * k.c; // = pi J5
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    double sum = 0.0, sum2 = 0.0;
    for (long i = 0; i < n_mc; ++i) {
        double e1 = normal(rng), e2 = normal(rng), e3 = normal(rng);
        double s = al * e1 - a;
        double q = s * s - c2x4 * (e2 * e2 + e3 * e3);
        double v = (s < 0 && q > 0) ? q : 0.0;
        sum += v;
        sum2 += v * v;
    }
    double pref = normal_pdf(u) / (8 * pi * k.J3);
    RiceEstimate est;
    est.n_inner_mc = n_mc;
    est.value = pref * sum / static_cast<double>(n_mc);
    double var = (sum2 - sum * sum / static_cast<double>(n_mc)) /
                 (static_cast<double>(n_mc) - 1.0);
    est.std_error = pref * std::sqrt(std::max(var, 0.0) / static_cast<double>(n_mc));
    return est;
}

double density_bound_disc(const DiscBoundConstants& k, double u) {
    return disc_I1(k, u) + disc_I2(k, u);
}

double ylvisaker_bound(double u) { return normal_hazard(u); }

double tail_asymptotic(const SpectralMoments& m, const Domain& domain, double u) {
    int d = domain.dim();
    if (m.dim != d)
        throw std::invalid_argument("model dimension does not match domain");
    double det_lambda = m.lambda_det();
    return std::pow(u, d) / std::pow(2 * pi, 0.5 * (d + 1)) *
           std::exp(-0.5 * u * u) * domain.measure() * std::sqrt(det_lambda);
}

double tail_asymptotic(const SpectralModel& model, const Domain& domain, double u) {
    return tail_asymptotic(compute_spectral_moments(model), domain, u);
}

} // namespace ricefield
