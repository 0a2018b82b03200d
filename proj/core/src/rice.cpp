#include "ricefield/rice.hpp"

#include "ricefield/gauss.hpp"
#include "ricefield/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace ricefield {

namespace {
constexpr double pi = std::numbers::pi;
}

double rice_d1_closed_form(double lambda0, double lambda2, double u, double T) {
    if (lambda0 <= 0 || lambda2 <= 0)
        throw std::domain_error("spectral moments must be positive");
    if (T <= 0) throw std::domain_error("T must be positive");
    return (T / pi) * std::sqrt(lambda2 / lambda0) *
           std::exp(-u * u / (2 * lambda0));
}

ConditionalGaussian build_conditional_law(const SpectralMoments& m, double u) {
    if (m.dim != 2)
        throw std::invalid_argument("conditional Hessian law is for 2-d isotropic models");
    double pj3 = pi * m.J[3];
    double var_diag = 0.75 * pi * m.J[5] - pj3 * pj3;
    double cov_diag = 0.25 * pi * m.J[5] - pj3 * pj3;
    double var_off = 0.25 * pi * m.J[5];
    if (var_diag <= 0)
        throw SpectralError("degenerate conditional Hessian law: 3pi/4 J5 <= (pi J3)^2");

    ConditionalGaussian c;
    c.mean_matrix = {-pj3 * u, 0.0, -pj3 * u};
    c.cov_operator = {{{var_diag, cov_diag, 0.0},
                       {cov_diag, var_diag, 0.0},
                       {0.0, 0.0, var_off}}};
    // X and X' independent: p_{X,X'}(u,0) = phi(u) (2pi)^{-1} det(Lambda)^{-1/2}
    c.conditioning_density = normal_pdf(u) / (2 * pi * pj3);
    return c;
}

ConditionalGaussian build_conditional_law(const SpectralModel& model, double u) {
    return build_conditional_law(compute_spectral_moments(model), u);
}

RiceEstimate conditional_det_moment(const ConditionalGaussian& cond, DetKind kind,
                                    long n_mc, std::uint64_t seed) {
    if (n_mc < 1000) throw std::invalid_argument("n_mc must be >= 1000");
    Eigen::Matrix3d cov;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            cov(i, j) = cond.cov_operator[static_cast<std::size_t>(i)]
                                         [static_cast<std::size_t>(j)];
    Eigen::LLT<Eigen::Matrix3d> llt(cov + 1e-14 * Eigen::Matrix3d::Identity());
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("conditional covariance operator is not PSD");
    Eigen::Matrix3d L = llt.matrixL();

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    long pairs = n_mc / 2;
    double sum = 0.0, sum2 = 0.0;
    for (long p = 0; p < pairs; ++p) {
        Eigen::Vector3d z(normal(rng), normal(rng), normal(rng));
        double pair_val = 0.0;
        for (int sgn : {+1, -1}) {
            Eigen::Vector3d d = L * (sgn * z);
            Sym2 M{cond.mean_matrix.xx + d(0), cond.mean_matrix.xy + d(2),
                   cond.mean_matrix.yy + d(1)};
            double det = M.det();
            double v = kind == DetKind::delta2
                           ? std::abs(det)
                           : (M.max_eigenvalue() < 0 ? std::abs(det) : 0.0);
            pair_val += 0.5 * v;
        }
        sum += pair_val;
        sum2 += pair_val * pair_val;
    }
    RiceEstimate est;
    est.n_inner_mc = 2 * pairs;
    est.value = sum / static_cast<double>(pairs);
    double var = (sum2 - sum * sum / static_cast<double>(pairs)) /
                 (static_cast<double>(pairs) - 1.0);
    est.std_error = std::sqrt(std::max(var, 0.0) / static_cast<double>(pairs));
    return est;
}

RiceEstimate expected_critical(const SpectralModel& model, const Domain& domain,
                               double u, DetKind kind, long n_mc,
                               std::uint64_t seed) {
    SpectralMoments moments = compute_spectral_moments(model);
    // x = u + s^2 puts Gauss-Legendre nodes where phi(x) still matters
    auto nodes = gauss_legendre(40, 0.0, 6.0);
    double value = 0.0, var = 0.0;
    RiceEstimate est;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        double s = nodes[i].x, x = u + s * s;
        ConditionalGaussian law = build_conditional_law(moments, x);
        RiceEstimate inner =
            conditional_det_moment(law, kind, n_mc, seed + 7919 * i);
        double coef = domain.measure() * nodes[i].w * 2 * s * law.conditioning_density;
        value += coef * inner.value;
        var += coef * coef * inner.std_error * inner.std_error;
        est.n_inner_mc += inner.n_inner_mc;
    }
    est.value = value;
    est.std_error = std::sqrt(var);
    return est;
}

RiceEstimate factorial_moment_2_d1(const SpectralModel& model, double T, double u,
                                   int n_quad, long n_mc, std::uint64_t seed) {
    if (model.dim != 1) throw std::invalid_argument("factorial_moment_2_d1 is dim-1 only");
    if (n_quad < 32) throw std::invalid_argument("n_quad must be >= 32");
    SpectralMoments m = compute_spectral_moments(model);
    double lambda0 = m.lambda0, lambda2 = m.lambda2;
    const double eps_diag = 1e-3 * T;

    auto nodes = gauss_legendre(n_quad, 0.0, T);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;

    RiceEstimate est;
    double value = 0.0, var = 0.0;
    // symmetric integrand: integrate over t1 < t2 and double
    for (int i = 0; i < n_quad; ++i) {
        for (int j = i + 1; j < n_quad; ++j) {
            std::size_t si = static_cast<std::size_t>(i), sj = static_cast<std::size_t>(j);
            double tau = std::abs(nodes[sj].x - nodes[si].x);
            if (tau < eps_diag) {
                ++est.skipped_nodes;
                continue;
            }
            double r = covariance_from_spectrum(model, tau);
            double det_xx = lambda0 * lambda0 - r * r;
            if (det_xx < 1e-12 * lambda0 * lambda0) {
                ++est.skipped_nodes; // joint law numerically degenerate
                continue;
            }
            double r1 = covariance_deriv1(model, tau);
            double r2 = covariance_deriv2(model, tau);

            // regression of (X'(t1), X'(t2)) on (X(t1), X(t2)) = (u, u)
            Eigen::Matrix2d Sxx, Sdd, Sdx;
            Sxx << lambda0, r, r, lambda0;
            Sdd << lambda2, -r2, -r2, lambda2;
            Sdx << 0.0, -r1, r1, 0.0;
            Eigen::Matrix2d SxxInv = Sxx.inverse();
            Eigen::Vector2d mean = Sdx * SxxInv * Eigen::Vector2d(u, u);
            Eigen::Matrix2d C = Sdd - Sdx * SxxInv * Sdx.transpose();
            Eigen::LLT<Eigen::Matrix2d> llt(C + 1e-14 * Eigen::Matrix2d::Identity());
            if (llt.info() != Eigen::Success) {
                ++est.skipped_nodes;
                continue;
            }
            Eigen::Matrix2d L = llt.matrixL();

            long pairs = std::max<long>(n_mc / 2, 1);
            double sum = 0.0, sum2 = 0.0;
            for (long p = 0; p < pairs; ++p) {
                Eigen::Vector2d z(normal(rng), normal(rng));
                double pv = 0.0;
                for (int sgn : {+1, -1}) {
                    Eigen::Vector2d y = mean + L * (sgn * z);
                    pv += 0.5 * std::abs(y(0) * y(1));
                }
                sum += pv;
                sum2 += pv * pv;
            }
            double inner = sum / static_cast<double>(pairs);
            double inner_var = (sum2 - sum * sum / static_cast<double>(pairs)) /
                               (static_cast<double>(pairs) - 1.0) /
                               static_cast<double>(pairs);
            double dens = std::exp(-u * u / (lambda0 + r)) /
                          (2 * pi * std::sqrt(det_xx));
            double coef = 2.0 * nodes[si].w * nodes[sj].w * dens;
            value += coef * inner;
            var += coef * coef * std::max(inner_var, 0.0);
            est.n_inner_mc += 2 * pairs;
        }
    }
    est.value = value;
    est.std_error = std::sqrt(var);
    return est;
}

} // namespace ricefield
