#include "ricefield/spectral.hpp"

#include "ricefield/gauss.hpp"
#include "ricefield/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace ricefield {

namespace {

constexpr double pi = std::numbers::pi;

double checked_density(const SpectralModel& m, double rho) {
    double f = m.radial_density(rho);
    if (f < 0.0)
        throw SpectralError("negative spectral density at rho=" + std::to_string(rho));
    return f;
}

// rho^k f(rho), evaluating f first: exp_sinh probes abscissae where
// rho^k overflows while f underflows, and inf * 0 would poison the sum.
double weighted_density(const SpectralModel& m, double rho, int k) {
    double f = checked_density(m, rho);
    if (f == 0.0) return 0.0;
    return std::pow(rho, k) * f;
}

} // namespace

double SpectralMoments::lambda_min_eigenvalue() const {
    if (dim == 1) return lambda_mat[0][0];
    double a = lambda_mat[0][0], b = lambda_mat[0][1], d = lambda_mat[1][1];
    double tr = a + d, disc = std::sqrt((a - d) * (a - d) + 4 * b * b);
    return 0.5 * (tr - disc);
}

double SpectralMoments::lambda_det() const {
    if (dim == 1) return lambda_mat[0][0];
    return lambda_mat[0][0] * lambda_mat[1][1] - lambda_mat[0][1] * lambda_mat[1][0];
}

bool ValidationReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const ValidationCheck& c) { return c.pass; });
}

SpectralModel gaussian_model_2d() {
    SpectralModel m;
    m.dim = 2;
    m.radial_density = [](double rho) { return std::exp(-0.5 * rho * rho) / (2 * pi); };
    m.decay_exponent_hint = 1e9; // super-polynomial
    m.name = "gaussian2d";
    return m;
}

SpectralModel gaussian_model_1d() {
    SpectralModel m;
    m.dim = 1;
    m.radial_density = [](double w) { return normal_pdf(w); };
    m.decay_exponent_hint = 1e9;
    m.name = "gaussian1d";
    return m;
}

SpectralModel model_by_name(const std::string& name) {
    if (name == "gaussian2d") return gaussian_model_2d();
    if (name == "gaussian1d") return gaussian_model_1d();
    throw SpectralError("unknown model: " + name);
}

SpectralModel model_from_table(const std::string& csv_path, int dim,
                               const std::string& name) {
    std::ifstream in(csv_path);
    if (!in) throw SpectralError("cannot open density table " + csv_path);
    std::vector<double> rho, logf;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double r, f;
        if (!(row >> r >> f)) continue;
        if (f <= 0.0) throw SpectralError("tabulated density must be positive");
        if (!rho.empty() && r <= rho.back())
            throw SpectralError("table rho values must be strictly increasing");
        rho.push_back(r);
        logf.push_back(std::log(f));
    }
    if (rho.size() < 2) throw SpectralError("density table needs at least 2 rows");

    SpectralModel m;
    m.dim = dim;
    m.name = name;
    // continue the last log-slope beyond the table so tails stay integrable
    double tail_slope = (logf[rho.size() - 1] - logf[rho.size() - 2]) /
                        (rho[rho.size() - 1] - rho[rho.size() - 2]);
    if (tail_slope >= 0.0)
        throw SpectralError("tabulated density must decay at the right edge");
    m.decay_exponent_hint = -tail_slope * rho.back(); // crude local exponent
    m.radial_density = [rho, logf, tail_slope](double r) {
        if (r <= rho.front()) return std::exp(logf.front());
        if (r >= rho.back())
            return std::exp(logf.back() + tail_slope * (r - rho.back()));
        auto it = std::upper_bound(rho.begin(), rho.end(), r);
        std::size_t i = static_cast<std::size_t>(it - rho.begin());
        double w = (r - rho[i - 1]) / (rho[i] - rho[i - 1]);
        return std::exp((1 - w) * logf[i - 1] + w * logf[i]);
    };
    return m;
}

SpectralMoments compute_spectral_moments(const SpectralModel& model, int k_max) {
    if (k_max > 5) throw SpectralError("k_max must be <= 5");
    SpectralMoments sm;
    sm.dim = model.dim;
    if (model.dim == 2) {
        for (int k = 1; k <= k_max; ++k) {
            sm.J[static_cast<std::size_t>(k)] = integrate_semi_infinite(
                [&](double r) { return weighted_density(model, r, k); });
        }
        double lam = pi * sm.J[3];
        sm.lambda_mat = {{{lam, 0.0}, {0.0, lam}}};
    } else {
        sm.lambda0 = 2 * integrate_semi_infinite(
            [&](double w) { return checked_density(model, w); });
        sm.lambda2 = 2 * integrate_semi_infinite(
            [&](double w) { return weighted_density(model, w, 2); });
        sm.lambda4 = 2 * integrate_semi_infinite(
            [&](double w) { return weighted_density(model, w, 4); });
        sm.lambda_mat[0][0] = sm.lambda2;
    }
    return sm;
}

ValidationReport validate_model(const SpectralModel& model) {
    ValidationReport rep;

    // positivity on a log-spaced grid; exact zeros are tolerated in the
    // far tail (r > 5) where fast-decaying densities underflow
    {
        bool ok = true;
        std::string where;
        for (int i = 0; i <= 200; ++i) {
            double r = std::pow(10.0, -3.0 + 5.0 * i / 200.0); // 1e-3 .. 1e2
            double f = model.radial_density(r);
            if (f < 0.0 || (f == 0.0 && r <= 5.0)) {
                ok = false;
                where = "f(" + std::to_string(r) + ") <= 0";
                break;
            }
        }
        rep.checks.push_back({"positivity", ok, where});
    }

    // empirical polynomial decay f <= C_alpha rho^-alpha, alpha up to 8:
    // rho^alpha f(rho) must not grow across the tail grid
    {
        bool ok = true;
        std::string detail;
        for (int alpha = 1; alpha <= 8 && ok; ++alpha) {
            double first = 0.0, running_max = 0.0;
            for (int i = 0; i <= 60; ++i) {
                double r = 5.0 * std::pow(20.0, i / 60.0); // 5 .. 100
                double v = std::pow(r, alpha) * model.radial_density(r);
                if (i == 0) first = v;
                running_max = std::max(running_max, v);
            }
            if (running_max > 10.0 * std::max(first, 1e-300)) {
                ok = false;
                detail = "rho^" + std::to_string(alpha) + " f(rho) grows on the tail";
            }
        }
        rep.checks.push_back({"polynomial_decay", ok, detail});
    }

    // normalization Gamma(0) = 1
    {
        bool ok = false;
        std::string detail;
        try {
            double mass = model.dim == 2
                ? integrate_semi_infinite([&](double r) {
                      return 2 * pi * r * model.radial_density(r); })
                : 2 * integrate_semi_infinite([&](double w) {
                      return model.radial_density(w); });
            ok = std::abs(mass - 1.0) < 1e-6;
            if (!ok) detail = "total spectral mass " + std::to_string(mass);
        } catch (const QuadratureError& e) {
            detail = e.what();
        }
        rep.checks.push_back({"normalization", ok, detail});
    }

    return rep;
}

double covariance_from_spectrum(const SpectralModel& model, double tau) {
    double r = std::abs(tau);
    if (model.dim == 2) {
        // Hankel inversion of the isotropic spectral density
        return integrate_semi_infinite([&](double rho) {
            double f = model.radial_density(rho);
            if (f == 0.0) return 0.0;
            return 2 * pi * rho * std::cyl_bessel_j(0, rho * r) * f;
        }, 1e-10);
    }
    return 2 * integrate_semi_infinite([&](double w) {
        double f = model.radial_density(w);
        if (f == 0.0) return 0.0;
        return std::cos(w * r) * f;
    }, 1e-10);
}

double covariance_deriv1(const SpectralModel& model, double tau) {
    if (model.dim != 1) throw SpectralError("covariance_deriv1 is dim-1 only");
    return -2 * integrate_semi_infinite([&](double w) {
        double f = model.radial_density(w);
        if (f == 0.0) return 0.0;
        return w * std::sin(w * tau) * f;
    }, 1e-10);
}

double covariance_deriv2(const SpectralModel& model, double tau) {
    if (model.dim != 1) throw SpectralError("covariance_deriv2 is dim-1 only");
    return -2 * integrate_semi_infinite([&](double w) {
        double f = model.radial_density(w);
        if (f == 0.0) return 0.0;
        return w * w * std::cos(w * tau) * f;
    }, 1e-10);
}

} // namespace ricefield
