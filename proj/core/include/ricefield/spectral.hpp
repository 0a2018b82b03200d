#ifndef RICEFIELD_SPECTRAL_HPP
#define RICEFIELD_SPECTRAL_HPP

#include <array>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ricefield {

struct SpectralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Stationary field model given through its spectral density.
///
/// For dim == 2 the field is isotropic and radial_density is f(rho),
/// rho = |omega|, with spectral measure f(|omega|) d omega.  For dim == 1
/// radial_density is the symmetric density on the half line (evaluated at
/// |omega|), total mass 2 * int_0^inf f = 1.
struct SpectralModel {
    int dim = 2;
    std::function<double(double)> radial_density;
    double decay_exponent_hint = 0.0; // documented tail decay, f ~ rho^-hint
    std::string name;
};

/// Spectral moments and the gradient covariance Lambda = Var(X'(t)).
struct SpectralMoments {
    int dim = 2;
    std::array<double, 6> J{}; // J[k] = int_0^inf rho^k f(rho) d rho, k=1..5
    double lambda0 = 0.0, lambda2 = 0.0, lambda4 = 0.0; // dim==1 moments
    // Lambda, row major; for dim==1 only [0][0] is meaningful.
    std::array<std::array<double, 2>, 2> lambda_mat{};

    double lambda_min_eigenvalue() const;
    double lambda_det() const;
};

struct ValidationCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool all_pass() const;
};

// Shipped catalog.  "gaussian2d": f(rho) = (2pi)^-1 exp(-rho^2/2), giving
// Gamma(tau) = exp(-|tau|^2/2), J3 = 1/pi, J5 = 4/pi.  "gaussian1d":
// f(omega) = phi(omega), giving Gamma(tau) = exp(-tau^2/2), lambda2 = 1.
SpectralModel gaussian_model_2d();
SpectralModel gaussian_model_1d();

/// Look a model up by catalog name; throws SpectralError for unknown names.
SpectralModel model_by_name(const std::string& name);

/// Custom radial density from CSV rows "rho,f"; linear interpolation in
/// log f, log-slope continuation beyond the last point.
SpectralModel model_from_table(const std::string& csv_path, int dim,
                               const std::string& name);

SpectralMoments compute_spectral_moments(const SpectralModel& model, int k_max = 5);

ValidationReport validate_model(const SpectralModel& model);

/// Gamma(tau) via Hankel (dim 2) or cosine (dim 1) inversion; Gamma(0) = 1.
double covariance_from_spectrum(const SpectralModel& model, double tau);

// First and second lag derivatives of Gamma, dim 1 only.
double covariance_deriv1(const SpectralModel& model, double tau);
double covariance_deriv2(const SpectralModel& model, double tau);

/// Smallest admissible eigenvalue of Lambda before downstream regressions
/// are refused.
inline constexpr double lambda_eigen_floor = 1e-8;

} // namespace ricefield

#endif
