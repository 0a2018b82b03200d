#include "ricefield/spectral.hpp"

#include "ricefield/gauss.hpp"
#include "ricefield/quadrature.hpp"

#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

using namespace ricefield;
namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("radial moments of the gaussian spectrum") {
    // f(rho) = (2pi)^-1 exp(-rho^2/2): int rho^3 e^{-rho^2/2} = 2,
    // int rho^5 e^{-rho^2/2} = 8, hence J3 = 1/pi, J5 = 4/pi.
    SpectralMoments m = compute_spectral_moments(gaussian_model_2d());
    CHECK(m.J[3] == doctest::Approx(1.0 / pi).epsilon(1e-9));
    CHECK(m.J[5] == doctest::Approx(4.0 / pi).epsilon(1e-9));
    CHECK(m.lambda_mat[0][0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(m.lambda_mat[0][1] == 0.0);
    CHECK(m.lambda_det() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(m.lambda_min_eigenvalue() > lambda_eigen_floor);
}

TEST_CASE("one-dimensional spectral moments") {
    SpectralMoments m = compute_spectral_moments(gaussian_model_1d());
    CHECK(m.lambda0 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(m.lambda2 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(m.lambda4 == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("model validation") {
    CHECK(validate_model(gaussian_model_2d()).all_pass());
    CHECK(validate_model(gaussian_model_1d()).all_pass());

    SUBCASE("interior zero fails positivity") {
        SpectralModel bad = gaussian_model_2d();
        auto f = bad.radial_density;
        bad.radial_density = [f](double r) {
            return std::abs(r - 1.0) < 0.01 ? 0.0 : f(r);
        };
        ValidationReport rep = validate_model(bad);
        CHECK_FALSE(rep.all_pass());
        bool positivity_failed = false;
        for (const auto& c : rep.checks)
            if (c.name == "positivity" && !c.pass) positivity_failed = true;
        CHECK(positivity_failed);
    }

    SUBCASE("doubled density fails normalization") {
        SpectralModel bad = gaussian_model_2d();
        auto f = bad.radial_density;
        bad.radial_density = [f](double r) { return 2.0 * f(r); };
        ValidationReport rep = validate_model(bad);
        bool norm_failed = false;
        for (const auto& c : rep.checks)
            if (c.name == "normalization" && !c.pass) norm_failed = true;
        CHECK(norm_failed);
    }
}

TEST_CASE("covariance recovery from the spectrum") {
    SpectralModel m2 = gaussian_model_2d();
    SpectralModel m1 = gaussian_model_1d();

    CHECK(covariance_from_spectrum(m2, 0.0) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(covariance_from_spectrum(m1, 0.0) == doctest::Approx(1.0).epsilon(1e-8));
    // Gamma(tau) = exp(-tau^2/2) for both shipped models
    CHECK(covariance_from_spectrum(m1, 1.0) ==
          doctest::Approx(std::exp(-0.5)).epsilon(1e-7));
    CHECK(covariance_from_spectrum(m2, 1.0) ==
          doctest::Approx(std::exp(-0.5)).epsilon(1e-6));

    for (double tau = 0.0; tau <= 5.0; tau += 0.5)
        CHECK(std::abs(covariance_from_spectrum(m2, tau)) <= 1.0 + 1e-9);
}

TEST_CASE("covariance derivatives match the closed form") {
    SpectralModel m1 = gaussian_model_1d();
    for (double tau : {0.3, 1.0, 2.2}) {
        double g = std::exp(-0.5 * tau * tau);
        CHECK(covariance_deriv1(m1, tau) == doctest::Approx(-tau * g).epsilon(1e-6));
        CHECK(covariance_deriv2(m1, tau) ==
              doctest::Approx((tau * tau - 1.0) * g).epsilon(1e-6));
    }
    CHECK_THROWS_AS(covariance_deriv1(gaussian_model_2d(), 1.0), SpectralError);
}

TEST_CASE("catalog lookup") {
    CHECK(model_by_name("gaussian2d").dim == 2);
    CHECK(model_by_name("gaussian1d").dim == 1);
    CHECK_THROWS_AS(model_by_name("nope"), SpectralError);
}

TEST_CASE("tabulated density round-trips the gaussian moments") {
    std::string path = "spectral_table_test.csv";
    {
        std::ofstream out(path);
        for (double r = 0.05; r <= 12.0; r += 0.05)
            out << r << ',' << std::exp(-0.5 * r * r) / (2 * pi) << '\n';
    }
    SpectralModel m = model_from_table(path, 2, "tab");
    SpectralMoments sm = compute_spectral_moments(m);
    // interpolation + tail continuation: a few digits is what we ask of it
    CHECK(sm.J[3] == doctest::Approx(1.0 / pi).epsilon(1e-3));
    CHECK(sm.J[5] == doctest::Approx(4.0 / pi).epsilon(1e-3));
    std::remove(path.c_str());

    CHECK_THROWS_AS(model_from_table("does_not_exist.csv", 2, "x"), SpectralError);
}

TEST_CASE("quadrature refinement stability of the moments") {
    // recompute with a tighter tolerance path by integrating the moments
    // directly; the adaptive results must agree to much better than 1e-8
    SpectralMoments a = compute_spectral_moments(gaussian_model_2d());
    double j3 = integrate([](double r) {
        return r * r * r * std::exp(-0.5 * r * r) / (2 * pi);
    }, 0.0, 40.0);
    CHECK(a.J[3] == doctest::Approx(j3).epsilon(1e-10));
}
