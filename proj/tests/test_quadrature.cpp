#include "ricefield/quadrature.hpp"

#include "doctest.h"

#include <cmath>

using namespace ricefield;

TEST_CASE("finite-interval integration") {
    double v = integrate([](double x) { return x * x; }, 0.0, 1.0);
    CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    v = integrate([](double x) { return std::sin(x); }, 0.0, M_PI);
    CHECK(v == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("semi-infinite integration") {
    CHECK(integrate_semi_infinite([](double x) { return std::exp(-x); }) ==
          doctest::Approx(1.0).epsilon(1e-10));
    // Gaussian half-mass
    CHECK(integrate_semi_infinite([](double x) {
              return std::exp(-0.5 * x * x);
          }) == doctest::Approx(std::sqrt(M_PI / 2.0)).epsilon(1e-10));
}

TEST_CASE("Gauss-Legendre rule integrates polynomials exactly") {
    // n points are exact through degree 2n-1
    auto nodes = gauss_legendre(5, 0.0, 1.0);
    double acc = 0.0;
    for (const auto& nd : nodes) acc += nd.w * std::pow(nd.x, 9);
    CHECK(acc == doctest::Approx(0.1).epsilon(1e-13));

    double wsum = 0.0;
    for (const auto& nd : nodes) wsum += nd.w;
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));

    // shifted interval
    nodes = gauss_legendre(8, -2.0, 3.0);
    acc = 0.0;
    for (const auto& nd : nodes) acc += nd.w * nd.x * nd.x;
    CHECK(acc == doctest::Approx((27.0 + 8.0) / 3.0).epsilon(1e-13));
}

TEST_CASE("Gauss-Legendre nodes stay inside the interval and increase") {
    auto nodes = gauss_legendre(64, 0.0, 10.0);
    REQUIRE(nodes.size() == 64);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        CHECK(nodes[i].x > 0.0);
        CHECK(nodes[i].x < 10.0);
        CHECK(nodes[i].w > 0.0);
        if (i) CHECK(nodes[i].x > nodes[i - 1].x);
    }
}
