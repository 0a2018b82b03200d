#include "ricefield/field.hpp"

#include "ricefield/spectral.hpp"
#include "ricefield/stats.hpp"

#include "doctest.h"

#include <cmath>
#include <random>

using namespace ricefield;

namespace {

// hand-built single-mode sample: X(t) = a cos<w,t> + b sin<w,t>
FieldSample one_mode(Vec2 w, double a, double b, int dim = 2) {
    FieldSample s;
    s.dim = dim;
    s.freq = {w};
    s.amp_cos = {a};
    s.amp_sin = {b};
    return s;
}

} // namespace

TEST_CASE("single mode evaluates to the closed form") {
    FieldSample s = one_mode({1.0, 0.0}, 1.0, 0.0);
    FieldValue v = s.evaluate(0.0, 0.0);
    CHECK(v.value == doctest::Approx(1.0));
    CHECK(v.grad.x == doctest::Approx(0.0));
    CHECK(v.grad.y == doctest::Approx(0.0));
    CHECK(v.hess.xx == doctest::Approx(-1.0));
    CHECK(v.hess.xy == doctest::Approx(0.0));
    CHECK(v.hess.yy == doctest::Approx(0.0));

    FieldValue w = s.evaluate(1.3, -0.4);
    CHECK(w.value == doctest::Approx(std::cos(1.3)));
    CHECK(w.grad.x == doctest::Approx(-std::sin(1.3)));
}

TEST_CASE("sampling is deterministic in the seed") {
    auto model = gaussian_model_2d();
    FieldSample a = sample_field(model, 64, 2024);
    FieldSample b = sample_field(model, 64, 2024);
    FieldSample c = sample_field(model, 64, 2025);
    REQUIRE(a.freq.size() == b.freq.size());
    for (std::size_t i = 0; i < a.freq.size(); ++i) {
        CHECK(a.freq[i].x == b.freq[i].x);
        CHECK(a.freq[i].y == b.freq[i].y);
        CHECK(a.amp_cos[i] == b.amp_cos[i]);
        CHECK(a.amp_sin[i] == b.amp_sin[i]);
    }
    CHECK(a.value_at(0.3, 0.7) != c.value_at(0.3, 0.7));
    CHECK_THROWS(sample_field(model, 32, 1)); // too few modes
}

TEST_CASE("derivatives agree with central differences") {
    auto model = gaussian_model_2d();
    FieldSample s = sample_field(model, 128, 7);
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> pos(-1.0, 1.0);
    const double h = 1e-5;
    for (int i = 0; i < 50; ++i) {
        double x = pos(rng), y = pos(rng);
        FieldValue v = s.evaluate(x, y);
        double gx = (s.value_at(x + h, y) - s.value_at(x - h, y)) / (2 * h);
        double gy = (s.value_at(x, y + h) - s.value_at(x, y - h)) / (2 * h);
        CHECK(std::abs(gx - v.grad.x) < 1e-5);
        CHECK(std::abs(gy - v.grad.y) < 1e-5);
        double hxx = (s.value_at(x + h, y) - 2 * v.value + s.value_at(x - h, y)) / (h * h);
        double hxy = (s.value_at(x + h, y + h) - s.value_at(x + h, y - h) -
                      s.value_at(x - h, y + h) + s.value_at(x - h, y - h)) /
                     (4 * h * h);
        CHECK(std::abs(hxx - v.hess.xx) < 1e-4);
        CHECK(std::abs(hxy - v.hess.xy) < 1e-4);
    }
}

TEST_CASE("pointwise variance is the covariance at zero") {
    auto model = gaussian_model_2d();
    RunningStat val, d1;
    for (int i = 0; i < 3000; ++i) {
        FieldSample s = sample_field(model, 64, 5000 + static_cast<std::uint64_t>(i));
        FieldValue v = s.evaluate(0.4, -0.2);
        val.add(v.value * v.value);
        d1.add(v.grad.x * v.grad.x);
    }
    // Var X = Gamma(0) = 1, Var dX/dt1 = pi J3 = 1 for this model
    CHECK(std::abs(val.mean() - 1.0) < 3.0 * val.std_error());
    CHECK(std::abs(d1.mean() - 1.0) < 3.0 * d1.std_error());
}

TEST_CASE("empirical covariance tracks the spectral inversion") {
    auto model = gaussian_model_1d();
    std::vector<double> lags;
    for (int k = 1; k <= 10; ++k) lags.push_back(0.35 * k);
    std::vector<RunningStat> acc(lags.size());
    for (int i = 0; i < 4000; ++i) {
        FieldSample s = sample_field(model, 64, 81000 + static_cast<std::uint64_t>(i));
        double x0 = s.value_at(0.0);
        for (std::size_t k = 0; k < lags.size(); ++k)
            acc[k].add(x0 * s.value_at(lags[k]));
    }
    for (std::size_t k = 0; k < lags.size(); ++k) {
        double gamma = covariance_from_spectrum(model, lags[k]);
        CHECK(std::abs(acc[k].mean() - gamma) < 3.0 * acc[k].std_error());
    }
}

TEST_CASE("grid evaluation matches pointwise evaluation") {
    auto model = gaussian_model_1d();
    FieldSample s = sample_field(model, 64, 31);
    auto vals = values_on_grid_1d(s, 0.0, 0.01, 500);
    for (int i : {0, 17, 250, 499})
        CHECK(vals[static_cast<std::size_t>(i)] ==
              doctest::Approx(s.value_at(0.01 * i)).epsilon(1e-9));

    auto model2 = gaussian_model_2d();
    FieldSample s2 = sample_field(model2, 64, 32);
    GridEval2 g = grid_eval_2d(s2, -1.0, -1.0, 0.05, 41, 41);
    for (int j : {0, 13, 40})
        for (int i : {0, 25, 40}) {
            FieldValue v = s2.evaluate(-1.0 + 0.05 * i, -1.0 + 0.05 * j);
            CHECK(g.value[g.idx(i, j)] == doctest::Approx(v.value).epsilon(1e-9));
            CHECK(g.gx[g.idx(i, j)] == doctest::Approx(v.grad.x).epsilon(1e-8));
            CHECK(g.gy[g.idx(i, j)] == doctest::Approx(v.grad.y).epsilon(1e-8));
        }
}

TEST_CASE("supremum of a single cosine is found exactly") {
    // X(t) = 0.8 cos t + 0.6 sin t on [0, 2pi]: max = 1 at t = atan2(.6,.8)
    FieldSample s = one_mode({1.0, 0.0}, 0.8, 0.6, 1);
    double m = sup_on_domain(s, Domain::interval(2 * M_PI), 0.1, true);
    CHECK(m == doctest::Approx(1.0).epsilon(1e-8));

    // polishing can only help, refinement can only help
    double coarse = sup_on_domain(s, Domain::interval(2 * M_PI), 0.1, false);
    CHECK(m >= coarse);
    double fine = sup_on_domain(s, Domain::interval(2 * M_PI), 0.05, false);
    CHECK(fine >= coarse - 1e-12);

    FieldSample s2 = one_mode({1.3, 0.7}, 1.0, 0.0);
    // <w,t> = 0 at the origin, an interior point of the disc
    CHECK(sup_on_domain(s2, Domain::unit_disc(), 0.05, true) ==
          doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("boundary restriction and its derivatives") {
    auto model = gaussian_model_2d();
    FieldSample s = sample_field(model, 64, 77);
    BoundaryProcess b = restrict_to_boundary(s, Domain::unit_disc());

    double L = b.perimeter();
    CHECK(b.at(0.0).value == doctest::Approx(b.at(L).value).epsilon(1e-12));

    const double h = 1e-5;
    for (double t : {0.3, 1.9, 4.4}) {
        auto v = b.at(t);
        double d1 = (b.at(t + h).value - b.at(t - h).value) / (2 * h);
        double d2 = (b.at(t + h).value - 2 * v.value + b.at(t - h).value) / (h * h);
        CHECK(std::abs(d1 - v.d1) < 1e-5);
        CHECK(std::abs(d2 - v.d2) < 1e-4);
    }
}
