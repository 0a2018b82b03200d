#include "ricefield/counting.hpp"

#include "ricefield/spectral.hpp"

#include "doctest.h"

#include <cmath>

using namespace ricefield;

namespace {

FieldSample modes(std::vector<Vec2> w, std::vector<double> a,
                  std::vector<double> b, int dim) {
    FieldSample s;
    s.dim = dim;
    s.freq = std::move(w);
    s.amp_cos = std::move(a);
    s.amp_sin = std::move(b);
    return s;
}

} // namespace

TEST_CASE("level roots of a plain cosine") {
    FieldSample s = modes({{1.0, 0.0}}, {1.0}, {0.0}, 1);
    Domain I = Domain::interval(2 * M_PI);

    CountResult r = count_level_roots_1d(s, I, 0.0, 0.01);
    REQUIRE(r.count() == 2);
    CHECK(r.locations[0].x == doctest::Approx(M_PI / 2).epsilon(1e-8));
    CHECK(r.locations[1].x == doctest::Approx(3 * M_PI / 2).epsilon(1e-8));
    CHECK(r.refine_failures == 0);

    // path strictly below the level
    CHECK(count_level_roots_1d(s, I, 2.0, 0.01).count() == 0);
}

TEST_CASE("gradient roots of a separable two-mode field") {
    // X = s(cos x + cos y): critical points at the pi-lattice
    double amp = 0.8;
    FieldSample s = modes({{1.0, 0.0}, {0.0, 1.0}}, {amp, amp}, {0.0, 0.0}, 2);
    Domain R = Domain::rectangle(7.0, 7.0);

    CountResult roots = count_gradient_roots_2d(s, R, Vec2{0, 0}, 0.1);
    CHECK(roots.count() == 4); // (pi,pi), (pi,2pi), (2pi,pi), (2pi,2pi)

    auto [m1_all, m2_all] = classify_critical(s, roots, -10.0);
    CHECK(m2_all.count() == 4);
    CHECK(m1_all.count() == 1); // only (2pi,2pi) is a maximum

    auto [m1, m2] = classify_critical(s, roots, 1.0);
    CHECK(m2.count() == 1); // saddles sit at 0, the minimum at -1.6
    CHECK(m1.count() == 1);

    auto [m1_hi, m2_hi] = classify_critical(s, roots, 2.0);
    CHECK(m1_hi.count() == 0);
    CHECK(m2_hi.count() == 0);

    // gradient never reaches a far-away target
    CHECK(count_gradient_roots_2d(s, R, Vec2{50.0, 0.0}, 0.1).count() == 0);
}

TEST_CASE("pathwise ordering of the critical-point counts") {
    auto model = gaussian_model_2d();
    Domain disc = Domain::unit_disc();
    for (int i = 0; i < 25; ++i) {
        FieldSample s = sample_field(model, 64, 400 + static_cast<std::uint64_t>(i));
        CountResult roots = count_gradient_roots_2d(s, disc, Vec2{0, 0}, 0.05);
        int prev1 = 1 << 20, prev2 = 1 << 20;
        for (double u : {-2.0, 0.0, 1.0, 2.0}) {
            auto [m1, m2] = classify_critical(s, roots, u);
            CHECK(m1.count() <= m2.count());
            // counts can only fall as the level rises
            CHECK(m1.count() <= prev1);
            CHECK(m2.count() <= prev2);
            prev1 = m1.count();
            prev2 = m2.count();
        }
    }
}

TEST_CASE("count is stable under grid refinement") {
    auto model = gaussian_model_2d();
    Domain disc = Domain::unit_disc();
    int agree = 0, total = 40;
    for (int i = 0; i < total; ++i) {
        FieldSample s = sample_field(model, 64, 9100 + static_cast<std::uint64_t>(i));
        int a = count_gradient_roots_2d(s, disc, Vec2{0, 0}, 0.05).count();
        int b = count_gradient_roots_2d(s, disc, Vec2{0, 0}, 0.025).count();
        if (a == b) ++agree;
    }
    CHECK(agree >= total - 1);
}

TEST_CASE("boundary maxima on the disc") {
    // X = cos x restricted to the rim: Xtilde(theta) = cos(cos theta),
    // maxima (value 1) at theta = pi/2 and 3pi/2
    FieldSample s = modes({{1.0, 0.0}}, {1.0}, {0.0}, 2);
    BoundaryProcess b = restrict_to_boundary(s, Domain::unit_disc());
    CHECK(count_boundary_critical(b, 0.9).count() == 2);
    CHECK(count_boundary_critical(b, 0.0).count() == 2);
    CHECK(count_boundary_critical(b, 1.5).count() == 0);
}

TEST_CASE("boundary maximum on the seam is counted once") {
    // X = cos y: Xtilde(theta) = cos(sin theta), maxima at theta = 0 and pi
    FieldSample s = modes({{0.0, 1.0}}, {1.0}, {0.0}, 2);
    BoundaryProcess b = restrict_to_boundary(s, Domain::unit_disc());
    CHECK(count_boundary_critical(b, 0.9).count() == 2);
}

TEST_CASE("flat boundary trace is flagged as degenerate") {
    FieldSample s = modes({{0.0, 0.0}}, {0.7}, {0.0}, 2); // constant field
    BoundaryProcess b = restrict_to_boundary(s, Domain::unit_disc());
    CountResult r = count_boundary_critical(b, 0.0);
    CHECK(r.degenerate_input);
    CHECK(r.count() == 0);
}
