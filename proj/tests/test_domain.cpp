#include "ricefield/domain.hpp"

#include "doctest.h"

#include <cmath>
#include <numbers>

using namespace ricefield;

TEST_CASE("measures") {
    CHECK(Domain::interval(10.0).measure() == 10.0);
    CHECK(Domain::interval(10.0).boundary_measure() == 0.0);
    CHECK(Domain::rectangle(2.0, 3.0).measure() == 6.0);
    CHECK(Domain::rectangle(2.0, 3.0).boundary_measure() == 10.0);
    CHECK(Domain::unit_disc().measure() ==
          doctest::Approx(std::numbers::pi).epsilon(1e-15));
    CHECK(Domain::unit_disc().boundary_measure() ==
          doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-15));
}

static void check_unit_speed(const Domain& d) {
    double L = d.boundary_measure();
    double h = 1e-6;
    for (double s : {0.1 * L, 0.37 * L, 0.81 * L}) {
        BoundaryPoint p = d.boundary_point(s);
        CHECK(std::hypot(p.tangent.x, p.tangent.y) == doctest::Approx(1.0).epsilon(1e-12));
        BoundaryPoint q = d.boundary_point(s + h);
        // forward difference of position approximates the tangent
        CHECK((q.position.x - p.position.x) / h == doctest::Approx(p.tangent.x).epsilon(1e-4));
        CHECK((q.position.y - p.position.y) / h == doctest::Approx(p.tangent.y).epsilon(1e-4));
    }
}

TEST_CASE("boundary parameterization is unit speed") {
    check_unit_speed(Domain::unit_disc());
    check_unit_speed(Domain::rectangle(2.0, 3.0));
    CHECK_THROWS(Domain::interval(1.0).boundary_point(0.0));
}

TEST_CASE("disc curvature vector points inward") {
    Domain d = Domain::unit_disc();
    for (double s : {0.0, 1.0, 3.0, 6.0}) {
        BoundaryPoint p = d.boundary_point(s);
        CHECK(p.second_deriv.x == doctest::Approx(-p.position.x).epsilon(1e-12));
        CHECK(p.second_deriv.y == doctest::Approx(-p.position.y).epsilon(1e-12));
    }
}

TEST_CASE("boundary parameterization closes periodically") {
    for (auto d : {Domain::unit_disc(), Domain::rectangle(1.5, 2.5)}) {
        BoundaryPoint a = d.boundary_point(0.0);
        BoundaryPoint b = d.boundary_point(d.boundary_measure());
        CHECK(a.position.x == doctest::Approx(b.position.x).epsilon(1e-12));
        CHECK(a.position.y == doctest::Approx(b.position.y).epsilon(1e-12));
    }
}

TEST_CASE("interior membership and projection") {
    Domain disc = Domain::unit_disc();
    CHECK(disc.contains_interior(0.0, 0.0));
    CHECK(disc.contains_interior(0.7, 0.0));
    CHECK_FALSE(disc.contains_interior(1.0, 0.0)); // rim is boundary-only
    CHECK_FALSE(disc.contains_interior(1.2, 0.0));
    CHECK(disc.boundary_distance(0.6, 0.0) == doctest::Approx(0.4).epsilon(1e-12));

    Vec2 p = disc.project({2.0, 0.0});
    CHECK(p.x == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.y == 0.0);

    Domain rect = Domain::rectangle(2.0, 1.0);
    CHECK(rect.contains_interior(1.0, 0.5));
    CHECK_FALSE(rect.contains_interior(2.0, 0.5));
    Vec2 q = rect.project({3.0, -1.0});
    CHECK(q.x == 2.0);
    CHECK(q.y == 0.0);
}

TEST_CASE("symmetric 2x2 eigenvalues and definiteness") {
    Sym2 neg{-2.0, 0.3, -1.0};
    CHECK(neg.negative_definite());
    CHECK(neg.min_eigenvalue() < neg.max_eigenvalue());
    CHECK(neg.max_eigenvalue() < 0.0);

    Sym2 saddle{1.0, 0.0, -1.0};
    CHECK_FALSE(saddle.negative_definite());
    CHECK(saddle.det() == doctest::Approx(-1.0));

    Sym2 m{3.0, 1.0, 2.0};
    // trace and determinant identities
    CHECK(m.min_eigenvalue() + m.max_eigenvalue() == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(m.min_eigenvalue() * m.max_eigenvalue() == doctest::Approx(m.det()).epsilon(1e-12));
}
