#include "ricefield/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ricefield {

namespace {
constexpr double pi = std::numbers::pi;
}

double Sym2::min_eigenvalue() const {
    double tr = xx + yy, disc = std::sqrt((xx - yy) * (xx - yy) + 4 * xy * xy);
    return 0.5 * (tr - disc);
}

double Sym2::max_eigenvalue() const {
    double tr = xx + yy, disc = std::sqrt((xx - yy) * (xx - yy) + 4 * xy * xy);
    return 0.5 * (tr + disc);
}

Domain Domain::interval(double T) {
    if (T <= 0) throw std::invalid_argument("interval length must be positive");
    Domain d;
    d.kind_ = Kind::interval;
    d.t1_ = T;
    return d;
}

Domain Domain::rectangle(double T1, double T2) {
    if (T1 <= 0 || T2 <= 0) throw std::invalid_argument("rectangle sides must be positive");
    Domain d;
    d.kind_ = Kind::rectangle;
    d.t1_ = T1;
    d.t2_ = T2;
    return d;
}

Domain Domain::unit_disc() {
    Domain d;
    d.kind_ = Kind::unit_disc;
    return d;
}

double Domain::measure() const {
    switch (kind_) {
        case Kind::interval: return t1_;
        case Kind::rectangle: return t1_ * t2_;
        case Kind::unit_disc: return pi;
    }
    return 0.0;
}

double Domain::boundary_measure() const {
    switch (kind_) {
        case Kind::interval: return 0.0; // endpoints are counted separately
        case Kind::rectangle: return 2 * (t1_ + t2_);
        case Kind::unit_disc: return 2 * pi;
    }
    return 0.0;
}

BoundaryPoint Domain::boundary_point(double s) const {
    if (kind_ == Kind::interval)
        throw std::logic_error("interval has no boundary curve");
    if (kind_ == Kind::unit_disc) {
        // unit circle: arc length equals angle
        return {{std::cos(s), std::sin(s)},
                {-std::sin(s), std::cos(s)},
                {-std::cos(s), -std::sin(s)}};
    }
    double per = boundary_measure();
    s = std::fmod(s, per);
    if (s < 0) s += per;
    // counterclockwise from the origin corner; flat sides, zero curvature
    if (s < t1_) return {{s, 0.0}, {1.0, 0.0}, {0.0, 0.0}};
    s -= t1_;
    if (s < t2_) return {{t1_, s}, {0.0, 1.0}, {0.0, 0.0}};
    s -= t2_;
    if (s < t1_) return {{t1_ - s, t2_}, {-1.0, 0.0}, {0.0, 0.0}};
    s -= t1_;
    return {{0.0, t2_ - s}, {0.0, -1.0}, {0.0, 0.0}};
}

bool Domain::contains_interior(double x, double y) const {
    switch (kind_) {
        case Kind::interval:
            return x > interior_margin && x < t1_ - interior_margin;
        case Kind::rectangle:
            return x > interior_margin && x < t1_ - interior_margin &&
                   y > interior_margin && y < t2_ - interior_margin;
        case Kind::unit_disc:
            return std::hypot(x, y) <= 1.0 - interior_margin;
    }
    return false;
}

double Domain::boundary_distance(double x, double y) const {
    switch (kind_) {
        case Kind::interval:
            return std::min(x, t1_ - x);
        case Kind::rectangle:
            return std::min(std::min(x, t1_ - x), std::min(y, t2_ - y));
        case Kind::unit_disc:
            return 1.0 - std::hypot(x, y);
    }
    return 0.0;
}

Vec2 Domain::project(Vec2 p) const {
    switch (kind_) {
        case Kind::interval:
            return {std::clamp(p.x, 0.0, t1_), 0.0};
        case Kind::rectangle:
            return {std::clamp(p.x, 0.0, t1_), std::clamp(p.y, 0.0, t2_)};
        case Kind::unit_disc: {
            double r = std::hypot(p.x, p.y);
            if (r <= 1.0) return p;
            return {p.x / r, p.y / r};
        }
    }
    return p;
}

std::string Domain::describe() const {
    switch (kind_) {
        case Kind::interval: return "interval[0," + std::to_string(t1_) + "]";
        case Kind::rectangle:
            return "rectangle[0," + std::to_string(t1_) + "]x[0," + std::to_string(t2_) + "]";
        case Kind::unit_disc: return "unit_disc";
    }
    return "?";
}

} // namespace ricefield
