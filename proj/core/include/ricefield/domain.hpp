#ifndef RICEFIELD_DOMAIN_HPP
#define RICEFIELD_DOMAIN_HPP

#include <stdexcept>
#include <string>

namespace ricefield {

struct Vec2 {
    double x = 0.0, y = 0.0;
};

/// Symmetric 2x2 matrix (a Hessian).
struct Sym2 {
    double xx = 0.0, xy = 0.0, yy = 0.0;

    double det() const { return xx * yy - xy * xy; }
    double min_eigenvalue() const;
    double max_eigenvalue() const;
    bool negative_definite(double tol = 0.0) const {
        return max_eigenvalue() < -tol;
    }
};

/// Point on a boundary curve under its unit-speed parameterization.
struct BoundaryPoint {
    Vec2 position;
    Vec2 tangent;       // unit
    Vec2 second_deriv;  // curvature vector of the parameterization
};

/// Interval [0,T], rectangle [0,T1]x[0,T2] or the unit disc, with the
/// interior measure sigma and the boundary measure sigma-tilde.
class Domain {
public:
    enum class Kind { interval, rectangle, unit_disc };

    static Domain interval(double T);
    static Domain rectangle(double T1, double T2);
    static Domain unit_disc();

    Kind kind() const { return kind_; }
    int dim() const { return kind_ == Kind::interval ? 1 : 2; }
    double side1() const { return t1_; }
    double side2() const { return t2_; }

    double measure() const;          // length or area of the interior
    double boundary_measure() const; // perimeter; 0 for the interval

    /// Unit-speed, periodic boundary parameterization by arc length.
    /// Throws for the interval (its boundary is two points).
    BoundaryPoint boundary_point(double s) const;

    /// Interior membership. The disc uses |t| <= 1 - 1e-12 so points on
    /// the rim are handled only through the boundary process.
    bool contains_interior(double x, double y = 0.0) const;

    /// Distance from an interior candidate to the boundary.
    double boundary_distance(double x, double y = 0.0) const;

    /// Project a point into the closed domain.
    Vec2 project(Vec2 p) const;

    std::string describe() const;

private:
    Kind kind_ = Kind::unit_disc;
    double t1_ = 0.0, t2_ = 0.0;
};

inline constexpr double interior_margin = 1e-12;

} // namespace ricefield

#endif
