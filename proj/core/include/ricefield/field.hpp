#ifndef RICEFIELD_FIELD_HPP
#define RICEFIELD_FIELD_HPP

#include "ricefield/domain.hpp"
#include "ricefield/spectral.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace ricefield {

/// Value, gradient and Hessian of one realization at a point.  All three
/// come from the same closed-form trigonometric sum, so the Hessian is
/// symmetric by construction and derivatives are exact.
struct FieldValue {
    double value = 0.0;
    Vec2 grad;
    Sym2 hess;
};

/// One realized field
///   X(t) = (1/sqrt(M)) sum_m a_m cos<w_m,t> + b_m sin<w_m,t>
/// with frequencies drawn from the spectral probability measure and
/// standard normal amplitudes.  Conditional on the frequency draw the
/// field is exactly Gaussian and stationary; E[X(s)X(t)] = Gamma(s-t)
/// holds exactly over frequency draws for any M.
struct FieldSample {
    int dim = 2;
    std::vector<Vec2> freq;
    std::vector<double> amp_cos, amp_sin; // pre-scaled by 1/sqrt(M)
    std::uint64_t seed = 0;
    std::string model_ref;

    FieldValue evaluate(double x, double y = 0.0) const;
    double value_at(double x, double y = 0.0) const;
};

FieldSample sample_field(const SpectralModel& model, int n_freq, std::uint64_t seed);

/// Values on the uniform grid t0 + i*h, i = 0..n-1, via per-frequency
/// phase rotation (one complex multiply per frequency per point).
std::vector<double> values_on_grid_1d(const FieldSample& s, double t0, double h, int n);

/// Value and gradient on a 2-d tensor grid, row-major in y then x.
struct GridEval2 {
    int nx = 0, ny = 0;
    double x0 = 0.0, y0 = 0.0, h = 0.0;
    std::vector<double> value, gx, gy;
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) +
               static_cast<std::size_t>(i);
    }
};

GridEval2 grid_eval_2d(const FieldSample& s, double x0, double y0, double h,
                       int nx, int ny);

/// sup over I of the realization: grid scan over interior and boundary,
/// optionally polished by projected ascent from the best grid point.
/// The result is never below the grid maximum.
double sup_on_domain(const FieldSample& s, const Domain& domain,
                     double grid_step, bool polish = true);

/// Restriction of the field to the domain boundary, with exact
/// derivatives along the unit-speed parameterization (curvature term
/// included for the disc).
class BoundaryProcess {
public:
    BoundaryProcess(const FieldSample& parent, const Domain& domain);

    struct Value {
        double value = 0.0;  // Xtilde(s)
        double d1 = 0.0;     // d/ds Xtilde
        double d2 = 0.0;     // d2/ds2 Xtilde
        Vec2 position;
    };

    Value at(double s) const;
    double perimeter() const { return domain_.boundary_measure(); }
    const Domain& domain() const { return domain_; }

private:
    const FieldSample* parent_;
    Domain domain_;
};

BoundaryProcess restrict_to_boundary(const FieldSample& s, const Domain& domain);

/// CSV rows (t1, t2, X, d1X, d2X, H11, H12, H22) on a grid over the
/// domain bounding box (interior points only).
void export_grid_csv(const FieldSample& s, const Domain& domain,
                     double grid_step, std::ostream& out);

} // namespace ricefield

#endif
