#ifndef RICEFIELD_COUNTING_HPP
#define RICEFIELD_COUNTING_HPP

#include "ricefield/field.hpp"

#include <utility>
#include <vector>

namespace ricefield {

// Detector tolerances.  Dedup radius is far below the typical root
// separation for correlation-length-1 models; Newton tolerance is the
// refinement target on |X-u| resp. |grad X - u|.
inline constexpr double dedup_radius = 1e-4;
inline constexpr double refine_tol = 1e-10;
inline constexpr int refine_max_iter = 50;
inline constexpr double hessian_eig_tol = 1e-8;
inline constexpr double boundary_tie_break = 1e-9;

struct CountResult {
    enum class Kind { level_root, critical_all, critical_max, boundary_critical };

    Kind kind = Kind::level_root;
    double level = 0.0;
    std::vector<Vec2> locations;
    double separation = 0.0; // min pairwise distance among reported roots
    int refine_failures = 0;     // refinement hit the iteration cap
    int newton_divergences = 0;  // discarded seeds (2-d detector)
    int indeterminate = 0;       // near-singular Hessians at classification
    bool degenerate_input = false;

    int count() const { return static_cast<int>(locations.size()); }
};

/// Roots of X(t) = u on an interval, by grid sign changes refined with
/// safeguarded bisection + Newton.
CountResult count_level_roots_1d(const FieldSample& sample, const Domain& interval,
                                 double u, double grid_step);

/// Same detector running on a precomputed value grid (values[i] = X(i*h)).
CountResult count_level_roots_from_values(const FieldSample& sample,
                                          const std::vector<double>& values,
                                          double h, double u);

/// Roots of grad X = u_vec in the domain interior: per-cell seeding where
/// both components change sign (or the corner gradient norm is small),
/// Newton with the exact Hessian, deduplication, boundary tie-break.
CountResult count_gradient_roots_2d(const FieldSample& sample, const Domain& domain,
                                    Vec2 u_vec, double grid_step);

/// Split critical points into (M_u1 = local maxima above u, M_u2 = all
/// critical points above u).  Near-singular Hessians go to M_u2 only.
std::pair<CountResult, CountResult> classify_critical(const FieldSample& sample,
                                                      const CountResult& roots,
                                                      double u);

/// Local maxima of the boundary restriction above level u.
CountResult count_boundary_critical(const BoundaryProcess& bproc, double u);

} // namespace ricefield

#endif
