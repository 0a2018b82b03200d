#include "ricefield/counting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ricefield {

namespace {

double min_pairwise_distance(const std::vector<Vec2>& pts) {
    double sep = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            sep = std::min(sep, std::hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y));
    return pts.size() < 2 ? 0.0 : sep;
}

bool near_existing(const std::vector<Vec2>& pts, Vec2 p, double radius) {
    for (const Vec2& q : pts)
        if (std::hypot(p.x - q.x, p.y - q.y) < radius) return true;
    return false;
}

/// Safeguarded Newton/bisection for a scalar function with exact
/// derivative on a bracket with a sign change.  Returns true on
/// convergence to |f| < refine_tol.
template <class F>
bool refine_bracketed_root(F&& eval, double a, double b, double fa, double fb,
                           double& root) {
    double t = 0.5 * (a + b);
    for (int it = 0; it < refine_max_iter; ++it) {
        auto [f, df] = eval(t);
        if (std::abs(f) < refine_tol) {
            root = t;
            return true;
        }
        if ((f < 0) == (fa < 0)) {
            a = t;
            fa = f;
        } else {
            b = t;
            fb = f;
        }
        double tn = t - f / df;
        if (!(df != 0.0) || tn <= a || tn >= b) tn = 0.5 * (a + b);
        t = tn;
    }
    root = t;
    return false;
}

} // namespace

CountResult count_level_roots_from_values(const FieldSample& sample,
                                          const std::vector<double>& values,
                                          double h, double u) {
    CountResult res;
    res.kind = CountResult::Kind::level_root;
    res.level = u;

    auto eval = [&](double t) {
        FieldValue fv = sample.evaluate(t);
        return std::pair<double, double>(fv.value - u, fv.grad.x);
    };

    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        double fa = values[i] - u, fb = values[i + 1] - u;
        bool hit = fa == 0.0 || (fa < 0) != (fb < 0);
        if (!hit) continue;
        double a = static_cast<double>(i) * h, b = a + h;
        double root = a;
        if (fa != 0.0 && !refine_bracketed_root(eval, a, b, fa, fb, root))
            ++res.refine_failures; // kept anyway, never silently dropped
        Vec2 p{root, 0.0};
        if (!near_existing(res.locations, p, dedup_radius))
            res.locations.push_back(p);
    }
    res.separation = min_pairwise_distance(res.locations);
    return res;
}

CountResult count_level_roots_1d(const FieldSample& sample, const Domain& interval,
                                 double u, double grid_step) {
    if (interval.kind() != Domain::Kind::interval)
        throw std::invalid_argument("count_level_roots_1d needs an interval domain");
    int n = static_cast<int>(std::floor(interval.side1() / grid_step)) + 1;
    auto values = values_on_grid_1d(sample, 0.0, grid_step, n);
    return count_level_roots_from_values(sample, values, grid_step, u);
}

CountResult count_gradient_roots_2d(const FieldSample& sample, const Domain& domain,
                                    Vec2 u_vec, double grid_step) {
    if (domain.dim() != 2)
        throw std::invalid_argument("count_gradient_roots_2d needs a 2-d domain");
    CountResult res;
    res.kind = CountResult::Kind::critical_all;

    double x0 = 0.0, y0 = 0.0, x1 = domain.side1(), y1 = domain.side2();
    if (domain.kind() == Domain::Kind::unit_disc) {
        x0 = y0 = -1.0;
        x1 = y1 = 1.0;
    }
    int nx = static_cast<int>(std::floor((x1 - x0) / grid_step)) + 2;
    int ny = static_cast<int>(std::floor((y1 - y0) / grid_step)) + 2;
    GridEval2 g = grid_eval_2d(sample, x0, y0, grid_step, nx, ny);

    // a seed cell either brackets both components or sits close to a root
    const double norm_thresh = 4.0 * grid_step;

    for (int j = 0; j + 1 < ny; ++j) {
        for (int i = 0; i + 1 < nx; ++i) {
            std::size_t k00 = g.idx(i, j), k10 = g.idx(i + 1, j);
            std::size_t k01 = g.idx(i, j + 1), k11 = g.idx(i + 1, j + 1);
            double cx = x0 + (i + 0.5) * grid_step, cy = y0 + (j + 0.5) * grid_step;
            if (domain.kind() == Domain::Kind::unit_disc &&
                std::hypot(cx, cy) > 1.0 + grid_step)
                continue;

            double fx[4] = {g.gx[k00] - u_vec.x, g.gx[k10] - u_vec.x,
                            g.gx[k01] - u_vec.x, g.gx[k11] - u_vec.x};
            double fy[4] = {g.gy[k00] - u_vec.y, g.gy[k10] - u_vec.y,
                            g.gy[k01] - u_vec.y, g.gy[k11] - u_vec.y};
            auto sign_change = [](const double* f) {
                bool neg = false, pos = false;
                for (int c = 0; c < 4; ++c) (f[c] < 0 ? neg : pos) = true;
                return neg && pos;
            };
            double min_norm = std::numeric_limits<double>::infinity();
            for (int c = 0; c < 4; ++c)
                min_norm = std::min(min_norm, std::hypot(fx[c], fy[c]));
            if (!(sign_change(fx) && sign_change(fy)) && min_norm > norm_thresh)
                continue;

            // Newton with the exact Hessian, damped fallback, trust-region cap
            double tx = cx, ty = cy;
            bool converged = false;
            for (int it = 0; it < refine_max_iter; ++it) {
                FieldValue fv = sample.evaluate(tx, ty);
                double rx = fv.grad.x - u_vec.x, ry = fv.grad.y - u_vec.y;
                if (std::hypot(rx, ry) < refine_tol) {
                    converged = true;
                    break;
                }
                double det = fv.hess.det();
                double hnorm = std::abs(fv.hess.xx) + std::abs(fv.hess.yy) +
                               std::abs(fv.hess.xy);
                double dx, dy;
                if (std::abs(det) > 1e-10 * hnorm * hnorm + 1e-300) {
                    dx = -(fv.hess.yy * rx - fv.hess.xy * ry) / det;
                    dy = -(-fv.hess.xy * rx + fv.hess.xx * ry) / det;
                } else {
                    // damped descent on |grad X - u|^2
                    double gx2 = fv.hess.xx * rx + fv.hess.xy * ry;
                    double gy2 = fv.hess.xy * rx + fv.hess.yy * ry;
                    double gn = std::hypot(gx2, gy2);
                    if (gn < 1e-300) break;
                    dx = -grid_step * gx2 / gn;
                    dy = -grid_step * gy2 / gn;
                }
                double sn = std::hypot(dx, dy);
                if (sn > grid_step) {
                    dx *= grid_step / sn;
                    dy *= grid_step / sn;
                }
                tx += dx;
                ty += dy;
                if (tx < x0 - 2 * grid_step || tx > x1 + 2 * grid_step ||
                    ty < y0 - 2 * grid_step || ty > y1 + 2 * grid_step)
                    break; // left the search box
            }
            if (!converged) {
                ++res.newton_divergences;
                continue;
            }
            // interior only; near-boundary roots belong to the boundary count
            if (!domain.contains_interior(tx, ty)) continue;
            if (domain.boundary_distance(tx, ty) <= boundary_tie_break) continue;
            Vec2 p{tx, ty};
            if (!near_existing(res.locations, p, dedup_radius))
                res.locations.push_back(p);
        }
    }
    res.separation = min_pairwise_distance(res.locations);
    return res;
}

std::pair<CountResult, CountResult> classify_critical(const FieldSample& sample,
                                                      const CountResult& roots,
                                                      double u) {
    CountResult m1, m2;
    m1.kind = CountResult::Kind::critical_max;
    m2.kind = CountResult::Kind::critical_all;
    m1.level = m2.level = u;
    for (const Vec2& p : roots.locations) {
        FieldValue fv = sample.evaluate(p.x, p.y);
        if (!(fv.value > u)) continue;
        m2.locations.push_back(p);
        double lo = fv.hess.min_eigenvalue(), hi = fv.hess.max_eigenvalue();
        if (std::min(std::abs(lo), std::abs(hi)) < hessian_eig_tol) {
            ++m2.indeterminate; // policy: indeterminate counts into M_u2 only
            continue;
        }
        if (hi < -hessian_eig_tol) m1.locations.push_back(p);
    }
    m1.separation = min_pairwise_distance(m1.locations);
    m2.separation = min_pairwise_distance(m2.locations);
    return {m1, m2};
}

CountResult count_boundary_critical(const BoundaryProcess& bproc, double u) {
    CountResult res;
    res.kind = CountResult::Kind::boundary_critical;
    res.level = u;

    const double per = bproc.perimeter();
    const int n = 1024;
    const double h = per / n;
    std::vector<double> d1(static_cast<std::size_t>(n));
    double max_abs = 0.0;
    for (int i = 0; i < n; ++i) {
        d1[static_cast<std::size_t>(i)] = bproc.at(i * h).d1;
        max_abs = std::max(max_abs, std::abs(d1[static_cast<std::size_t>(i)]));
    }
    if (max_abs < 1e-12) {
        // flat trace: no transversal sign changes to count
        res.degenerate_input = true;
        return res;
    }

    auto eval = [&](double s) {
        auto v = bproc.at(s);
        return std::pair<double, double>(v.d1, v.d2);
    };

    std::vector<double> arcs; // root arc positions, for seam dedup
    for (int i = 0; i < n; ++i) {
        double fa = d1[static_cast<std::size_t>(i)];
        double fb = d1[static_cast<std::size_t>((i + 1) % n)];
        if (fa != 0.0 && (fa < 0) == (fb < 0)) continue;
        double a = i * h, b = a + h;
        double root = a;
        if (fa != 0.0 && !refine_bracketed_root(eval, a, b, fa, fb, root))
            ++res.refine_failures;
        double sr = std::fmod(root, per);
        if (sr < 0) sr += per;
        bool dup = false;
        for (double s0 : arcs) {
            double d = std::abs(s0 - sr);
            d = std::min(d, per - d); // wrap distance across the seam
            if (d < dedup_radius) dup = true;
        }
        if (dup) continue;
        auto v = bproc.at(sr);
        if (v.d2 < 0 && v.value > u) {
            arcs.push_back(sr);
            res.locations.push_back(v.position);
        }
    }
    res.separation = min_pairwise_distance(res.locations);
    return res;
}

} // namespace ricefield
