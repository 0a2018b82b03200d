#include "ricefield/field.hpp"

#include "ricefield/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>

namespace ricefield {

namespace {

constexpr double pi = std::numbers::pi;

/// Inverse CDF of the radial part of the spectral probability measure,
/// built by cumulative trapezoid on a log-spaced grid.
class RadialSampler {
public:
    RadialSampler(const SpectralModel& model) {
        auto pdf = [&](double r) {
            double f = model.radial_density(r);
            if (f < 0) throw SpectralError("negative spectral density");
            return model.dim == 2 ? 2 * pi * r * f : 2 * f;
        };
        // extend the grid until the truncated mass is negligible
        double rmax = 20.0;
        while (pdf(rmax) * rmax > 1e-14 && rmax < 1e6) rmax *= 1.5;

        const int n = 10000;
        grid_.resize(n);
        cdf_.resize(n);
        const double rmin = 1e-8;
        double lmin = std::log(rmin), lmax = std::log(rmax);
        for (int i = 0; i < n; ++i)
            grid_[static_cast<std::size_t>(i)] =
                std::exp(lmin + (lmax - lmin) * i / (n - 1));
        cdf_[0] = 0.0;
        double prev = pdf(grid_[0]);
        for (int i = 1; i < n; ++i) {
            std::size_t k = static_cast<std::size_t>(i);
            double cur = pdf(grid_[k]);
            cdf_[k] = cdf_[k - 1] + 0.5 * (prev + cur) * (grid_[k] - grid_[k - 1]);
            prev = cur;
        }
        double total = cdf_.back();
        if (!(total > 0.99) || !(total < 1.01))
            throw SpectralError("radial CDF mass " + std::to_string(total) +
                                "; density not normalized or not invertible");
        for (auto& c : cdf_) c /= total;
        // strict monotonicity needed for inversion
        for (std::size_t i = 1; i < cdf_.size(); ++i)
            if (cdf_[i] < cdf_[i - 1])
                throw SpectralError("radial CDF not monotone");
    }

    double invert(double u) const {
        auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
        if (it == cdf_.begin()) return grid_.front();
        if (it == cdf_.end()) return grid_.back();
        std::size_t i = static_cast<std::size_t>(it - cdf_.begin());
        double w = (u - cdf_[i - 1]) / (cdf_[i] - cdf_[i - 1]);
        return grid_[i - 1] + w * (grid_[i] - grid_[i - 1]);
    }

private:
    std::vector<double> grid_, cdf_;
};

} // namespace

FieldSample sample_field(const SpectralModel& model, int n_freq, std::uint64_t seed) {
    if (n_freq < 64) throw std::invalid_argument("n_freq must be >= 64");
    RadialSampler radial(model);

    FieldSample s;
    s.dim = model.dim;
    s.seed = seed;
    s.model_ref = model.name;
    s.freq.resize(static_cast<std::size_t>(n_freq));
    s.amp_cos.resize(static_cast<std::size_t>(n_freq));
    s.amp_sin.resize(static_cast<std::size_t>(n_freq));

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    double scale = 1.0 / std::sqrt(static_cast<double>(n_freq));
    for (std::size_t m = 0; m < s.freq.size(); ++m) {
        double rho = radial.invert(unif(rng));
        if (model.dim == 2) {
            double theta = 2 * pi * unif(rng);
            s.freq[m] = {rho * std::cos(theta), rho * std::sin(theta)};
        } else {
            s.freq[m] = {unif(rng) < 0.5 ? rho : -rho, 0.0};
        }
        s.amp_cos[m] = scale * normal(rng);
        s.amp_sin[m] = scale * normal(rng);
    }
    return s;
}

FieldValue FieldSample::evaluate(double x, double y) const {
    FieldValue v;
    for (std::size_t m = 0; m < freq.size(); ++m) {
        double wx = freq[m].x, wy = freq[m].y;
        double p = wx * x + wy * y;
        double c = std::cos(p), sn = std::sin(p);
        double e = amp_cos[m] * c + amp_sin[m] * sn;   // even part
        double o = -amp_cos[m] * sn + amp_sin[m] * c;  // odd part
        v.value += e;
        v.grad.x += o * wx;
        v.grad.y += o * wy;
        v.hess.xx -= e * wx * wx;
        v.hess.xy -= e * wx * wy;
        v.hess.yy -= e * wy * wy;
    }
    return v;
}

double FieldSample::value_at(double x, double y) const {
    double v = 0.0;
    for (std::size_t m = 0; m < freq.size(); ++m) {
        double p = freq[m].x * x + freq[m].y * y;
        v += amp_cos[m] * std::cos(p) + amp_sin[m] * std::sin(p);
    }
    return v;
}

std::vector<double> values_on_grid_1d(const FieldSample& s, double t0, double h, int n) {
    std::size_t M = s.freq.size();
    std::vector<double> re(M), im(M), rre(M), rim(M);
    for (std::size_t m = 0; m < M; ++m) {
        double p0 = s.freq[m].x * t0;
        // z_m = (a - i b) e^{i w t};  X = sum Re z_m
        double c = std::cos(p0), sn = std::sin(p0);
        re[m] = s.amp_cos[m] * c + s.amp_sin[m] * sn;
        im[m] = s.amp_cos[m] * sn - s.amp_sin[m] * c;
        rre[m] = std::cos(s.freq[m].x * h);
        rim[m] = std::sin(s.freq[m].x * h);
    }
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t m = 0; m < M; ++m) acc += re[m];
        out[static_cast<std::size_t>(i)] = acc;
        for (std::size_t m = 0; m < M; ++m) {
            double nr = re[m] * rre[m] - im[m] * rim[m];
            im[m] = re[m] * rim[m] + im[m] * rre[m];
            re[m] = nr;
        }
    }
    return out;
}

GridEval2 grid_eval_2d(const FieldSample& s, double x0, double y0, double h,
                       int nx, int ny) {
    GridEval2 g;
    g.nx = nx;
    g.ny = ny;
    g.x0 = x0;
    g.y0 = y0;
    g.h = h;
    std::size_t npts = static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
    g.value.assign(npts, 0.0);
    g.gx.assign(npts, 0.0);
    g.gy.assign(npts, 0.0);

    std::size_t M = s.freq.size();
    std::vector<double> rre(M), rim(M);
    for (std::size_t m = 0; m < M; ++m) {
        rre[m] = std::cos(s.freq[m].x * h);
        rim[m] = std::sin(s.freq[m].x * h);
    }
    std::vector<double> re(M), im(M);
    for (int j = 0; j < ny; ++j) {
        double y = y0 + j * h;
        for (std::size_t m = 0; m < M; ++m) {
            double p0 = s.freq[m].x * x0 + s.freq[m].y * y;
            double c = std::cos(p0), sn = std::sin(p0);
            re[m] = s.amp_cos[m] * c + s.amp_sin[m] * sn;
            im[m] = s.amp_cos[m] * sn - s.amp_sin[m] * c;
        }
        for (int i = 0; i < nx; ++i) {
            double v = 0.0, dx = 0.0, dy = 0.0;
            for (std::size_t m = 0; m < M; ++m) {
                v += re[m];
                dx -= s.freq[m].x * im[m];
                dy -= s.freq[m].y * im[m];
            }
            std::size_t k = g.idx(i, j);
            g.value[k] = v;
            g.gx[k] = dx;
            g.gy[k] = dy;
            for (std::size_t m = 0; m < M; ++m) {
                double nr = re[m] * rre[m] - im[m] * rim[m];
                im[m] = re[m] * rim[m] + im[m] * rre[m];
                re[m] = nr;
            }
        }
    }
    return g;
}

namespace {

/// Projected ascent from a starting point; returns the best value seen.
double polish_max(const FieldSample& s, const Domain& domain, Vec2 t,
                  double step0) {
    double best = s.value_at(t.x, t.y);
    double step = step0;
    for (int it = 0; it < 60; ++it) {
        FieldValue fv = s.evaluate(t.x, t.y);
        best = std::max(best, fv.value);
        Vec2 cand;
        bool newton = false;
        if (s.dim == 2 && fv.hess.negative_definite(1e-12)) {
            double det = fv.hess.det();
            double dx = -(fv.hess.yy * fv.grad.x - fv.hess.xy * fv.grad.y) / det;
            double dy = -(-fv.hess.xy * fv.grad.x + fv.hess.xx * fv.grad.y) / det;
            if (std::hypot(dx, dy) <= 2 * step0) {
                cand = domain.project({t.x + dx, t.y + dy});
                newton = true;
            }
        } else if (s.dim == 1 && fv.hess.xx < -1e-12) {
            double dx = -fv.grad.x / fv.hess.xx;
            if (std::abs(dx) <= 2 * step0) {
                cand = domain.project({t.x + dx, 0.0});
                newton = true;
            }
        }
        if (!newton) {
            double gn = std::hypot(fv.grad.x, fv.grad.y);
            if (gn < 1e-14) break;
            cand = domain.project({t.x + step * fv.grad.x / gn,
                                   t.y + step * fv.grad.y / gn});
        }
        double cv = s.value_at(cand.x, cand.y);
        if (cv > best - 1e-15) {
            if (cand.x == t.x && cand.y == t.y) break;
            t = cand;
            best = std::max(best, cv);
        } else {
            step *= 0.5;
            if (step < 1e-12) break;
        }
    }
    return best;
}

} // namespace

double sup_on_domain(const FieldSample& s, const Domain& domain,
                     double grid_step, bool polish) {
    if (grid_step <= 0) throw std::invalid_argument("grid_step must be positive");
    double best = -std::numeric_limits<double>::infinity();
    Vec2 argbest;

    if (domain.kind() == Domain::Kind::interval) {
        int n = static_cast<int>(std::floor(domain.side1() / grid_step)) + 1;
        auto vals = values_on_grid_1d(s, 0.0, grid_step, n);
        for (int i = 0; i < n; ++i) {
            if (vals[static_cast<std::size_t>(i)] > best) {
                best = vals[static_cast<std::size_t>(i)];
                argbest = {i * grid_step, 0.0};
            }
        }
        double endv = s.value_at(domain.side1());
        if (endv > best) {
            best = endv;
            argbest = {domain.side1(), 0.0};
        }
    } else {
        double x0 = 0.0, y0 = 0.0, x1 = domain.side1(), y1 = domain.side2();
        if (domain.kind() == Domain::Kind::unit_disc) {
            x0 = y0 = -1.0;
            x1 = y1 = 1.0;
        }
        int nx = static_cast<int>(std::floor((x1 - x0) / grid_step)) + 1;
        int ny = static_cast<int>(std::floor((y1 - y0) / grid_step)) + 1;
        GridEval2 g = grid_eval_2d(s, x0, y0, grid_step, nx, ny);
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                double x = x0 + i * grid_step, y = y0 + j * grid_step;
                if (domain.kind() == Domain::Kind::unit_disc && std::hypot(x, y) > 1.0)
                    continue;
                double v = g.value[g.idx(i, j)];
                if (v > best) {
                    best = v;
                    argbest = {x, y};
                }
            }
        // boundary samples at comparable resolution
        double per = domain.boundary_measure();
        int nb = std::max(16, static_cast<int>(std::ceil(per / grid_step)));
        for (int k = 0; k < nb; ++k) {
            BoundaryPoint bp = domain.boundary_point(per * k / nb);
            double v = s.value_at(bp.position.x, bp.position.y);
            if (v > best) {
                best = v;
                argbest = bp.position;
            }
        }
    }

    if (polish) best = std::max(best, polish_max(s, domain, argbest, grid_step));
    return best;
}

BoundaryProcess::BoundaryProcess(const FieldSample& parent, const Domain& domain)
    : parent_(&parent), domain_(domain) {
    if (domain.kind() == Domain::Kind::interval)
        throw std::invalid_argument("interval has no boundary process");
}

BoundaryProcess::Value BoundaryProcess::at(double s) const {
    BoundaryPoint bp = domain_.boundary_point(s);
    FieldValue fv = parent_->evaluate(bp.position.x, bp.position.y);
    Value v;
    v.position = bp.position;
    v.value = fv.value;
    v.d1 = fv.grad.x * bp.tangent.x + fv.grad.y * bp.tangent.y;
    // chain rule: tangential Hessian plus the curvature term
    v.d2 = fv.hess.xx * bp.tangent.x * bp.tangent.x +
           2 * fv.hess.xy * bp.tangent.x * bp.tangent.y +
           fv.hess.yy * bp.tangent.y * bp.tangent.y +
           fv.grad.x * bp.second_deriv.x + fv.grad.y * bp.second_deriv.y;
    return v;
}

BoundaryProcess restrict_to_boundary(const FieldSample& s, const Domain& domain) {
    return BoundaryProcess(s, domain);
}

void export_grid_csv(const FieldSample& s, const Domain& domain,
                     double grid_step, std::ostream& out) {
    out << "t1,t2,X,d1X,d2X,H11,H12,H22\n";
    double x0 = 0.0, y0 = 0.0, x1 = domain.side1(), y1 = domain.side2();
    if (domain.kind() == Domain::Kind::unit_disc) {
        x0 = y0 = -1.0;
        x1 = y1 = 1.0;
    }
    if (domain.kind() == Domain::Kind::interval) y1 = 0.0;
    for (double y = y0; y <= y1 + 1e-12; y += grid_step) {
        for (double x = x0; x <= x1 + 1e-12; x += grid_step) {
            if (domain.dim() == 2 && !domain.contains_interior(x, y)) continue;
            FieldValue fv = s.evaluate(x, y);
            out << x << ',' << y << ',' << fv.value << ',' << fv.grad.x << ','
                << fv.grad.y << ',' << fv.hess.xx << ',' << fv.hess.xy << ','
                << fv.hess.yy << '\n';
        }
        if (domain.dim() == 1) break;
    }
}

} // namespace ricefield
