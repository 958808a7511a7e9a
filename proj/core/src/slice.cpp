#include "projdyn/slice.hpp"

#include <cmath>
#include <numbers>

#include "projdyn/parallel.hpp"

namespace projdyn {

ProjectiveLine line_through(const ProjPoint& a, const ProjPoint& b) {
    if (chordal_distance(a, b) < 1e-12) fail(ErrorKind::InvalidArgument, "line needs two distinct points");
    return {a.lift(), b.lift()};
}

Lift curve_lift(const HomogeneousEndomorphism& f, const Curve& curve, SliceChart chart, cplx c, double& log_norm) {
    Lift v;
    for (std::size_t i = 0; i < 3; ++i)
        v[i] = chart == SliceChart::Inner ? curve.line.base[i] + c * curve.line.direction[i]
                                          : c * curve.line.base[i] + curve.line.direction[i];
    const double n = lift_norm(v);
    if (!(n > 0.0)) fail(ErrorKind::ZeroVector, "degenerate line parametrization");
    log_norm = std::log(n);
    for (cplx& x : v) x /= n;
    for (int k = 0; k < curve.pushforward; ++k) {
        Lift next;
        const double u = u_potential_step(f, v, next);
        log_norm = f.degree() * (log_norm + u);
        v = next;
    }
    return v;
}

ProjPoint curve_point(const HomogeneousEndomorphism& f, const Curve& curve, SliceChart chart, cplx c) {
    double log_norm = 0.0;
    return ProjPoint(curve_lift(f, curve, chart, c, log_norm));
}

cplx SliceDensity::cell_center(int ix, int iy) const noexcept {
    const double h = cell_size();
    return {-half_width + (ix + 0.5) * h, -half_width + (iy + 0.5) * h};
}

cplx SliceDensity::parameter(SliceChart chart, int ix, int iy) const noexcept {
    const cplx c = cell_center(ix, iy);
    return chart == SliceChart::Inner ? c : 1.0 / c;
}

namespace {

/// C-infinity step from 0 at t <= 0 to 1 at t >= 1, with s(1 - t) = 1 - s(t).
double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / t), b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

}  // namespace

double SliceDensity::blend(SliceChart, int ix, int iy) const noexcept {
    // Same profile in both charts: chi(eta) = 1 - chi(1/eta).
    const double r = std::abs(cell_center(ix, iy));
    if (r == 0.0) return 1.0;
    const double l = std::log(blend_radius);
    return 1.0 - smooth_step((std::log(r) + l) / (2.0 * l));
}

SliceDensity line_slice_density(const GreenEvaluator& ge, const Curve& curve, int grid_size, const SliceOptions& options) {
    if (grid_size < 64) fail(ErrorKind::InvalidArgument, "grid_size must be at least 64");
    if (!(options.blend_radius > 1.0))
        fail(ErrorKind::InvalidArgument, "blend radius must exceed 1 so the charts overlap");
    // chi and its stencil must vanish inside the grid square.
    const double h_check = 2.0 * options.chart_half_width / grid_size;
    if (!(options.blend_radius + 3.0 * h_check <= options.chart_half_width))
        fail(ErrorKind::InvalidArgument, "blend region does not fit inside the chart grid");

    SliceDensity s;
    s.grid_size = grid_size;
    s.half_width = options.chart_half_width;
    s.blend_radius = options.blend_radius;
    s.curve = curve;
    const auto n = static_cast<std::size_t>(grid_size);
    const std::size_t np = n + 2;  // one-cell halo for the stencil
    const double h = s.cell_size();
    const double inv_2pi = 0.5 / std::numbers::pi;

    double raw_total = 0.0, negative = 0.0;
    for (SliceChart chart : {SliceChart::Inner, SliceChart::Outer}) {
        std::vector<double> pot(np * np);
        for_each_block(np, options.threads, [&](std::size_t row) {
            const double y = -s.half_width + (static_cast<double>(row) - 0.5) * h;
            for (std::size_t col = 0; col < np; ++col) {
                const double x = -s.half_width + (static_cast<double>(col) - 0.5) * h;
                double log_norm = 0.0;
                const Lift v = curve_lift(ge.map(), curve, chart, cplx{x, y}, log_norm);
                pot[row * np + col] = ge.homogeneous(v, log_norm);
            }
        });
        std::vector<double>& w = chart == SliceChart::Inner ? s.inner : s.outer;
        w.assign(n * n, 0.0);
        for (std::size_t iy = 0; iy < n; ++iy) {
            for (std::size_t ix = 0; ix < n; ++ix) {
                const double chi = s.blend(chart, static_cast<int>(ix), static_cast<int>(iy));
                if (chi == 0.0) continue;
                const std::size_t c = (iy + 1) * np + (ix + 1);
                // Mehrstellen stencil: exact to high order on harmonic functions,
                // which keeps spurious negative mass near the support small.
                const double lap = (4.0 * (pot[c - 1] + pot[c + 1] + pot[c - np] + pot[c + np]) + pot[c - np - 1] +
                                    pot[c - np + 1] + pot[c + np - 1] + pot[c + np + 1] - 20.0 * pot[c]) /
                                   6.0;
                const double m = chi * inv_2pi * lap;
                raw_total += m;
                if (m < 0.0) {
                    negative -= m;
                    w[iy * n + ix] = 0.0;
                } else {
                    w[iy * n + ix] = m;
                }
            }
        }
    }
    s.total_mass = raw_total;
    if (!(raw_total > 0.0)) fail(ErrorKind::MassDefect, "slice has no positive mass");
    s.clipped_fraction = negative / raw_total;
    if (s.clipped_fraction > options.max_clipped_fraction)
        fail(ErrorKind::MassDefect, "clipped negative mass " + std::to_string(s.clipped_fraction) +
                                        " exceeds tolerance; grid under-resolves the slice");
    const double positive = raw_total + negative;
    const double rescale = raw_total / positive;
    for (double& x : s.inner) x *= rescale;
    for (double& x : s.outer) x *= rescale;
    return s;
}

}  // namespace projdyn
