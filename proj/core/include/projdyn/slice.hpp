#pragma once

#include <vector>

#include "projdyn/green.hpp"

namespace projdyn {

/// The projective line zeta -> [base + zeta * direction]; zeta = infinity maps
/// to [direction]. Outer chart coordinate is eta = 1/zeta, lift eta*base + direction.
struct ProjectiveLine {
    Lift base;
    Lift direction;
};

/// Line through two distinct points, parametrized so that zeta = 0 is `a`
/// and zeta = infinity is `b`.
ProjectiveLine line_through(const ProjPoint& a, const ProjPoint& b);

/// The curve f^pushforward o (line). Forward images are evaluated by
/// composition at parameter values, never by expanding coefficients.
struct Curve {
    ProjectiveLine line;
    int pushforward = 0;
};

enum class SliceChart { Inner = 0, Outer = 1 };

/// Unit lift of the curve point at chart coordinate `c`; log of the norm that
/// was divided out is accumulated in `log_norm` (the homogeneous Green
/// function needs it).
Lift curve_lift(const HomogeneousEndomorphism& f, const Curve& curve, SliceChart chart, cplx c, double& log_norm);

ProjPoint curve_point(const HomogeneousEndomorphism& f, const Curve& curve, SliceChart chart, cplx c);

struct SliceOptions {
    double chart_half_width = 1.2;  ///< each chart grid covers [-w, w]^2
    double blend_radius = 1.08;     ///< inner weight falls from 1 at |zeta| = 1/r to 0 at |zeta| = r
    double max_clipped_fraction = 0.01;
    int threads = 1;
};

/// Discrete measure T ^ [curve] on the curve's parameter sphere: cell masses of
/// (1/2 pi) Laplacian of G_F(lift(zeta)) from the 9-point stencil on two
/// uniform grids (zeta and eta = 1/zeta), stitched by a smooth partition of
/// unity chi(zeta) + chi(1/zeta) = 1, so that the total mass is a discrete
/// integral of G against the Laplacian of chi.
struct SliceDensity {
    int grid_size = 0;
    double half_width = 0.0;
    double blend_radius = 0.0;
    Curve curve;
    std::vector<double> inner;  ///< row-major [iy * grid_size + ix], already multiplied by chi
    std::vector<double> outer;
    double total_mass = 0.0;        ///< sum of raw cell masses (1 for a line, d^i for f^i o line)
    double clipped_fraction = 0.0;  ///< negative mass removed, relative to total_mass

    double cell_size() const noexcept { return 2.0 * half_width / grid_size; }
    /// Chart coordinate of the cell center.
    cplx cell_center(int ix, int iy) const noexcept;
    /// Curve parameter zeta of a cell (1/eta for outer cells).
    cplx parameter(SliceChart chart, int ix, int iy) const noexcept;
    const std::vector<double>& weights(SliceChart chart) const noexcept {
        return chart == SliceChart::Inner ? inner : outer;
    }
    /// Partition-of-unity weight chi of the cell in its chart.
    double blend(SliceChart chart, int ix, int iy) const noexcept;
};

/// Throws MassDefect if clipping removes more than options.max_clipped_fraction
/// of the mass; InvalidArgument for grid_size < 64.
SliceDensity line_slice_density(const GreenEvaluator& ge, const Curve& curve, int grid_size, const SliceOptions& options = {});

}  // namespace projdyn
