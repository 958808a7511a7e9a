#pragma once

#include <array>
#include <cmath>

#include "projdyn/error.hpp"

namespace projdyn {

/// Homogeneous coordinates (z, w, t) of a point of P^2(C).
using Lift = std::array<cplx, 3>;

/// Affine coordinates in one of the three standard charts.
using ChartCoords = std::array<cplx, 2>;

double lift_norm(const Lift& v) noexcept;

/// A point of P^2(C) stored as a unit-norm lift. The phase of the lift is
/// whatever the producer supplied; two ProjPoints denote the same point iff
/// their chordal distance vanishes.
class ProjPoint {
public:
    /// Normalizes `v`; throws ZeroVector on a zero or non-finite vector.
    explicit ProjPoint(const Lift& v);
    ProjPoint(cplx z, cplx w, cplx t) : ProjPoint(Lift{z, w, t}) {}

    const Lift& lift() const noexcept { return lift_; }
    cplx operator[](int i) const noexcept { return lift_[static_cast<std::size_t>(i)]; }

    friend bool operator==(const ProjPoint&, const ProjPoint&) = default;

private:
    Lift lift_;
};

/// Positive real rescaling of `v` to unit Euclidean norm. Idempotent bit for
/// bit: a vector whose norm is already 1 to within a few ulps is returned as is.
Lift normalize(const Lift& v);

/// sin of the angle between the two complex lines: |p ^ q| / (|p| |q|).
double chordal_distance(const ProjPoint& p, const ProjPoint& q) noexcept;

/// The chart {Z_index = 1}, with the remaining coordinates in increasing index order.
struct AffineChart {
    int index = 2;

    friend bool operator==(AffineChart, AffineChart) = default;
};

inline constexpr AffineChart kChartZ{0};
inline constexpr AffineChart kChartW{1};
inline constexpr AffineChart kChartT{2};

/// For a unit lift, the largest coordinate always has modulus >= 1/sqrt(3).
inline const double kWellConditionedModulus = 1.0 / std::sqrt(3.0) - 1e-9;

/// Smallest chart-coordinate modulus (of a unit lift) accepted by to_chart.
inline constexpr double kChartSingularModulus = 1e-12;

bool well_conditioned(const ProjPoint& p, AffineChart chart) noexcept;

/// Chart of the largest-modulus coordinate (lowest index on ties).
AffineChart best_chart(const ProjPoint& p) noexcept;

/// Dehomogenize. Throws ChartSingular when the chart coordinate vanishes.
ChartCoords to_chart(const ProjPoint& p, AffineChart chart);

/// The lift with a 1 in the chart slot (not normalized).
Lift chart_lift(const ChartCoords& c, AffineChart chart) noexcept;

ProjPoint from_chart(const ChartCoords& c, AffineChart chart);

}  // namespace projdyn
