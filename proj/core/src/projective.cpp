#include "projdyn/projective.hpp"

#include <algorithm>
#include <limits>

namespace projdyn {

namespace {

bool finite(const Lift& v) {
    return std::all_of(v.begin(), v.end(),
                       [](cplx c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

std::size_t slot(AffineChart chart) {
    if (chart.index < 0 || chart.index > 2) fail(ErrorKind::InvalidArgument, "chart index must be 0, 1 or 2");
    return static_cast<std::size_t>(chart.index);
}

}  // namespace

double lift_norm(const Lift& v) noexcept {
    double scale = 0.0;
    for (cplx c : v) scale = std::max({scale, std::abs(c.real()), std::abs(c.imag())});
    if (scale == 0.0 || !std::isfinite(scale)) return scale;
    double s = 0.0;
    for (cplx c : v) s += std::norm(c / scale);
    return scale * std::sqrt(s);
}

Lift normalize(const Lift& v) {
    if (!finite(v)) fail(ErrorKind::ZeroVector, "lift has non-finite components");
    const double n = lift_norm(v);
    if (n == 0.0) fail(ErrorKind::ZeroVector, "lift is the zero vector");
    if (std::abs(n - 1.0) <= 4.0 * std::numeric_limits<double>::epsilon()) return v;
    Lift out;
    for (std::size_t i = 0; i < 3; ++i) out[i] = v[i] / n;
    return out;
}

ProjPoint::ProjPoint(const Lift& v) : lift_(normalize(v)) {}

double chordal_distance(const ProjPoint& p, const ProjPoint& q) noexcept {
    const Lift& a = p.lift();
    const Lift& b = q.lift();
    const double s = std::norm(a[0] * b[1] - a[1] * b[0]) + std::norm(a[0] * b[2] - a[2] * b[0]) +
                     std::norm(a[1] * b[2] - a[2] * b[1]);
    return std::min(1.0, std::sqrt(s) / (lift_norm(a) * lift_norm(b)));
}

bool well_conditioned(const ProjPoint& p, AffineChart chart) noexcept {
    if (chart.index < 0 || chart.index > 2) return false;
    return std::abs(p[chart.index]) > kWellConditionedModulus;
}

AffineChart best_chart(const ProjPoint& p) noexcept {
    int best = 0;
    for (int i = 1; i < 3; ++i)
        if (std::abs(p[i]) > std::abs(p[best])) best = i;
    return AffineChart{best};
}

ChartCoords to_chart(const ProjPoint& p, AffineChart chart) {
    const std::size_t k = slot(chart);
    const cplx denom = p.lift()[k];
    if (std::abs(denom) <= kChartSingularModulus)
        fail(ErrorKind::ChartSingular, "chart coordinate " + std::to_string(k) + " vanishes at the point");
    ChartCoords out;
    std::size_t j = 0;
    for (std::size_t i = 0; i < 3; ++i)
        if (i != k) out[j++] = p.lift()[i] / denom;
    return out;
}

Lift chart_lift(const ChartCoords& c, AffineChart chart) noexcept {
    const auto k = static_cast<std::size_t>(std::clamp(chart.index, 0, 2));
    Lift out;
    std::size_t j = 0;
    for (std::size_t i = 0; i < 3; ++i) out[i] = (i == k) ? cplx{1.0, 0.0} : c[j++];
    return out;
}

ProjPoint from_chart(const ChartCoords& c, AffineChart chart) {
    slot(chart);
    return ProjPoint(chart_lift(c, chart));
}

}  // namespace projdyn
