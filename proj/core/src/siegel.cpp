#include "projdyn/siegel.hpp"

#include <cmath>
#include <numbers>

namespace projdyn {

double golden_mean() { return (std::sqrt(5.0) - 1.0) / 2.0; }

cplx rotation_multiplier(double theta) { return std::polar(1.0, 2.0 * std::numbers::pi * theta); }

cplx SiegelLinearization::phi(cplx z) const noexcept {
    cplx acc{};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

cplx SiegelLinearization::phi_prime(cplx z) const noexcept {
    cplx acc{};
    for (std::size_t k = coeffs.size() - 1; k >= 1; --k) acc = acc * z + static_cast<double>(k) * coeffs[k];
    return acc;
}

cplx SiegelLinearization::phi_inverse(cplx v) const {
    cplx z = v;
    for (int it = 0; it < 100; ++it) {
        const cplx step = (phi(z) - v) / phi_prime(z);
        z -= step;
        if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) return z;
    }
    fail(ErrorKind::RootFindingFailure, "Newton inversion of the linearization did not converge");
}

double SiegelLinearization::functional_equation_residual(double radius, int samples) const {
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        const cplx z = std::polar(radius, 2.0 * std::numbers::pi * s / samples);
        worst = std::max(worst, std::abs(phi(R(z)) - lambda * phi(z)));
    }
    return worst;
}

SiegelLinearization siegel_linearize(cplx lambda, int n_terms) {
    if (std::abs(std::abs(lambda) - 1.0) > 1e-12) fail(ErrorKind::InvalidArgument, "multiplier must lie on the unit circle");
    if (n_terms < 2 || n_terms > 64) fail(ErrorKind::InvalidArgument, "n_terms must lie in [2, 64]");

    const auto n_max = static_cast<std::size_t>(n_terms);
    std::vector<cplx> lpow(2 * n_max + 1);
    lpow[0] = 1.0;
    for (std::size_t k = 1; k < lpow.size(); ++k) lpow[k] = lpow[k - 1] * lambda;

    // binom[k][j] for k <= n_max, computed in double (entries stay below 2^63).
    std::vector<std::vector<double>> binom(n_max + 1);
    for (std::size_t k = 0; k <= n_max; ++k) {
        binom[k].assign(k + 1, 1.0);
        for (std::size_t j = 1; j < k; ++j) binom[k][j] = binom[k - 1][j - 1] + binom[k - 1][j];
    }

    SiegelLinearization lin;
    lin.lambda = lambda;
    lin.coeffs.assign(n_max + 1, cplx{});
    lin.coeffs[1] = 1.0;
    for (std::size_t n = 2; n <= n_max; ++n) {
        const cplx divisor = lambda - lpow[n];
        if (std::abs(divisor) < 1e-12)
            fail(ErrorKind::SmallDivisorOverflow, "|lambda^" + std::to_string(n) + " - lambda| below 1e-12 (resonant rotation)");
        cplx acc{};
        for (std::size_t k = (n + 1) / 2; k < n; ++k) acc += binom[k][n - k] * lpow[2 * k - n] * lin.coeffs[k];
        lin.coeffs[n] = acc / divisor;
    }

    // Root test over the upper half of the series: the largest radius at which
    // the tail terms |c_k| r^k stay bounded by 1; 20% headroom below that.
    double r = std::numeric_limits<double>::infinity();
    for (std::size_t k = std::max<std::size_t>(2, n_max / 2); k <= n_max; ++k) {
        const double a = std::abs(lin.coeffs[k]);
        if (a > 0.0) r = std::min(r, std::pow(a, -1.0 / static_cast<double>(k)));
    }
    lin.radius_estimate = 0.8 * r;
    return lin;
}

cplx invariant_curve_point(const SiegelLinearization& lin, double level, double angle) {
    return lin.phi_inverse(std::polar(level, angle));
}

double default_alpha_level(const SiegelLinearization& lin) { return 0.05 * lin.radius_estimate; }

std::vector<cplx> rotation_orbit(const SiegelLinearization& lin, cplx a0, std::size_t n_skip, std::size_t n_points) {
    if (!(std::abs(a0) < lin.radius_estimate) || !(std::abs(lin.phi(a0)) < lin.radius_estimate))
        fail(ErrorKind::InvalidArgument, "starting point is outside the trusted Siegel disk");
    const double escape = 10.0 * lin.radius_estimate;
    std::vector<cplx> out;
    out.reserve(n_points);
    cplx z = a0;
    for (std::size_t k = 0; k < n_skip + n_points; ++k) {
        if (k >= n_skip) out.push_back(z);
        z = lin.R(z);
        if (!(std::abs(z) <= escape))
            fail(ErrorKind::EscapedSiegelDisk, "iterate " + std::to_string(k + 1) + " left the Siegel disk");
    }
    return out;
}

EmpiricalMeasure sample_alpha(const SiegelLinearization& lin, cplx a0, std::size_t n_skip, std::size_t n_points) {
    std::vector<ProjPoint> pts;
    pts.reserve(n_points);
    for (cplx z : rotation_orbit(lin, a0, n_skip, n_points)) pts.emplace_back(z, 0.0, 1.0);
    return EmpiricalMeasure::uniform(std::move(pts), 0, Provenance::Alpha);
}

}  // namespace projdyn
