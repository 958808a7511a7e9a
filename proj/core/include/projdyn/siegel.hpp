#pragma once

#include <vector>

#include "projdyn/measures.hpp"

namespace projdyn {

/// Golden-mean rotation number (sqrt(5) - 1) / 2.
double golden_mean();

cplx rotation_multiplier(double theta);

/// Truncated linearizing series Phi(z) = z + sum_{k>=2} c_k z^k solving
/// Phi(R(z)) = lambda Phi(z) for R(z) = lambda z + z^2.
struct SiegelLinearization {
    cplx lambda;
    std::vector<cplx> coeffs;  ///< coeffs[k] = c_k, coeffs[0] = 0, coeffs[1] = 1
    double radius_estimate = 0.0;

    int n_terms() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
    cplx R(cplx z) const noexcept { return lambda * z + z * z; }
    cplx phi(cplx z) const noexcept;
    cplx phi_prime(cplx z) const noexcept;
    /// Newton solve of Phi(z) = v starting from z = v.
    cplx phi_inverse(cplx v) const;
    /// max over `samples` points of |z| = radius of |Phi(R(z)) - lambda Phi(z)|.
    double functional_equation_residual(double radius, int samples = 512) const;
};

/// Coefficients from matching powers of z:
///   (lambda - lambda^n) c_n = sum_{n/2 <= k < n} binom(k, n-k) lambda^(2k-n) c_k.
/// Throws SmallDivisorOverflow if some |lambda^n - lambda| < 1e-12 (n <= n_terms),
/// InvalidArgument unless |lambda| = 1 and 2 <= n_terms <= 64.
SiegelLinearization siegel_linearize(cplx lambda, int n_terms = 64);

/// Point a on the invariant curve |Phi| = level with arg Phi(a) = angle.
cplx invariant_curve_point(const SiegelLinearization& lin, double level, double angle = 0.0);

/// Default level of the invariant curve carrying alpha: 0.05 x radius_estimate.
double default_alpha_level(const SiegelLinearization& lin);

/// R^{n_skip}(a0), ..., R^{n_skip + n_points - 1}(a0).
/// Throws InvalidArgument unless a0 is inside the disk where the series is
/// trusted, EscapedSiegelDisk if an iterate leaves 10x the radius estimate.
std::vector<cplx> rotation_orbit(const SiegelLinearization& lin, cplx a0, std::size_t n_skip, std::size_t n_points);

/// Equal-weight samples of alpha on the z-axis line, as points [z : 0 : 1].
EmpiricalMeasure sample_alpha(const SiegelLinearization& lin, cplx a0, std::size_t n_skip, std::size_t n_points);

}  // namespace projdyn
