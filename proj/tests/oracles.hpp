#pragma once

// Independent reference computations. Nothing here calls into the code paths
// it is used to check: closed forms, finite differences and a 1D sampler.

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "projdyn/endomorphism.hpp"
#include "projdyn/projective.hpp"

namespace oracle {

using cplx = std::complex<double>;

/// Green function of [z^2 : w^2 : t^2]: log max(|z|,|w|,|t|) - log |Z|.
double squaring_green(const projdyn::Lift& z);

/// Uniformly distributed unit lift (complex Gaussian, normalized), plain mt19937_64.
class PointSource {
public:
    explicit PointSource(std::uint64_t seed);
    projdyn::Lift unit_lift();
    projdyn::ProjPoint point();
    double uniform();
    cplx gaussian();

private:
    std::uint64_t state_;
    double next();
};

/// Degree-2 map whose three components carry all six monomials with
/// Gaussian coefficients.
projdyn::HomogeneousEndomorphism random_quadratic_map(std::uint64_t seed);

/// Affine chart expression of f^n from chart src to chart dst, evaluated by
/// plain lift arithmetic and dehomogenization.
projdyn::ChartCoords chart_expression(const projdyn::HomogeneousEndomorphism& f, int n, projdyn::AffineChart src,
                                      projdyn::AffineChart dst, const projdyn::ChartCoords& c);

/// Central finite-difference Jacobian of chart_expression (complex step h along each axis).
Eigen::Matrix2cd fd_jacobian(const projdyn::HomogeneousEndomorphism& f, int n, projdyn::AffineChart src,
                             projdyn::AffineChart dst, const projdyn::ChartCoords& c, double h = 1e-5);

/// Samples of the equilibrium measure of the 1D polynomial R(z) = lambda z + z^2
/// by random inverse branches (n_backward steps from z = 2 per sample).
std::vector<cplx> mu_R_samples(cplx lambda, std::size_t n, int n_backward, std::uint64_t seed);

/// Mean of g over samples.
template <class T, class G>
auto mean(const std::vector<T>& xs, G&& g) {
    decltype(g(xs[0])) s{};
    for (const auto& x : xs) s += g(x);
    return s / static_cast<double>(xs.size());
}

/// Max Lipschitz ratio of a function over a dense polar grid in the disc.
double dense_lipschitz(const std::function<cplx(cplx)>& phi, cplx center, double radius, int n_side);

}  // namespace oracle
