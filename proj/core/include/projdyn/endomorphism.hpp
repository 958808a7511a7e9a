#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "projdyn/polynomial.hpp"
#include "projdyn/projective.hpp"

namespace projdyn {

using Exponent = std::array<int, 3>;

struct Monomial {
    Exponent exponent;
    cplx coeff;
};

/// Homogeneous polynomial in (z, w, t). Terms are kept sorted by exponent with
/// duplicates summed and zero coefficients dropped.
class HomogeneousPolynomial {
public:
    HomogeneousPolynomial() = default;
    HomogeneousPolynomial(int degree, std::vector<Monomial> terms);

    int degree() const noexcept { return degree_; }
    const std::vector<Monomial>& terms() const noexcept { return terms_; }

    cplx operator()(const Lift& z) const noexcept;
    /// Partial derivatives with respect to z, w, t.
    std::array<cplx, 3> gradient(const Lift& z) const noexcept;

    HomogeneousPolynomial operator*(const HomogeneousPolynomial& rhs) const;
    HomogeneousPolynomial operator+(const HomogeneousPolynomial& rhs) const;
    HomogeneousPolynomial scaled(cplx s) const;

private:
    int degree_ = 0;
    std::vector<Monomial> terms_;
};

/// Affine factors (p(z), q(w)) of a map of the form [t^d p(z/t) : t^d q(w/t) : t^d].
struct ProductFactors {
    Polynomial p;
    Polynomial q;
};

/// A holomorphic self-map of P^2 of degree d >= 2, given by its homogeneous
/// lift F = (P, Q, R). Maps built through `homogenize` remember their product
/// structure, which is what backward iteration needs.
class HomogeneousEndomorphism {
public:
    HomogeneousEndomorphism(int degree, std::array<HomogeneousPolynomial, 3> components);

    int degree() const noexcept { return degree_; }
    const std::array<HomogeneousPolynomial, 3>& components() const noexcept { return components_; }
    const ProductFactors* product() const noexcept { return product_ ? &*product_ : nullptr; }

    /// F(Z) on an arbitrary lift.
    Lift lift_map(const Lift& z) const noexcept;
    /// Rows are the gradients of P, Q, R.
    std::array<std::array<cplx, 3>, 3> differential(const Lift& z) const noexcept;

    /// Largest component modulus of F over `samples` random unit lifts; the
    /// map is rejected as Degenerate when it drops below `floor`.
    double check_nondegenerate(int samples = 10000, std::uint64_t seed = 1, double floor = 1e-8) const;

    /// Sum of coefficient moduli; the natural scale for degeneracy tests.
    double coefficient_scale() const noexcept;

private:
    friend HomogeneousEndomorphism homogenize(const Polynomial&, const Polynomial&);

    int degree_;
    std::array<HomogeneousPolynomial, 3> components_;
    std::optional<ProductFactors> product_;
};

/// [t^d p(z/t) : t^d q(w/t) : t^d]. Throws DegreeMismatch unless
/// deg p == deg q >= 2.
HomogeneousEndomorphism homogenize(const Polynomial& p, const Polynomial& q);

/// The squaring map [z^2 : w^2 : t^2].
HomogeneousEndomorphism squaring_map();

/// [lambda z t + z^2 : lambda w t + w^2 : t^2] with lambda = exp(2 pi i theta).
HomogeneousEndomorphism siegel_product_map(double theta);

/// Coefficientwise composition outer o inner (degree multiplies).
HomogeneousEndomorphism compose(const HomogeneousEndomorphism& outer, const HomogeneousEndomorphism& inner);

/// normalize(F(p)). Throws Degenerate when F vanishes at p.
ProjPoint apply(const HomogeneousEndomorphism& f, const ProjPoint& p);

/// Chart-to-chart Jacobian of f at p. Throws ChartSingular if either chart
/// coordinate vanishes.
Eigen::Matrix2cd jacobian(const HomogeneousEndomorphism& f, const ProjPoint& p, AffineChart src, AffineChart dst);

/// Same, with the largest-modulus chart at p and at f(p).
Eigen::Matrix2cd jacobian(const HomogeneousEndomorphism& f, const ProjPoint& p);

struct Preimage {
    ProjPoint point;
    int multiplicity = 1;
};

/// All d^2 preimages of q (counted with multiplicity). q must lie in the chart
/// t = 1. Throws Unsupported for maps without product structure.
std::vector<Preimage> preimages(const HomogeneousEndomorphism& f, const ProjPoint& q);

}  // namespace projdyn
