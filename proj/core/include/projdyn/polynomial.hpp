#pragma once

#include <initializer_list>
#include <vector>

#include "projdyn/error.hpp"

namespace projdyn {

/// Univariate complex polynomial, coefficients in ascending order of degree.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<cplx> ascending);
    Polynomial(std::initializer_list<cplx> ascending) : Polynomial(std::vector<cplx>(ascending)) {}

    /// Degree after trimming trailing zeros; -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<cplx>& coefficients() const noexcept { return coeffs_; }
    cplx coefficient(int k) const noexcept;
    cplx leading() const noexcept { return coeffs_.empty() ? cplx{} : coeffs_.back(); }

    cplx operator()(cplx z) const noexcept;
    Polynomial derivative() const;

    /// Sum of |c_k| |z|^k; the scale used for relative residuals.
    double magnitude(double abs_z) const noexcept;

private:
    std::vector<cplx> coeffs_;
};

struct Root {
    cplx value;
    int multiplicity = 1;
};

/// All roots of p(z) = value, repeated according to multiplicity
/// (exactly deg p entries). Degree 2 uses the cancellation-free quadratic
/// formula; higher degrees take the eigenvalues of the companion matrix.
/// Every root gets one Newton step, accepted only if it lowers |p - value|.
/// Throws RootFindingFailure if a polished root still has a large residual.
std::vector<cplx> solve(const Polynomial& p, cplx value = {});

/// Groups roots closer than `tol` and reports the group size as multiplicity.
std::vector<Root> merge_roots(const std::vector<cplx>& roots, double tol = 1e-7);

}  // namespace projdyn
