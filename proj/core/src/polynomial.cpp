#include "projdyn/polynomial.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace projdyn {

Polynomial::Polynomial(std::vector<cplx> ascending) : coeffs_(std::move(ascending)) {
    while (!coeffs_.empty() && coeffs_.back() == cplx{}) coeffs_.pop_back();
}

cplx Polynomial::coefficient(int k) const noexcept {
    if (k < 0 || k > degree()) return {};
    return coeffs_[static_cast<std::size_t>(k)];
}

cplx Polynomial::operator()(cplx z) const noexcept {
    cplx acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return Polynomial{};
    std::vector<cplx> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<double>(k);
    return Polynomial(std::move(d));
}

double Polynomial::magnitude(double abs_z) const noexcept {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * abs_z + std::abs(*it);
    return acc;
}

namespace {

std::vector<cplx> raw_roots(const std::vector<cplx>& c) {
    const int d = static_cast<int>(c.size()) - 1;
    if (d == 1) return {-c[0] / c[1]};
    if (d == 2) {
        const cplx a = c[2], b = c[1], k = c[0];
        cplx disc = std::sqrt(b * b - 4.0 * a * k);
        // Pick the sign that avoids cancellation in -b -/+ sqrt(disc).
        if (std::real(std::conj(b) * disc) < 0.0) disc = -disc;
        const cplx q = -0.5 * (b + disc);
        if (q == cplx{}) return {cplx{}, cplx{}};
        return {q / a, k / q};
    }
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) companion(i, d - 1) = -c[static_cast<std::size_t>(i)] / c.back();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    if (solver.info() != Eigen::Success) fail(ErrorKind::RootFindingFailure, "companion eigenvalue solver did not converge");
    std::vector<cplx> out(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) out[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    return out;
}

}  // namespace

std::vector<cplx> solve(const Polynomial& p, cplx value) {
    if (p.degree() < 1) fail(ErrorKind::InvalidArgument, "cannot solve a constant polynomial");
    std::vector<cplx> c = p.coefficients();
    c[0] -= value;
    const Polynomial shifted(c);
    const Polynomial dp = shifted.derivative();

    std::vector<cplx> roots = raw_roots(c);
    for (cplx& r : roots) {
        if (!std::isfinite(r.real()) || !std::isfinite(r.imag()))
            fail(ErrorKind::RootFindingFailure, "non-finite root");
        const cplx fr = shifted(r);
        const cplx dr = dp(r);
        if (dr != cplx{}) {
            const cplx candidate = r - fr / dr;
            if (std::abs(shifted(candidate)) < std::abs(fr)) r = candidate;
        }
        const double scale = shifted.magnitude(std::abs(r));
        if (std::abs(shifted(r)) > 1e-8 * scale)
            fail(ErrorKind::RootFindingFailure, "root residual too large after polishing");
    }
    return roots;
}

std::vector<Root> merge_roots(const std::vector<cplx>& roots, double tol) {
    std::vector<Root> out;
    for (cplx r : roots) {
        bool merged = false;
        for (Root& m : out) {
            if (std::abs(m.value - r) < tol) {
                // Running mean keeps the merged value central in the cluster.
                m.value = (m.value * static_cast<double>(m.multiplicity) + r) / static_cast<double>(m.multiplicity + 1);
                ++m.multiplicity;
                merged = true;
                break;
            }
        }
        if (!merged) out.push_back({r, 1});
    }
    return out;
}

}  // namespace projdyn
