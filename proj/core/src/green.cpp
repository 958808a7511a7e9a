#include "projdyn/green.hpp"

#include <cmath>
#include <numbers>

namespace projdyn {

namespace {

constexpr double kUBoundHeadroom = 1.05;

double halton(std::uint64_t index, std::uint64_t base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= static_cast<double>(base);
        r += f * static_cast<double>(index % base);
        index /= base;
    }
    return r;
}

cplx box_muller(double u1, double u2) {
    const double r = std::sqrt(-2.0 * std::log(u1));
    return std::polar(r, 2.0 * std::numbers::pi * u2);
}

}  // namespace

double u_potential_step(const HomogeneousEndomorphism& f, const Lift& unit_lift, Lift& image) {
    const Lift y = f.lift_map(unit_lift);
    const double n = lift_norm(y);
    if (!(n > 1e-14 * f.coefficient_scale())) fail(ErrorKind::Degenerate, "F vanishes along the orbit");
    for (std::size_t i = 0; i < 3; ++i) image[i] = y[i] / n;
    return std::log(n) / f.degree();
}

double u_potential(const HomogeneousEndomorphism& f, const ProjPoint& p) {
    Lift image;
    return u_potential_step(f, p.lift(), image);
}

double sampled_u_sup(const HomogeneousEndomorphism& f, int samples) {
    static constexpr std::uint64_t kBases[6] = {2, 3, 5, 7, 11, 13};
    double sup = 0.0;
    Lift image;
    for (int s = 1; s <= samples; ++s) {
        const auto i = static_cast<std::uint64_t>(s);
        Lift z;
        for (std::size_t k = 0; k < 3; ++k) z[k] = box_muller(halton(i, kBases[2 * k]), halton(i, kBases[2 * k + 1]));
        sup = std::max(sup, std::abs(u_potential_step(f, normalize(z), image)));
    }
    return sup;
}

GreenEvaluator::GreenEvaluator(HomogeneousEndomorphism f, int n_iter, std::optional<double> u_bound)
    : f_(std::move(f)), n_iter_(n_iter) {
    if (n_iter < 1) fail(ErrorKind::InvalidArgument, "n_iter must be at least 1");
    u_bound_ = u_bound ? *u_bound : kUBoundHeadroom * sampled_u_sup(f_);
    if (!(u_bound_ >= 0.0)) fail(ErrorKind::InvalidArgument, "u_bound must be nonnegative");
    const double d = f_.degree();
    error_bound_ = u_bound_ * std::pow(d, -n_iter_) / (1.0 - 1.0 / d);
}

GreenValue GreenEvaluator::operator()(const ProjPoint& p) const {
    return {homogeneous(p.lift(), 0.0), error_bound_};
}

double GreenEvaluator::homogeneous(const Lift& unit_lift, double log_norm) const {
    const double d = f_.degree();
    Lift z = unit_lift, next;
    double acc = 0.0, scale = 1.0;
    for (int l = 0; l < n_iter_; ++l) {
        acc += u_potential_step(f_, z, next) * scale;
        z = next;
        scale /= d;
    }
    return log_norm + acc;
}

double GreenEvaluator::homogeneous(const Lift& w) const {
    const double n = lift_norm(w);
    return homogeneous(normalize(w), std::log(n));
}

std::vector<double> GreenEvaluator::partial_sums(const ProjPoint& p, int k) const {
    const double d = f_.degree();
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(std::max(k, 0)));
    Lift z = p.lift(), next;
    double acc = 0.0, scale = 1.0;
    for (int l = 0; l < k; ++l) {
        acc += u_potential_step(f_, z, next) * scale;
        z = next;
        scale /= d;
        out.push_back(acc);
    }
    return out;
}

double green_functional_equation_residual(const GreenEvaluator& ge, const ProjPoint& p) {
    const double d = ge.map().degree();
    // n + 1 terms at p against n terms at f(p): the truncations telescope.
    const double g_p = ge.partial_sums(p, ge.n_iter() + 1).back();
    const double g_fp = ge(apply(ge.map(), p)).value;
    return std::abs(g_fp - d * (g_p - u_potential(ge.map(), p)));
}

double green_increment_bound(const GreenEvaluator& ge, int n) {
    return ge.u_bound() * std::pow(static_cast<double>(ge.map().degree()), -n);
}

}  // namespace projdyn
