#pragma once

#include <optional>
#include <vector>

#include "projdyn/endomorphism.hpp"

namespace projdyn {

/// u(p) = (1/d) log |F(Z)| for the unit lift Z of p, so that
/// f^* omega / d = omega + dd^c u with omega the Fubini-Study form.
double u_potential(const HomogeneousEndomorphism& f, const ProjPoint& p);

/// Same quantity from an arbitrary unit lift; returns the normalized image
/// lift through `image` so that orbit walks never form huge lifts.
double u_potential_step(const HomogeneousEndomorphism& f, const Lift& unit_lift, Lift& image);

/// Sup of |u| over `samples` quasi-random unit lifts (Halton + Box-Muller).
double sampled_u_sup(const HomogeneousEndomorphism& f, int samples = 100000);

struct GreenValue {
    double value = 0.0;
    double error_bound = 0.0;
};

/// Truncated Green potential G_n = sum_{l<n} u(f^l p) / d^l of the current T.
/// The truncation error is at most u_bound d^-n / (1 - 1/d), where u_bound is
/// a sampled sup of |u| with 5% headroom unless supplied.
class GreenEvaluator {
public:
    GreenEvaluator(HomogeneousEndomorphism f, int n_iter, std::optional<double> u_bound = std::nullopt);

    const HomogeneousEndomorphism& map() const noexcept { return f_; }
    int n_iter() const noexcept { return n_iter_; }
    double u_bound() const noexcept { return u_bound_; }
    double error_bound() const noexcept { return error_bound_; }

    GreenValue operator()(const ProjPoint& p) const;

    /// G_1(p), ..., G_k(p): all partial sums up to k terms.
    std::vector<double> partial_sums(const ProjPoint& p, int k) const;

    /// Homogeneous escape rate G_F(W) = log|W| + G([W]) of an arbitrary nonzero lift.
    double homogeneous(const Lift& w) const;

    /// Same, with log|W| supplied separately (for lifts kept renormalized).
    double homogeneous(const Lift& unit_lift, double log_norm) const;

private:
    HomogeneousEndomorphism f_;
    int n_iter_;
    double u_bound_;
    double error_bound_;
};

/// |G(f p) - d (G(p) - u(p))| with n_iter terms at f(p) and n_iter + 1 at p,
/// so only the separate renormalized orbit walks contribute; at most 3 d error_bound.
double green_functional_equation_residual(const GreenEvaluator& ge, const ProjPoint& p);

/// u_bound / d^n as used by the decay-rate diagnostics.
double green_increment_bound(const GreenEvaluator& ge, int n);

}  // namespace projdyn
