#pragma once

#include <vector>

#include "projdyn/endomorphism.hpp"
#include "projdyn/random.hpp"

namespace projdyn {

/// x, f(x), ..., f^n(x) (n + 1 points).
std::vector<ProjPoint> forward_orbit(const HomogeneousEndomorphism& f, const ProjPoint& x, std::size_t n);

/// How backward iteration picks among the d roots of one coordinate.
enum class BranchRule {
    Random,      ///< uniform over the d roots counted with multiplicity
    MinModulus,  ///< the root closest to 0 (follows a Siegel disk around 0)
};

struct BranchRules {
    BranchRule z = BranchRule::Random;
    BranchRule w = BranchRule::Random;
};

/// One backward step for a product map: a preimage of q chosen per the rules.
ProjPoint backward_step(const HomogeneousEndomorphism& f, const ProjPoint& q, BranchRules rules, Rng& rng);

/// Backward orbit y_0 = x, f(y_{k+1}) = y_k, returned reversed so that the
/// result is a forward orbit ending at x:
///   out[0] = y_n, out[1] = f(out[0]), ..., out[n] = x.
/// Inverse branches contract near repellers, so this is the numerically
/// stable way to produce long orbits on a Julia set.
std::vector<ProjPoint> orbit_ending_at(const HomogeneousEndomorphism& f, const ProjPoint& x, std::size_t n,
                                       BranchRules rules, Rng& rng);

}  // namespace projdyn
