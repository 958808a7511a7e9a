#include "projdyn/orbit.hpp"

#include <algorithm>

namespace projdyn {

std::vector<ProjPoint> forward_orbit(const HomogeneousEndomorphism& f, const ProjPoint& x, std::size_t n) {
    std::vector<ProjPoint> out;
    out.reserve(n + 1);
    out.push_back(x);
    for (std::size_t k = 0; k < n; ++k) out.push_back(apply(f, out.back()));
    return out;
}

namespace {

cplx pick(const std::vector<cplx>& roots, BranchRule rule, Rng& rng) {
    if (rule == BranchRule::MinModulus)
        return *std::min_element(roots.begin(), roots.end(), [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
    return roots[rng.index(roots.size())];
}

}  // namespace

ProjPoint backward_step(const HomogeneousEndomorphism& f, const ProjPoint& q, BranchRules rules, Rng& rng) {
    const ProductFactors* pf = f.product();
    if (!pf) fail(ErrorKind::Unsupported, "backward iteration needs a product map");
    const ChartCoords a = to_chart(q, kChartT);
    // Draw order is fixed (z then w) so that output depends only on the seed.
    const cplx z = pick(solve(pf->p, a[0]), rules.z, rng);
    const cplx w = pick(solve(pf->q, a[1]), rules.w, rng);
    return ProjPoint(z, w, 1.0);
}

std::vector<ProjPoint> orbit_ending_at(const HomogeneousEndomorphism& f, const ProjPoint& x, std::size_t n,
                                       BranchRules rules, Rng& rng) {
    std::vector<ProjPoint> out;
    out.reserve(n + 1);
    out.push_back(x);
    for (std::size_t k = 0; k < n; ++k) out.push_back(backward_step(f, out.back(), rules, rng));
    std::reverse(out.begin(), out.end());
    return out;
}

}  // namespace projdyn
