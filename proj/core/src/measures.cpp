#include "projdyn/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "projdyn/orbit.hpp"
#include "projdyn/parallel.hpp"
#include "projdyn/random.hpp"

namespace projdyn {

namespace {

constexpr std::size_t kSampleBlock = 1024;

}  // namespace

std::string_view to_string(Provenance p) noexcept {
    switch (p) {
        case Provenance::Mu: return "mu";
        case Provenance::Nu: return "nu";
        case Provenance::Alpha: return "alpha";
        case Provenance::Custom: return "custom";
    }
    return "custom";
}

Provenance provenance_from_string(std::string_view s) {
    if (s == "mu") return Provenance::Mu;
    if (s == "nu") return Provenance::Nu;
    if (s == "alpha") return Provenance::Alpha;
    if (s == "custom") return Provenance::Custom;
    fail(ErrorKind::ParseError, "unknown provenance tag '" + std::string(s) + "'");
}

EmpiricalMeasure EmpiricalMeasure::uniform(std::vector<ProjPoint> points, std::uint64_t seed, Provenance provenance) {
    EmpiricalMeasure m;
    const double w = points.empty() ? 0.0 : 1.0 / static_cast<double>(points.size());
    m.weights.assign(points.size(), w);
    m.points = std::move(points);
    m.seed = seed;
    m.provenance = provenance;
    return m;
}

void EmpiricalMeasure::validate() const {
    if (points.size() != weights.size()) fail(ErrorKind::InvalidArgument, "points and weights differ in length");
    if (points.empty()) fail(ErrorKind::InvalidArgument, "empty measure");
    // Neumaier summation: naive accumulation of 1/N drifts by O(N eps).
    double s = 0.0, c = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) fail(ErrorKind::InvalidArgument, "negative or NaN weight");
        const double t = s + w;
        c += std::abs(s) >= w ? (s - t) + w : (w - t) + s;
        s = t;
    }
    if (std::abs(s + c - 1.0) > 1e-12) fail(ErrorKind::InvalidArgument, "weights do not sum to 1");
}

EmpiricalMeasure merge(const EmpiricalMeasure& a, const EmpiricalMeasure& b) {
    const double total = a.mass + b.mass;
    require(total > 0.0, "merging measures of zero total mass");
    EmpiricalMeasure out;
    out.points = a.points;
    out.points.insert(out.points.end(), b.points.begin(), b.points.end());
    out.weights.reserve(out.points.size());
    for (double w : a.weights) out.weights.push_back(w * a.mass / total);
    for (double w : b.weights) out.weights.push_back(w * b.mass / total);
    out.seed = a.seed;
    out.provenance = a.provenance == b.provenance ? a.provenance : Provenance::Custom;
    out.mass = total;
    return out;
}

EmpiricalMeasure sample_mu(const HomogeneousEndomorphism& f, const MuSamplerOptions& options) {
    if (!f.product()) fail(ErrorKind::Unsupported, "mu sampling needs a product map");
    if (options.n_backward < 10) fail(ErrorKind::InvalidArgument, "n_backward must be at least 10");
    require(options.n_points > 0, "n_points must be positive");

    std::vector<ProjPoint> points(options.n_points, ProjPoint(0.0, 0.0, 1.0));
    const std::size_t blocks = block_count(options.n_points, kSampleBlock);
    for_each_block(blocks, options.threads, [&](std::size_t b) {
        Rng rng(mix_seed(options.seed, b));
        const std::size_t end = std::min(options.n_points, (b + 1) * kSampleBlock);
        for (std::size_t i = b * kSampleBlock; i < end; ++i) {
            ProjPoint x(0.5 * rng.unit_disc(), 0.5 * rng.unit_disc(), 1.0);
            for (std::size_t k = 0; k < options.n_backward; ++k) x = backward_step(f, x, {}, rng);
            points[i] = x;
        }
    });
    return EmpiricalMeasure::uniform(std::move(points), options.seed, Provenance::Mu);
}

double CurveFamily::normalization() const noexcept {
    double s = 0.0;
    for (const FamilyCurve& c : curves) s += c.weight * std::pow(static_cast<double>(degree), c.iterate);
    return s;
}

namespace {

// Normal vector l with l . Z = 0 on the line.
Lift line_normal(const ProjectiveLine& line) {
    const Lift& a = line.base;
    const Lift& b = line.direction;
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

}  // namespace

CurveFamily build_S_m(const HomogeneousEndomorphism& f, const ProjectiveLine& line, int m) {
    require(m >= 1, "m must be at least 1");
    CurveFamily family;
    family.m = m;
    family.degree = f.degree();

    // Coordinate line {Z_k = a t} of a product map, if that is what we have.
    int axis = -1;
    cplx a{};
    if (f.product()) {
        const Lift l = line_normal(line);
        const double scale = lift_norm(l);
        for (int k = 0; k < 2 && scale > 0.0; ++k) {
            const auto other = static_cast<std::size_t>(1 - k);
            const auto kk = static_cast<std::size_t>(k);
            if (std::abs(l[other]) <= 1e-14 * scale && std::abs(l[kk]) > 1e-14 * scale) {
                axis = k;
                a = -l[2] / l[kk];
            }
        }
    }

    double dpow = 1.0;
    cplx c = a;
    for (int i = 0; i < m; ++i) {
        FamilyCurve fc;
        fc.iterate = i;
        fc.weight = 1.0 / (static_cast<double>(m) * dpow);
        if (axis >= 0) {
            const ProductFactors* pf = f.product();
            if (i > 0) c = axis == 0 ? pf->p(c) : pf->q(c);
            Lift base{}, dir{};
            base[static_cast<std::size_t>(axis)] = c;
            base[2] = 1.0;
            dir[static_cast<std::size_t>(1 - axis)] = 1.0;
            fc.curve = Curve{ProjectiveLine{base, dir}, 0};
            fc.multiplicity = static_cast<long>(std::llround(dpow));
        } else {
            fc.curve = Curve{line, i};
            fc.multiplicity = 1;
        }
        family.curves.push_back(fc);
        dpow *= f.degree();
    }
    return family;
}

NuSample sample_nu(const GreenEvaluator& ge, const CurveFamily& family, const NuSamplerOptions& options) {
    require(!family.curves.empty(), "empty curve family");
    require(options.n_points > 0, "n_points must be positive");
    const auto& f = ge.map();

    std::vector<SliceDensity> slices;
    slices.reserve(family.curves.size());
    for (const FamilyCurve& fc : family.curves) slices.push_back(line_slice_density(ge, fc.curve, options.grid_size, options.slice));

    NuSample out;
    const std::size_t cells = static_cast<std::size_t>(options.grid_size) * static_cast<std::size_t>(options.grid_size);
    // Cumulative mass over (curve, chart, cell).
    std::vector<double> cumulative;
    cumulative.reserve(slices.size() * 2 * cells);
    double acc = 0.0;
    for (std::size_t c = 0; c < slices.size(); ++c) {
        const FamilyCurve& fc = family.curves[c];
        const double scale = fc.weight * static_cast<double>(fc.multiplicity);
        out.curve_mass.push_back(scale * slices[c].total_mass);
        out.clipped_fraction.push_back(slices[c].clipped_fraction);
        for (SliceChart chart : {SliceChart::Inner, SliceChart::Outer})
            for (double w : slices[c].weights(chart)) cumulative.push_back(acc += scale * w);
    }
    const double total = acc;
    for (double& m : out.curve_mass) m /= total;

    std::vector<ProjPoint> points(options.n_points, ProjPoint(0.0, 0.0, 1.0));
    const std::size_t blocks = block_count(options.n_points, kSampleBlock);
    const double h = slices.front().cell_size();
    for_each_block(blocks, options.slice.threads, [&](std::size_t b) {
        Rng rng(mix_seed(options.seed, b));
        const std::size_t end = std::min(options.n_points, (b + 1) * kSampleBlock);
        for (std::size_t i = b * kSampleBlock; i < end; ++i) {
            const double target = rng.uniform() * total;
            auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
            if (it == cumulative.end()) --it;
            const auto flat = static_cast<std::size_t>(it - cumulative.begin());
            const std::size_t curve = flat / (2 * cells);
            const std::size_t rem = flat % (2 * cells);
            const SliceChart chart = rem < cells ? SliceChart::Inner : SliceChart::Outer;
            const std::size_t cell = rem % cells;
            const int ix = static_cast<int>(cell % static_cast<std::size_t>(options.grid_size));
            const int iy = static_cast<int>(cell / static_cast<std::size_t>(options.grid_size));
            const cplx jitter{rng.uniform(-0.5, 0.5) * h, rng.uniform(-0.5, 0.5) * h};
            const cplx coord = slices[curve].cell_center(ix, iy) + jitter;
            points[i] = curve_point(f, family.curves[curve].curve, chart, coord);
        }
    });
    out.measure = EmpiricalMeasure::uniform(std::move(points), options.seed, Provenance::Nu);
    return out;
}

}  // namespace projdyn
