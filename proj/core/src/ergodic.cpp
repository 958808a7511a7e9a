#include "projdyn/ergodic.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "projdyn/parallel.hpp"
#include "projdyn/random.hpp"

namespace projdyn {

namespace {

constexpr std::size_t kBootstrapBlocks = 20;
constexpr int kBootstrapResamples = 200;
constexpr std::uint64_t kBootstrapSeed = 0x5eed;
constexpr std::size_t kCloudBlock = 4096;

AffineChart choose_chart(const ProjPoint& p, ChartPolicy policy) {
    switch (policy) {
        case ChartPolicy::Largest: return best_chart(p);
        case ChartPolicy::FirstAdmissible:
            for (int i = 0; i < 3; ++i)
                if (well_conditioned(p, AffineChart{i})) return AffineChart{i};
            break;
        case ChartPolicy::LastAdmissible:
            for (int i = 2; i >= 0; --i)
                if (well_conditioned(p, AffineChart{i})) return AffineChart{i};
            break;
    }
    // Unreachable for unit lifts: the largest coordinate is always admissible.
    fail(ErrorKind::ChartSingular, "no admissible chart at orbit point");
}

double mean(std::span<const double> v) {
    return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double stddev(std::span<const double> v) {
    if (v.size() < 2) return 0.0;
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace

Eigen::Matrix2cd OrbitCocycle::product() const {
    Eigen::Matrix2cd p = Eigen::Matrix2cd::Identity();
    for (const auto& a : steps) p = a * p;
    return p;
}

OrbitCocycle cocycle_along(const HomogeneousEndomorphism& f, std::vector<ProjPoint> orbit, ChartPolicy policy) {
    require(orbit.size() >= 2, "orbit needs at least two points");
    OrbitCocycle c;
    c.charts.reserve(orbit.size());
    for (const ProjPoint& p : orbit) c.charts.push_back(choose_chart(p, policy));
    c.steps.reserve(orbit.size() - 1);
    for (std::size_t k = 0; k + 1 < orbit.size(); ++k) {
        if (chordal_distance(apply(f, orbit[k]), orbit[k + 1]) > 1e-8)
            throw StepError(ErrorKind::InvalidArgument, k, "supplied points are not an orbit of f");
        c.steps.push_back(jacobian(f, orbit[k], c.charts[k], c.charts[k + 1]));
    }
    c.orbit = std::move(orbit);
    return c;
}

OrbitCocycle build_cocycle(const HomogeneousEndomorphism& f, const ProjPoint& x, std::size_t n, ChartPolicy policy) {
    require(n >= 1, "cocycle length must be at least 1");
    std::vector<ProjPoint> orbit;
    orbit.reserve(n + 1);
    orbit.push_back(x);
    for (std::size_t k = 0; k < n; ++k) orbit.push_back(apply(f, orbit.back()));
    OrbitCocycle c;
    for (const ProjPoint& p : orbit) c.charts.push_back(choose_chart(p, policy));
    for (std::size_t k = 0; k < n; ++k) c.steps.push_back(jacobian(f, orbit[k], c.charts[k], c.charts[k + 1]));
    c.orbit = std::move(orbit);
    return c;
}

namespace {

// Per-step log growth of the renormalized vector.
std::vector<double> growth_logs(std::span<const Eigen::Matrix2cd> steps) {
    std::vector<double> out;
    out.reserve(steps.size());
    Eigen::Vector2cd v(1.0, 1.0);
    v /= v.norm();
    for (const auto& a : steps) {
        v = a * v;
        const double nv = v.norm();
        if (nv == 0.0) {
            out.push_back(-std::numeric_limits<double>::infinity());
            v = Eigen::Vector2cd(1.0, 1.0) / std::sqrt(2.0);
            continue;
        }
        out.push_back(std::log(nv));
        v /= nv;
    }
    return out;
}

}  // namespace

double top_lyapunov(std::span<const Eigen::Matrix2cd> steps) {
    require(!steps.empty(), "empty cocycle");
    const auto logs = growth_logs(steps);
    return mean(logs);
}

double top_lyapunov(const OrbitCocycle& c) { return top_lyapunov(std::span<const Eigen::Matrix2cd>(c.steps)); }

LyapunovEstimate lyapunov_pair(std::span<const Eigen::Matrix2cd> steps) {
    require(!steps.empty(), "empty cocycle");
    const auto growth = growth_logs(steps);
    std::vector<double> dets;
    dets.reserve(steps.size());
    for (const auto& a : steps) dets.push_back(std::log(std::abs(a.determinant())));

    LyapunovEstimate est;
    est.n = steps.size();
    const double top = mean(growth);
    est.mean_log_det = mean(dets);
    est.chi2 = top;
    est.chi1 = est.mean_log_det - top;
    if (est.chi1 > est.chi2) std::swap(est.chi1, est.chi2);

    const std::size_t blocks = std::min(kBootstrapBlocks, steps.size());
    if (blocks >= 2) {
        std::vector<double> b_top(blocks), b_det(blocks);
        const std::size_t len = steps.size() / blocks;
        for (std::size_t b = 0; b < blocks; ++b) {
            const std::size_t lo = b * len, hi = (b + 1 == blocks) ? steps.size() : lo + len;
            b_top[b] = mean(std::span<const double>(growth).subspan(lo, hi - lo));
            b_det[b] = mean(std::span<const double>(dets).subspan(lo, hi - lo));
        }
        Rng rng(kBootstrapSeed);
        std::vector<double> r1, r2;
        for (int r = 0; r < kBootstrapResamples; ++r) {
            double s_top = 0.0, s_det = 0.0;
            for (std::size_t k = 0; k < blocks; ++k) {
                const std::size_t pick = rng.index(blocks);
                s_top += b_top[pick];
                s_det += b_det[pick];
            }
            const double t = s_top / static_cast<double>(blocks);
            const double c1 = s_det / static_cast<double>(blocks) - t;
            r1.push_back(std::min(c1, t));
            r2.push_back(std::max(c1, t));
        }
        est.stderr_chi1 = stddev(r1);
        est.stderr_chi2 = stddev(r2);
    }
    return est;
}

LyapunovEstimate lyapunov_pair(const OrbitCocycle& c) { return lyapunov_pair(std::span<const Eigen::Matrix2cd>(c.steps)); }

std::vector<Eigen::Matrix2cd> inverse_cocycle(std::span<const Eigen::Matrix2cd> steps) {
    std::vector<Eigen::Matrix2cd> out;
    out.reserve(steps.size());
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) out.push_back(it->inverse());
    return out;
}

namespace {

// The first k entries of a seeded permutation of [0, n).
std::vector<std::size_t> draw_without_replacement(std::size_t n, std::size_t k, std::uint64_t seed) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    Rng rng(seed);
    for (std::size_t i = 0; i < k; ++i) std::swap(idx[i], idx[i + rng.index(n - i)]);
    idx.resize(k);
    return idx;
}

}  // namespace

EnsembleLyapunov ensemble_lyapunov(const HomogeneousEndomorphism& f, const EmpiricalMeasure& cloud,
                                   const EnsembleOptions& options) {
    cloud.validate();
    require(options.n >= 1, "orbit length must be at least 1");
    require(options.n_orbits >= 1 && options.n_orbits <= cloud.size(), "n_orbits must be in [1, cloud size]");
    EnsembleLyapunov out;
    out.ends = draw_without_replacement(cloud.size(), options.n_orbits, options.seed);
    out.orbits.resize(options.n_orbits);
    for_each_block(options.n_orbits, options.threads, [&](std::size_t k) {
        Rng rng(mix_seed(options.seed, k));
        auto orbit = orbit_ending_at(f, cloud.points[out.ends[k]], options.n, options.rules, rng);
        out.orbits[k] = lyapunov_pair(cocycle_along(f, std::move(orbit), options.policy));
    });
    std::vector<double> c1, c2;
    for (const auto& e : out.orbits) {
        c1.push_back(e.chi1);
        c2.push_back(e.chi2);
    }
    const double root = std::sqrt(static_cast<double>(options.n_orbits));
    out.chi1 = mean(c1);
    out.chi2 = mean(c2);
    out.stderr_chi1 = stddev(c1) / root;
    out.stderr_chi2 = stddev(c2) / root;
    return out;
}

EntropyEstimate brin_katok_entropy(const HomogeneousEndomorphism& f, const EmpiricalMeasure& cloud, const EntropyOptions& options) {
    cloud.validate();
    require(options.n >= 1, "Bowen time must be at least 1");
    require(options.epsilon > 0.0, "epsilon must be positive");
    const std::size_t N = cloud.size();
    const std::size_t n_centers = std::min(options.n_centers, N);
    require(n_centers >= 1, "need at least one center");

    EntropyEstimate est;
    est.cap = std::log(static_cast<double>(N)) / static_cast<double>(options.n);

    est.centers = draw_without_replacement(N, n_centers, options.seed);

    const std::size_t n = options.n;
    std::vector<ProjPoint> center_orbits;
    center_orbits.reserve(n_centers * n);
    for (std::size_t c : est.centers) {
        ProjPoint x = cloud.points[c];
        for (std::size_t i = 0; i < n; ++i) {
            center_orbits.push_back(x);
            if (i + 1 < n) x = apply(f, x);
        }
    }

    const std::size_t blocks = block_count(N, kCloudBlock);
    std::vector<std::vector<double>> block_mass(blocks, std::vector<double>(n_centers, 0.0));
    std::vector<std::vector<std::size_t>> block_count_(blocks, std::vector<std::size_t>(n_centers, 0));
    for_each_block(blocks, options.threads, [&](std::size_t b) {
        std::vector<ProjPoint> orbit;
        orbit.reserve(n);
        const std::size_t end = std::min(N, (b + 1) * kCloudBlock);
        for (std::size_t j = b * kCloudBlock; j < end; ++j) {
            orbit.clear();
            ProjPoint y = cloud.points[j];
            for (std::size_t i = 0; i < n; ++i) {
                orbit.push_back(y);
                if (i + 1 < n) y = apply(f, y);
            }
            for (std::size_t c = 0; c < n_centers; ++c) {
                const ProjPoint* co = &center_orbits[c * n];
                bool inside = true;
                for (std::size_t i = 0; i < n && inside; ++i) inside = chordal_distance(co[i], orbit[i]) < options.epsilon;
                if (inside) {
                    block_mass[b][c] += cloud.weights[j];
                    ++block_count_[b][c];
                }
            }
        }
    });

    const double floor = 1.0 / static_cast<double>(N);
    double acc = 0.0;
    for (std::size_t c = 0; c < n_centers; ++c) {
        double mass = 0.0;
        std::size_t count = 0;
        for (std::size_t b = 0; b < blocks; ++b) {
            mass += block_mass[b][c];
            count += block_count_[b][c];
        }
        if (count <= 1) ++est.floor_hits;
        acc += -std::log(std::max(mass, floor)) / static_cast<double>(n);
    }
    est.entropy = acc / static_cast<double>(n_centers);
    est.floor_fraction = static_cast<double>(est.floor_hits) / static_cast<double>(n_centers);
    est.resolution_floor = est.floor_fraction > 0.2;
    return est;
}

RuelleCheck ruelle_check(double entropy, const LyapunovEstimate& est, double tol) {
    RuelleCheck r;
    r.margin = std::max(est.chi1, 0.0) + std::max(est.chi2, 0.0) + tol - entropy / 2.0;
    r.pass = r.margin >= 0.0;
    return r;
}

}  // namespace projdyn
